use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use ucf_cli::commands::{self, CliError, CmdOutput, ConstructKind};
use ucf_cli::exit_codes;
use ucf_cli::report::Format;
use ucf_core::search::SearchMode;
use ucf_core::witness::WitnessMethod;

/// Exact density and abundance analysis for union-closed set families.
#[derive(Parser)]
#[command(name = "ucf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Naive,
    Pruned,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Naive => SearchMode::NaiveExhaustive,
            ModeArg::Pruned => SearchMode::PrunedBranchAndBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Direct,
    Constructive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Wojcik,
    Chain,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a family file and run the full battery of certified checks.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Parse a family file and emit its union closure.
    Closure {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a named family construction in the file format.
    Construct {
        #[arg(value_enum)]
        kind: KindArg,
        n: usize,
        /// Subset-cube size for the wojcik construction; defaults to
        /// ceil(log2 n).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find a duplicate-abundance pair (two elements in exactly the same
    /// members).
    Witness {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Constructive)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Compute the exact minimum density s_n and all minimizers.
    Search {
        n: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
        /// Restrict to families with at most this many members (the result is
        /// then the minimum over that restricted class).
        #[arg(long = "max-m")]
        max_m: Option<usize>,
        /// Fan the search out over deterministic subtree partitions.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Print the bound table for one n or an inclusive range like 4..64.
    Bounds {
        range: String,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Run the checker battery on deterministically sampled random closures.
    Sample {
        n: usize,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        bias: f64,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Batch of search and bounds rows for every n in a range.
    Table {
        range: String,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_output(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Check { file, format } => {
            let out = commands::cmd_check(&read_input(&file)?, format)?;
            print!("{}", out.stdout);
            Ok(out.exit_code)
        }
        Command::Closure { file, out } => {
            let result = commands::cmd_closure(&read_input(&file)?)?;
            write_output(out.as_ref(), &result.stdout)?;
            Ok(result.exit_code)
        }
        Command::Construct { kind, n, k, out } => {
            let kind = match kind {
                KindArg::Wojcik => ConstructKind::Wojcik,
                KindArg::Chain => ConstructKind::Chain,
            };
            let result = commands::cmd_construct(kind, n, k)?;
            write_output(out.as_ref(), &result.stdout)?;
            Ok(result.exit_code)
        }
        Command::Witness { file, method, format } => {
            let method = match method {
                MethodArg::Direct => WitnessMethod::Direct,
                MethodArg::Constructive => WitnessMethod::Constructive,
            };
            let out = commands::cmd_witness(&read_input(&file)?, method, format)?;
            print!("{}", out.stdout);
            Ok(out.exit_code)
        }
        Command::Search {
            n,
            mode,
            max_m,
            jobs,
            format,
        } => {
            let started = Instant::now();
            let out: CmdOutput = commands::cmd_search(n, mode.into(), max_m, jobs, format)?;
            print!("{}", out.stdout);
            eprintln!("search wall time: {:?}", started.elapsed());
            Ok(out.exit_code)
        }
        Command::Bounds { range, format } => {
            let out = commands::cmd_bounds(&range, format)?;
            print!("{}", out.stdout);
            Ok(out.exit_code)
        }
        Command::Sample {
            n,
            count,
            seed,
            bias,
            format,
        } => {
            let out = commands::cmd_sample(n, count, seed, bias, format)?;
            print!("{}", out.stdout);
            Ok(out.exit_code)
        }
        Command::Table { range, jobs, format } => {
            let started = Instant::now();
            let out = commands::cmd_table(&range, jobs, format)?;
            print!("{}", out.stdout);
            eprintln!("table wall time: {:?}", started.elapsed());
            Ok(out.exit_code)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => {
            let _ = std::io::stdout().flush();
            ExitCode::from(code as u8)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_codes::USAGE as u8)
        }
    }
}
