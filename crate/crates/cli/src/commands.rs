//! Command implementations. Each returns the report text for stdout plus the
//! process exit code; anything that prevents a report (parse errors, bad
//! parameters, violated preconditions) surfaces as [`CliError`] and exits 2.

use serde::Serialize;
use thiserror::Error;
use ucf_core::bounds::{
    check_corollary2, check_density_lower, check_reimer, check_theorem1, BoundTable, BoundsError,
    SkTable, Verdict,
};
use ucf_core::family::{
    chain_family, union_closure, FamilyError, Normalized, SetFamily, UnionClosedFamily,
    wojcik_family,
};
use ucf_core::search::{
    compute_sn_restricted, conjecture2_for, sample_random_ucf, SearchError, SearchMode,
};
use ucf_core::witness::{
    check_frankl, equal_pair_direct, lemma2_witness, Witness, WitnessError, WitnessMethod,
};

use crate::exit_codes;
use crate::familyfile::{self, ParseError};
use crate::report::{key_values, opt_f64, to_json_string, Format, OutcomeField, RationalField, Table};

/// The ground-set size up to which a failed majority-element check is treated
/// as an implementation bug rather than a reportable discovery (the
/// conjecture is known to hold for all families with at most this many
/// ground elements).
pub const FRANKL_VERIFIED_N: usize = 11;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Family(#[from] FamilyError),
    #[error("{0}")]
    Search(#[from] SearchError),
    #[error("{0}")]
    Bounds(#[from] BoundsError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error("{0}")]
    Usage(String),
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::PreconditionViolated(msg) => CliError::Precondition(msg),
            other => CliError::Internal(other.to_string()),
        }
    }
}

pub struct CmdOutput {
    pub stdout: String,
    pub exit_code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            exit_code: exit_codes::OK,
        }
    }
}

fn labels_line(mask: u64, labels: &[u64]) -> String {
    if mask == 0 {
        return "-".to_string();
    }
    let mut parts = Vec::new();
    let mut bits = mask;
    while bits != 0 {
        parts.push(labels[bits.trailing_zeros() as usize].to_string());
        bits &= bits - 1;
    }
    parts.join(" ")
}

// ---------------------------------------------------------------- check ----

#[derive(Serialize)]
struct Theorem1Row {
    member: String,
    k: usize,
    verdict: String,
    equality: bool,
    certificate: String,
}

#[derive(Serialize)]
struct FranklField {
    holds: bool,
    element: u64,
    note: Option<String>,
}

#[derive(Serialize)]
struct CheckReport {
    n: usize,
    members: usize,
    labels: Vec<u64>,
    union_closed: bool,
    density: RationalField,
    abundance: Vec<u64>,
    argmax_label: u64,
    frankl: Option<FranklField>,
    density_lower: Option<OutcomeField>,
    reimer: Option<OutcomeField>,
    corollary2: Option<OutcomeField>,
    theorem1: Vec<Theorem1Row>,
}

pub fn cmd_check(text: &str, format: Format) -> Result<CmdOutput, CliError> {
    let Normalized { family, labels } = familyfile::parse(text)?;
    let profile = family.abundance_profile();
    let density = RationalField::new(&family.density());
    let union_closed = family.is_union_closed();

    let mut report = CheckReport {
        n: family.n(),
        members: family.len(),
        labels: labels.clone(),
        union_closed,
        density,
        abundance: profile.counts.clone(),
        argmax_label: labels[profile.argmax],
        frankl: None,
        density_lower: None,
        reimer: None,
        corollary2: None,
        theorem1: Vec::new(),
    };

    let mut exit_code = exit_codes::OK;
    if union_closed {
        let ucf = UnionClosedFamily::new(family.clone()).expect("just checked");
        let (frankl_holds, element) = check_frankl(&ucf);
        let note = if !frankl_holds {
            Some(if ucf.n() <= FRANKL_VERIFIED_N {
                exit_code = exit_codes::VIOLATION;
                "violation at a size where the conjecture is settled; this indicates a bug".into()
            } else {
                "unexpected discovery: emit and preserve this family".to_string()
            })
        } else {
            None
        };
        report.frankl = Some(FranklField {
            holds: frankl_holds,
            element: labels[element],
            note,
        });

        let lower = check_density_lower(&ucf);
        let reimer = check_reimer(&ucf);
        for out in [&lower, &reimer] {
            if out.verdict == Verdict::Refuted {
                exit_code = exit_codes::VIOLATION;
            }
        }
        report.density_lower = Some(OutcomeField::new(&lower));
        report.reimer = Some(OutcomeField::new(&reimer));
        if ucf.n() >= 16 {
            let c2 = check_corollary2(&ucf)?;
            if c2.verdict == Verdict::Refuted {
                exit_code = exit_codes::VIOLATION;
            }
            report.corollary2 = Some(OutcomeField::new(&c2));
        }

        let table = SkTable::builtin();
        for &member in ucf.members() {
            let k = member.count_ones() as usize;
            if k == 0 || table.get(k).is_none() {
                continue;
            }
            let out = check_theorem1(&ucf, member, &table)?;
            if out.verdict == Verdict::Refuted {
                exit_code = exit_codes::VIOLATION;
            }
            report.theorem1.push(Theorem1Row {
                member: labels_line(member, &labels),
                k,
                verdict: out.verdict.to_string(),
                equality: out.equality,
                certificate: out.certificate,
            });
        }
    }

    let stdout = match format {
        Format::Json => to_json_string(&report),
        _ => render_check(&report, format),
    };
    Ok(CmdOutput { stdout, exit_code })
}

fn render_check(r: &CheckReport, format: Format) -> String {
    let mut pairs: Vec<(&str, String)> = vec![
        ("n", r.n.to_string()),
        ("members", r.members.to_string()),
        (
            "labels",
            r.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" "),
        ),
        ("union_closed", r.union_closed.to_string()),
        ("density", r.density.display()),
        (
            "abundance",
            r.abundance.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
        ),
        ("argmax_label", r.argmax_label.to_string()),
    ];
    match &r.frankl {
        Some(f) => {
            pairs.push(("frankl", format!("{} (element {})", f.holds, f.element)));
            if let Some(note) = &f.note {
                pairs.push(("frankl_note", note.clone()));
            }
        }
        None => pairs.push(("frankl", "skipped (not union-closed)".into())),
    }
    for (name, field) in [
        ("density_lower", &r.density_lower),
        ("reimer", &r.reimer),
        ("corollary2", &r.corollary2),
    ] {
        match field {
            Some(o) => {
                let eq = if o.equality { " (equality)" } else { "" };
                pairs.push((name, format!("{}{} — {}", o.verdict, eq, o.certificate)));
            }
            None if name == "corollary2" && r.union_closed && r.n < 16 => {
                pairs.push((name, "skipped (needs n >= 16)".into()));
            }
            None if !r.union_closed => pairs.push((name, "skipped (not union-closed)".into())),
            None => {}
        }
    }
    let mut out = key_values(format, &pairs);
    if !r.theorem1.is_empty() {
        let mut t = Table::new(&["member", "k", "verdict", "equality", "certificate"]);
        for row in &r.theorem1 {
            t.push(vec![
                row.member.clone(),
                row.k.to_string(),
                row.verdict.clone(),
                row.equality.to_string(),
                row.certificate.clone(),
            ]);
        }
        out.push('\n');
        out.push_str(&t.render(format));
    }
    out
}

// -------------------------------------------------------------- closure ----

pub fn cmd_closure(text: &str) -> Result<CmdOutput, CliError> {
    let Normalized { family, .. } = familyfile::parse(text)?;
    let closed = union_closure(&family);
    Ok(CmdOutput::ok(familyfile::emit(closed.as_set_family())))
}

// ------------------------------------------------------------ construct ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructKind {
    Wojcik,
    Chain,
}

pub fn cmd_construct(
    kind: ConstructKind,
    n: usize,
    k: Option<usize>,
) -> Result<CmdOutput, CliError> {
    let family = match kind {
        ConstructKind::Wojcik => {
            let k = match k {
                Some(k) => k,
                None => {
                    if n == 0 {
                        return Err(FamilyError::BadParameters("n must be >= 1".into()).into());
                    }
                    ucf_core::bounds::ceil_log2(n as u64) as usize
                }
            };
            wojcik_family(n, k)?
        }
        ConstructKind::Chain => {
            if k.is_some() {
                return Err(CliError::Usage(
                    "--k applies only to the wojcik construction".into(),
                ));
            }
            chain_family(n)?
        }
    };
    Ok(CmdOutput::ok(familyfile::emit(family.as_set_family())))
}

// -------------------------------------------------------------- witness ----

#[derive(Serialize)]
struct WitnessReport {
    method: String,
    a: u64,
    b: u64,
    trace: Vec<String>,
    verified: bool,
}

pub fn cmd_witness(text: &str, method: WitnessMethod, format: Format) -> Result<CmdOutput, CliError> {
    let Normalized { family, labels } = familyfile::parse(text)?;
    let witness: Option<Witness> = match method {
        WitnessMethod::Direct => equal_pair_direct(&family),
        WitnessMethod::Constructive => {
            let ucf = UnionClosedFamily::new(family.clone()).map_err(|_| {
                CliError::Precondition(
                    "the constructive method needs a union-closed family".into(),
                )
            })?;
            Some(lemma2_witness(&ucf)?)
        }
    };
    let Some(w) = witness else {
        return Ok(CmdOutput {
            stdout: "no pair found: all element columns are pairwise distinct\n".into(),
            exit_code: exit_codes::VIOLATION,
        });
    };
    if !family.columns_equal(w.a, w.b) {
        return Err(CliError::Internal(format!(
            "witness pair ({}, {}) fails re-verification",
            w.a, w.b
        )));
    }
    let report = WitnessReport {
        method: match w.method {
            WitnessMethod::Direct => "direct".into(),
            WitnessMethod::Constructive => "constructive".into(),
        },
        a: labels[w.a],
        b: labels[w.b],
        trace: w.trace.iter().map(|b| b.to_string()).collect(),
        verified: true,
    };
    let stdout = match format {
        Format::Json => to_json_string(&report),
        _ => key_values(
            format,
            &[
                ("method", report.method.clone()),
                ("pair", format!("{} {}", report.a, report.b)),
                ("trace", report.trace.join(" -> ")),
                ("verified", "true".into()),
            ],
        ),
    };
    Ok(CmdOutput::ok(stdout))
}

// --------------------------------------------------------------- search ----

#[derive(Serialize)]
struct MinimizerEntry {
    masks: Vec<u64>,
    family: String,
}

#[derive(Serialize)]
struct Conjecture2Field {
    exists_reading: bool,
    forall_reading: bool,
    counterexamples: Vec<MinimizerEntry>,
}

#[derive(Serialize)]
struct SearchReport {
    n: usize,
    mode: String,
    max_m: Option<usize>,
    sn: RationalField,
    families_explored: u64,
    minimizers: Vec<MinimizerEntry>,
    conjecture2: Option<Conjecture2Field>,
}

fn minimizer_entry(n: usize, masks: &[u64]) -> MinimizerEntry {
    let family = SetFamily::from_masks(n, masks.iter().copied())
        .expect("canonical minimizers are valid families");
    MinimizerEntry {
        masks: masks.to_vec(),
        family: familyfile::emit(&family),
    }
}

pub fn cmd_search(
    n: usize,
    mode: SearchMode,
    max_m: Option<usize>,
    jobs: usize,
    format: Format,
) -> Result<CmdOutput, CliError> {
    let record = compute_sn_restricted(n, mode, jobs, max_m)?;
    // Conjecture readings only make sense against the true, unrestricted s_n.
    let conjecture = if max_m.is_none() {
        let c = conjecture2_for(record.clone())?;
        Some(Conjecture2Field {
            exists_reading: c.exists_reading,
            forall_reading: c.forall_reading,
            counterexamples: c
                .counterexamples
                .iter()
                .map(|m| minimizer_entry(n, &m.masks))
                .collect(),
        })
    } else {
        None
    };
    let report = SearchReport {
        n,
        mode: record.method.to_string(),
        max_m,
        sn: RationalField::new(&record.sn),
        families_explored: record.families_explored,
        minimizers: record
            .minimizers
            .iter()
            .map(|m| minimizer_entry(n, &m.masks))
            .collect(),
        conjecture2: conjecture,
    };
    let stdout = match format {
        Format::Json => to_json_string(&report),
        _ => render_search(&report, format),
    };
    Ok(CmdOutput::ok(stdout))
}

fn render_search(r: &SearchReport, format: Format) -> String {
    let mut pairs: Vec<(&str, String)> = vec![
        ("n", r.n.to_string()),
        ("mode", r.mode.clone()),
        (
            "s_n",
            format!("s_{} = {}", r.n, RationalField::display(&r.sn)),
        ),
        ("families_explored", r.families_explored.to_string()),
        ("minimizers", r.minimizers.len().to_string()),
    ];
    if let Some(m) = r.max_m {
        pairs.insert(2, ("max_m", m.to_string()));
    }
    if let Some(c) = &r.conjecture2 {
        pairs.push(("exists_reading", c.exists_reading.to_string()));
        pairs.push(("forall_reading", c.forall_reading.to_string()));
    }
    let mut out = key_values(format, &pairs);
    for (i, m) in r.minimizers.iter().enumerate() {
        out.push_str(&format!("\nminimizer {}:\n", i + 1));
        out.push_str(&indent(&m.family));
    }
    if let Some(c) = &r.conjecture2 {
        for (i, m) in c.counterexamples.iter().enumerate() {
            out.push_str(&format!("\nforall-reading counterexample {}:\n", i + 1));
            out.push_str(&indent(&m.family));
        }
    }
    out
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}

// --------------------------------------------------------------- bounds ----

#[derive(Serialize)]
struct BoundsRow {
    n: u64,
    theorem3_lower: f64,
    conjectured_sn: RationalField,
    corollary1_upper: RationalField,
    corollary2_threshold: Option<f64>,
    g: Option<f64>,
    consistency: String,
}

#[derive(Serialize)]
struct BoundsReport {
    rows: Vec<BoundsRow>,
}

/// Parse `"16"` or an inclusive range `"4..64"`.
pub fn parse_range(spec: &str) -> Result<(u64, u64), CliError> {
    let parse_one = |s: &str| -> Result<u64, CliError> {
        s.trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("expected a positive integer, got {s:?}")))
    };
    if let Some((lo, hi)) = spec.split_once("..") {
        let (lo, hi) = (parse_one(lo)?, parse_one(hi)?);
        if lo > hi {
            return Err(CliError::Usage(format!("empty range {spec:?}")));
        }
        Ok((lo, hi))
    } else {
        let n = parse_one(spec)?;
        Ok((n, n))
    }
}

pub fn cmd_bounds(range: &str, format: Format) -> Result<CmdOutput, CliError> {
    let (lo, hi) = parse_range(range)?;
    if lo == 0 {
        return Err(CliError::Usage("n must be >= 1".into()));
    }
    if hi - lo >= 100_000 {
        return Err(CliError::Usage("range too large (at most 100000 rows)".into()));
    }
    let mut rows = Vec::new();
    let mut exit_code = exit_codes::OK;
    for n in lo..=hi {
        let row = BoundTable::new(n)?;
        let consistency = row.certify_consistency();
        if consistency.verdict != Verdict::Proven {
            exit_code = exit_codes::VIOLATION;
        }
        rows.push(BoundsRow {
            n,
            theorem3_lower: row.theorem3_lower,
            conjectured_sn: RationalField::new(&row.conjectured_sn),
            corollary1_upper: RationalField::new(&row.corollary1_upper_ceil),
            corollary2_threshold: row.corollary2_threshold,
            g: row.g_of_n,
            consistency: consistency.verdict.to_string(),
        });
    }
    let report = BoundsReport { rows };
    let stdout = match format {
        Format::Json => to_json_string(&report),
        _ => {
            let mut t = Table::new(&[
                "n",
                "theorem3_lower",
                "conjectured_sn",
                "conjectured_sn_decimal",
                "corollary1_upper",
                "corollary2_threshold",
                "g",
                "consistency",
            ]);
            for r in &report.rows {
                t.push(vec![
                    r.n.to_string(),
                    r.theorem3_lower.to_string(),
                    r.conjectured_sn.exact.clone(),
                    r.conjectured_sn.decimal.clone(),
                    r.corollary1_upper.exact.clone(),
                    opt_f64(r.corollary2_threshold),
                    opt_f64(r.g),
                    r.consistency.clone(),
                ]);
            }
            t.render(format)
        }
    };
    Ok(CmdOutput { stdout, exit_code })
}

// --------------------------------------------------------------- sample ----

#[derive(Serialize)]
struct SampleViolation {
    index: usize,
    kind: String,
    detail: String,
    family: String,
}

#[derive(Serialize)]
struct SampleReport {
    n: usize,
    count: usize,
    seed: u64,
    bias: f64,
    passes: usize,
    lemma2_applicable: usize,
    hard_violations: Vec<SampleViolation>,
    discoveries: Vec<SampleViolation>,
}

pub fn cmd_sample(
    n: usize,
    count: usize,
    seed: u64,
    bias: f64,
    format: Format,
) -> Result<CmdOutput, CliError> {
    let families = sample_random_ucf(n, count, seed, bias)?;
    let mut hard_violations = Vec::new();
    let mut discoveries = Vec::new();
    let mut lemma2_applicable = 0usize;

    for (index, f) in families.iter().enumerate() {
        let violate = |kind: &str, detail: String, sink: &mut Vec<SampleViolation>| {
            sink.push(SampleViolation {
                index,
                kind: kind.to_string(),
                detail,
                family: familyfile::emit(f.as_set_family()),
            });
        };
        let lower = check_density_lower(f);
        if lower.verdict != Verdict::Proven {
            violate("density_lower", lower.certificate, &mut hard_violations);
        }
        let reimer = check_reimer(f);
        if reimer.verdict != Verdict::Proven {
            violate("reimer", reimer.certificate, &mut hard_violations);
        }
        if f.n() >= 16 {
            let c2 = check_corollary2(f)?;
            if c2.verdict != Verdict::Proven {
                violate("corollary2", c2.certificate, &mut hard_violations);
            }
        }
        let (frankl_holds, element) = check_frankl(f);
        if !frankl_holds {
            if f.n() <= FRANKL_VERIFIED_N {
                violate(
                    "frankl",
                    format!("max abundance at element {element} is below |F|/2"),
                    &mut hard_violations,
                );
            } else {
                violate(
                    "frankl_discovery",
                    format!("max abundance at element {element} is below |F|/2"),
                    &mut discoveries,
                );
            }
        }
        if f.n() >= 2 && f.len() < f.n() {
            lemma2_applicable += 1;
            match (equal_pair_direct(f.as_set_family()), lemma2_witness(f)) {
                (Some(direct), Ok(constructive)) => {
                    for w in [&direct, &constructive] {
                        if w.a == w.b || !f.columns_equal(w.a, w.b) {
                            violate(
                                "lemma2_soundness",
                                format!("pair ({}, {}) fails column equality", w.a, w.b),
                                &mut hard_violations,
                            );
                        }
                    }
                }
                (None, _) => violate(
                    "lemma2_completeness",
                    "no duplicate columns found although |F| < n".into(),
                    &mut hard_violations,
                ),
                (_, Err(e)) => violate("lemma2_constructive", e.to_string(), &mut hard_violations),
            }
        }
    }

    let report = SampleReport {
        n,
        count,
        seed,
        bias,
        passes: count - hard_violations.len().min(count),
        lemma2_applicable,
        hard_violations,
        discoveries,
    };
    let exit_code = if report.hard_violations.is_empty() {
        exit_codes::OK
    } else {
        exit_codes::VIOLATION
    };
    let stdout = match format {
        Format::Json => to_json_string(&report),
        _ => {
            let mut pairs: Vec<(&str, String)> = vec![
                ("n", report.n.to_string()),
                ("count", report.count.to_string()),
                ("seed", report.seed.to_string()),
                ("bias", report.bias.to_string()),
                (
                    "result",
                    format!("{}/{} pass", report.passes, report.count),
                ),
                ("lemma2_applicable", report.lemma2_applicable.to_string()),
                ("hard_violations", report.hard_violations.len().to_string()),
                ("discoveries", report.discoveries.len().to_string()),
            ];
            if !report.discoveries.is_empty() {
                pairs.push((
                    "note",
                    "discoveries are reported, not asserted; preserve the emitted families".into(),
                ));
            }
            let mut out = key_values(format, &pairs);
            for v in report.hard_violations.iter().chain(&report.discoveries) {
                out.push_str(&format!("\n{} at family {}: {}\n", v.kind, v.index, v.detail));
                out.push_str(&indent(&v.family));
            }
            out
        }
    };
    Ok(CmdOutput { stdout, exit_code })
}

// ---------------------------------------------------------------- table ----

#[derive(Serialize)]
struct TableRow {
    n: u64,
    sn: RationalField,
    minimizers: usize,
    families_explored: u64,
    exists_reading: bool,
    forall_reading: bool,
    theorem3_lower: f64,
    conjectured_sn: RationalField,
    corollary1_upper: RationalField,
}

#[derive(Serialize)]
struct TableReport {
    rows: Vec<TableRow>,
}

pub fn cmd_table(range: &str, jobs: usize, format: Format) -> Result<CmdOutput, CliError> {
    let (lo, hi) = parse_range(range)?;
    if lo == 0 {
        return Err(CliError::Usage("n must be >= 1".into()));
    }
    let mut rows = Vec::new();
    for n in lo..=hi {
        let record = compute_sn_restricted(
            n as usize,
            SearchMode::PrunedBranchAndBound,
            jobs,
            None,
        )?;
        let conj = conjecture2_for(record.clone())?;
        let bounds = BoundTable::new(n)?;
        rows.push(TableRow {
            n,
            sn: RationalField::new(&record.sn),
            minimizers: record.minimizers.len(),
            families_explored: record.families_explored,
            exists_reading: conj.exists_reading,
            forall_reading: conj.forall_reading,
            theorem3_lower: bounds.theorem3_lower,
            conjectured_sn: RationalField::new(&bounds.conjectured_sn),
            corollary1_upper: RationalField::new(&bounds.corollary1_upper_ceil),
        });
    }
    let report = TableReport { rows };
    let stdout = match format {
        Format::Json => to_json_string(&report),
        _ => {
            let mut t = Table::new(&[
                "n",
                "s_n",
                "s_n_decimal",
                "minimizers",
                "explored",
                "exists_reading",
                "forall_reading",
                "theorem3_lower",
                "conjectured_sn",
                "corollary1_upper",
            ]);
            for r in &report.rows {
                t.push(vec![
                    r.n.to_string(),
                    r.sn.exact.clone(),
                    r.sn.decimal.clone(),
                    r.minimizers.to_string(),
                    r.families_explored.to_string(),
                    r.exists_reading.to_string(),
                    r.forall_reading.to_string(),
                    r.theorem3_lower.to_string(),
                    r.conjectured_sn.exact.clone(),
                    r.corollary1_upper.exact.clone(),
                ]);
            }
            t.render(format)
        }
    };
    Ok(CmdOutput::ok(stdout))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("16").unwrap(), (16, 16));
        assert_eq!(parse_range("4..64").unwrap(), (4, 64));
        assert!(parse_range("x").is_err());
        assert!(parse_range("9..3").is_err());
    }

    #[test]
    fn check_wojcik_all_proven() {
        let text = "-\n0\n0 1 2\n";
        let out = cmd_check(text, Format::Human).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("4/9"), "{}", out.stdout);
        assert!(out.stdout.contains("0.444444444444"));
        assert!(!out.stdout.contains("Refuted"));
    }

    #[test]
    fn check_not_union_closed_skips_theorems() {
        let out = cmd_check("0\n1\n", Format::Human).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("union_closed     false") || out.stdout.contains("false"));
        assert!(out.stdout.contains("skipped"));
    }

    #[test]
    fn construct_defaults_and_errors() {
        let out = cmd_construct(ConstructKind::Wojcik, 3, Some(1)).unwrap();
        assert_eq!(out.stdout, "-\n0\n0 1 2\n");
        let out = cmd_construct(ConstructKind::Chain, 3, None).unwrap();
        assert_eq!(out.stdout, "0\n0 1\n0 1 2\n");
        // default k = ceil(log2 n)
        let out = cmd_construct(ConstructKind::Wojcik, 3, None).unwrap();
        assert_eq!(out.stdout.lines().count(), 5); // 2^2 subsets + universe
        assert!(cmd_construct(ConstructKind::Wojcik, 3, Some(5)).is_err());
    }

    #[test]
    fn witness_direct_and_constructive() {
        let out = cmd_witness("-\n0 1 2\n", WitnessMethod::Constructive, Format::Human).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("0 1"));
        assert!(out.stdout.contains("A-equals-universe"));

        let chain = "0\n0 1\n0 1 2\n";
        let out = cmd_witness(chain, WitnessMethod::Direct, Format::Human).unwrap();
        assert_eq!(out.exit_code, exit_codes::VIOLATION);
        assert!(out.stdout.contains("no pair found"));

        // precondition failure: chain with |F| = n
        assert!(matches!(
            cmd_witness(chain, WitnessMethod::Constructive, Format::Human),
            Err(CliError::Precondition(_))
        ));
    }

    #[test]
    fn witness_reports_original_labels() {
        let out = cmd_witness("10 30\n", WitnessMethod::Direct, Format::Human).unwrap();
        assert!(out.stdout.contains("10 30"), "{}", out.stdout);
    }

    #[test]
    fn search_n3_report() {
        let out = cmd_search(3, SearchMode::PrunedBranchAndBound, None, 1, Format::Human).unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.stdout.contains("s_3 = 4/9"), "{}", out.stdout);
        let exists_line = out
            .stdout
            .lines()
            .find(|l| l.starts_with("exists_reading"))
            .unwrap();
        assert!(exists_line.ends_with("true"));
    }

    #[test]
    fn bounds_row_16() {
        let out = cmd_bounds("16", Format::Csv).unwrap();
        assert!(out.stdout.contains("0.25"));
        assert!(out.stdout.contains('4'));
        assert_eq!(out.exit_code, 0);
    }

    #[test]
    fn sample_small_battery() {
        let out = cmd_sample(4, 50, 1, 0.3, Format::Human).unwrap();
        assert_eq!(out.exit_code, 0, "{}", out.stdout);
        assert!(out.stdout.contains("50/50 pass"));
    }
}
