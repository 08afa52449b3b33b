//! Library portion of the `ucf` command-line tool: the family file format,
//! report rendering, and the command implementations. The binary in `main.rs`
//! only parses arguments and dispatches here, which keeps every surface
//! testable in-process.

pub mod commands;
pub mod familyfile;
pub mod report;

/// Process exit codes. Never conflated: 0 = all checks pass, 1 = a verified
/// mathematical violation (or no witness pair exists), 2 = usage, parse, or
/// precondition errors.
pub mod exit_codes {
    pub const OK: i32 = 0;
    pub const VIOLATION: i32 = 1;
    pub const USAGE: i32 = 2;
}
