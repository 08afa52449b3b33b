//! The family file format.
//!
//! UTF-8 text; `#` starts a comment running to end of line. Every non-blank,
//! non-comment line is one set: either the single character `-` for the empty
//! set, or strictly increasing space-separated non-negative integer element
//! labels. Duplicate sets are an error. Emission uses the normalized 0-based
//! labels in ascending mask order, so `parse(emit(F)) = F` exactly.

use std::collections::BTreeSet;

use thiserror::Error;
use ucf_core::family::{normalize, FamilyError, Normalized, SetFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("{0}")]
    Family(#[from] FamilyError),
}

/// Parse a family file, returning the normalized family together with the
/// original element labels.
pub fn parse(text: &str) -> Result<Normalized, ParseError> {
    let mut sets: Vec<BTreeSet<u64>> = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if line == "-" {
            sets.push(BTreeSet::new());
            continue;
        }
        let mut set = BTreeSet::new();
        let mut prev: Option<u64> = None;
        for token in line.split_whitespace() {
            let value: u64 = token.parse().map_err(|_| ParseError::Line {
                line: line_no,
                msg: format!("expected a non-negative integer, got {token:?}"),
            })?;
            if prev.is_some_and(|p| value <= p) {
                return Err(ParseError::Line {
                    line: line_no,
                    msg: format!("elements must be strictly increasing ({value} after {})", prev.unwrap()),
                });
            }
            prev = Some(value);
            set.insert(value);
        }
        sets.push(set);
    }
    Ok(normalize(&sets)?)
}

/// Emit a family in the file format: ascending mask order, 0-based labels.
pub fn emit(family: &SetFamily) -> String {
    let mut out = String::new();
    for &mask in family.members() {
        out.push_str(&mask_line(mask));
        out.push('\n');
    }
    out
}

/// One line of the format for a single member mask.
pub fn mask_line(mask: u64) -> String {
    if mask == 0 {
        return "-".to_string();
    }
    let mut parts = Vec::new();
    let mut bits = mask;
    while bits != 0 {
        parts.push((bits.trailing_zeros()).to_string());
        bits &= bits - 1;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ucf_core::family::wojcik_family;

    #[test]
    fn parses_comments_blanks_and_empty_sets() {
        let text = "# a family\n-\n0   # the singleton\n0 1 2\n\n";
        let nf = parse(text).unwrap();
        assert_eq!(nf.family.n(), 3);
        assert_eq!(nf.family.members(), &[0b000, 0b001, 0b111]);
        assert_eq!(nf.labels, vec![0, 1, 2]);
    }

    #[test]
    fn preserves_original_labels() {
        let nf = parse("3\n3 7\n").unwrap();
        assert_eq!(nf.labels, vec![3, 7]);
        assert_eq!(nf.family.members(), &[0b01, 0b11]);
    }

    #[test]
    fn rejects_non_increasing_lines() {
        let err = parse("2 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 1, .. }), "{err}");
        let err = parse("0\n1 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Line { line: 2, .. }));
    }

    #[test]
    fn rejects_duplicates_and_junk() {
        assert!(matches!(
            parse("0 1\n0 1\n").unwrap_err(),
            ParseError::Family(FamilyError::DuplicateSet)
        ));
        assert!(matches!(
            parse("0 x\n").unwrap_err(),
            ParseError::Line { line: 1, .. }
        ));
        assert!(matches!(
            parse("# nothing\n").unwrap_err(),
            ParseError::Family(FamilyError::EmptyUniverse)
        ));
    }

    #[test]
    fn emit_parse_round_trip() {
        let w = wojcik_family(3, 1).unwrap();
        let text = emit(w.as_set_family());
        assert_eq!(text, "-\n0\n0 1 2\n");
        let back = parse(&text).unwrap();
        assert_eq!(back.family, *w.as_set_family());
        assert_eq!(emit(&back.family), text);
    }
}
