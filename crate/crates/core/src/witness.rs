//! Duplicate-abundance witnesses.
//!
//! A union-closed family with fewer members than ground elements always has
//! two distinct elements lying in exactly the same members. [`equal_pair_direct`]
//! finds such a pair by scanning columns; [`lemma2_witness`] instead runs the
//! inductive argument behind the guarantee, recording which case fired at
//! every step, and re-verifies the resulting pair before returning. The two
//! procedures may return different pairs; both must satisfy exact column
//! equality.

use std::fmt;

use thiserror::Error;

use crate::family::{FamilyError, SetFamily, UnionClosedFamily};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    /// A case that the inductive argument guarantees cannot fail did fail.
    /// Signals an implementation bug, never an expected outcome.
    #[error("internal proof violation: {0}")]
    InternalProofViolation(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
}

/// Which case of the inductive argument fired at one recursion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `|F| = 1`: the only member is the universe; any two elements work.
    BaseSingleton,
    /// The minimal nonempty member is the universe, forcing `F = {∅, ∪F}`.
    MinimalIsUniverse,
    /// The pair found in `F \ {A}` already has equal columns in `F`.
    FirstRecursionHit,
    /// Neither recursion pair survived directly; an element lying in every
    /// nonempty member was deleted and the argument recursed on the quotient.
    Lemma1Quotient,
    /// The pair found in the quotient has equal columns in `F`.
    SecondRecursionHit,
    /// Both the removed element and one of the quotient pair lie in every
    /// nonempty member, so their columns agree.
    DoubleLemma1,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Branch::BaseSingleton => "base-singleton",
            Branch::MinimalIsUniverse => "A-equals-universe",
            Branch::FirstRecursionHit => "first-recursion-hit",
            Branch::Lemma1Quotient => "lemma1-quotient",
            Branch::SecondRecursionHit => "second-recursion-hit",
            Branch::DoubleLemma1 => "double-lemma1",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessMethod {
    Direct,
    Constructive,
}

/// A pair of distinct elements with identical columns (`F_a = F_b`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub method: WitnessMethod,
    /// Branches fired, in chronological order (empty for the direct scan).
    pub trace: Vec<Branch>,
}

/// Scan element columns for the lexicographically smallest pair `(a, b)`,
/// `a < b`, with `F_a = F_b`.
pub fn equal_pair_direct(family: &SetFamily) -> Option<Witness> {
    let n = family.n();
    for a in 0..n {
        for b in a + 1..n {
            if family.columns_equal(a, b) {
                return Some(Witness {
                    a,
                    b,
                    method: WitnessMethod::Direct,
                    trace: Vec::new(),
                });
            }
        }
    }
    None
}

/// True iff `x` lies in every nonempty member.
fn in_all_nonempty(family: &SetFamily, x: usize) -> bool {
    family
        .members()
        .iter()
        .all(|&m| m == 0 || (m >> x) & 1 == 1)
}

/// Outcome of the single-step case analysis used inside the recursion: given
/// a minimal nonempty member `A` and a pair with equal columns in `F \ {A}`,
/// either the columns already agree in `F`, or one of the two elements lies
/// in every nonempty member of `F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma1Outcome {
    ColumnsEqual,
    AInAll,
    BInAll,
}

/// Case predicate: requires `A` to be an inclusion-minimal nonempty member
/// and the columns of `a` and `b` to agree in `G = F \ {A}`.
pub fn lemma1_conclusion(
    family: &UnionClosedFamily,
    a_mask: u64,
    a: usize,
    b: usize,
) -> Result<Lemma1Outcome, WitnessError> {
    let n = family.n();
    if a >= n || b >= n || a == b {
        return Err(WitnessError::PreconditionViolated(format!(
            "need distinct elements below n={n}, got a={a} b={b}"
        )));
    }
    if a_mask == 0 || !family.contains(a_mask) {
        return Err(WitnessError::PreconditionViolated(
            "A must be a nonempty member".into(),
        ));
    }
    if family
        .members()
        .iter()
        .any(|&m| m != 0 && m != a_mask && m & a_mask == m)
    {
        return Err(WitnessError::PreconditionViolated(
            "A is not inclusion-minimal among nonempty members".into(),
        ));
    }
    let g_columns_agree = family
        .members()
        .iter()
        .filter(|&&m| m != a_mask)
        .all(|&m| (m >> a) & 1 == (m >> b) & 1);
    if !g_columns_agree {
        return Err(WitnessError::PreconditionViolated(
            "columns of a and b differ already in F \\ {A}".into(),
        ));
    }
    if family.columns_equal(a, b) {
        return Ok(Lemma1Outcome::ColumnsEqual);
    }
    if in_all_nonempty(family, a) {
        Ok(Lemma1Outcome::AInAll)
    } else if in_all_nonempty(family, b) {
        Ok(Lemma1Outcome::BInAll)
    } else {
        Err(WitnessError::InternalProofViolation(
            "neither element of the pair lies in every nonempty member".into(),
        ))
    }
}

/// The recursion body. `family` is union-closed with `|F| < n` and `n >= 2`;
/// returns a pair of distinct elements with equal columns, in the family's
/// own element indices, appending the branches fired to `trace`.
fn witness_rec(family: &SetFamily, trace: &mut Vec<Branch>) -> Result<(usize, usize), WitnessError> {
    let n = family.n();
    let m = family.len();
    debug_assert!(n >= 2 && m < n);
    let full = family.full_mask();

    // |F| = 1: the single member is the universe.
    if m == 1 {
        if family.members()[0] != full {
            return Err(WitnessError::InternalProofViolation(
                "singleton family whose member is not the universe".into(),
            ));
        }
        trace.push(Branch::BaseSingleton);
        return Ok((0, 1));
    }

    let minimal = family.minimal_nonempty();
    if minimal == full {
        // every other member is empty, so F = {∅, universe}
        if m != 2 || family.members()[0] != 0 {
            return Err(WitnessError::InternalProofViolation(
                "minimal nonempty member is the universe but F != {∅, universe}".into(),
            ));
        }
        trace.push(Branch::MinimalIsUniverse);
        return Ok((0, 1));
    }

    // G = F \ {A}. Minimality of A means no union of two members of G can
    // equal A (such members would be nonempty proper subsets of A), so G is
    // union-closed; the guard below checks the only way that could fail.
    let g_masks: Vec<u64> = family
        .members()
        .iter()
        .copied()
        .filter(|&x| x != minimal)
        .collect();
    if g_masks.iter().any(|&x| x != 0 && x != minimal && x & minimal == x) {
        return Err(WitnessError::InternalProofViolation(
            "a nonempty proper subset of the minimal member exists".into(),
        ));
    }
    let g = SetFamily::from_masks(n, g_masks)?;
    debug_assert!(g.is_union_closed());

    let (a, b) = witness_rec(&g, trace)?;
    if family.columns_equal(a, b) {
        trace.push(Branch::FirstRecursionHit);
        return Ok((a, b));
    }

    // One of the pair lies in every nonempty member; test a first, then b.
    let in_all = if in_all_nonempty(family, a) {
        a
    } else if in_all_nonempty(family, b) {
        b
    } else {
        return Err(WitnessError::InternalProofViolation(
            "first recursion pair differs in F but neither element is in all nonempty members"
                .into(),
        ));
    };
    trace.push(Branch::Lemma1Quotient);

    // Quotient: delete the in-all element from G and recurse. The deletion
    // renumbers elements densely, so map the returned pair back.
    let quotient = g.delete_element(in_all)?;
    if quotient.len() >= quotient.n() {
        return Err(WitnessError::InternalProofViolation(format!(
            "quotient has {} members over {} elements; recursion hypothesis lost",
            quotient.len(),
            quotient.n()
        )));
    }
    debug_assert!(quotient.is_union_closed());
    let (c_q, d_q) = witness_rec(&quotient, trace)?;
    let unmap = |x: usize| if x < in_all { x } else { x + 1 };
    let (c, d) = (unmap(c_q), unmap(d_q));

    if family.columns_equal(c, d) {
        trace.push(Branch::SecondRecursionHit);
        return Ok((c, d));
    }

    // Both pairs failed directly; the element of (c, d) lying in every
    // nonempty member has the same column as the deleted one: both columns
    // are exactly the nonempty members.
    let partner = if in_all_nonempty(family, c) {
        c
    } else if in_all_nonempty(family, d) {
        d
    } else {
        return Err(WitnessError::InternalProofViolation(
            "second recursion pair differs in F but neither element is in all nonempty members"
                .into(),
        ));
    };
    trace.push(Branch::DoubleLemma1);
    if !family.columns_equal(in_all, partner) {
        return Err(WitnessError::InternalProofViolation(
            "double-lemma1 columns do not agree".into(),
        ));
    }
    Ok((in_all, partner))
}

/// Constructive duplicate-abundance witness for a union-closed family with
/// `n >= 2` and `|F| < n`, built by the inductive argument. The returned pair
/// is re-verified by direct column comparison before returning.
pub fn lemma2_witness(family: &UnionClosedFamily) -> Result<Witness, WitnessError> {
    let n = family.n();
    let m = family.len();
    if n < 2 {
        return Err(WitnessError::PreconditionViolated(format!(
            "needs |∪F| >= 2, got n={n}"
        )));
    }
    if m >= n {
        return Err(WitnessError::PreconditionViolated(format!(
            "needs |F| < |∪F|, got |F|={m} and n={n} (chain families show this is sharp)"
        )));
    }
    let mut trace = Vec::new();
    let (a, b) = witness_rec(family, &mut trace)?;
    let (a, b) = (a.min(b), a.max(b));
    if a == b || !family.columns_equal(a, b) {
        return Err(WitnessError::InternalProofViolation(format!(
            "returned pair ({a}, {b}) fails column equality"
        )));
    }
    Ok(Witness {
        a,
        b,
        method: WitnessMethod::Constructive,
        trace,
    })
}

/// Exact check whether some element lies in at least half the members;
/// returns the verdict and the (smallest-index) most abundant element.
pub fn check_frankl(family: &UnionClosedFamily) -> (bool, usize) {
    let profile = family.abundance_profile();
    (2 * profile.max() >= family.len() as u64, profile.argmax)
}
