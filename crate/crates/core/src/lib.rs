//! Exact analysis of union-closed set families.
//!
//! A family here is a finite collection of distinct subsets of a ground set
//! `{0, .., n-1}` with `n <= 64`, each subset stored as a bitmask. The crate
//! provides:
//!
//! - [`family`]: the family types, exact rational densities and per-element
//!   abundances, and the two named extremal constructions ([`family::wojcik_family`]
//!   and [`family::chain_family`]).
//! - [`bounds`]: certified instance checks of the known density bounds
//!   (Wójcik's k-set theorem, Reimer's average-set-size bound, the
//!   `log2(n)/(2n)` density lower bound and its corollaries). Verdicts are
//!   backed by exact big-integer comparisons or certified directed-rounding
//!   intervals, never by bare floating point.
//! - [`witness`]: duplicate-abundance witnesses. The constructive procedure
//!   mirrors the inductive argument showing that `|F| < |∪F|` forces two
//!   elements with identical member columns, and records which case of the
//!   argument fired at every step.
//! - [`search`]: exact computation of the minimum density `s_n` for small `n`
//!   by isomorph-reduced exhaustive search, plus a deterministic random-family
//!   sampler for property suites.

pub mod bounds;
pub mod family;
pub mod rational;
pub mod search;
pub mod witness;

pub use bounds::{CheckOutcome, SkTable, Verdict};
pub use family::{
    chain_family, normalize, union_closure, AbundanceProfile, FamilyError, Normalized, SetFamily,
    UnionClosedFamily, wojcik_family,
};
pub use rational::Rational;
pub use search::{
    canonical_form, compute_sn, compute_sn_restricted, compute_sn_with_jobs, conjecture2_for,
    enumerate_ucf, sample_random_ucf, verify_conjecture2, CanonicalForm, Conjecture2Report,
    SearchError, SearchMode, SnRecord,
};
pub use witness::{
    check_frankl, equal_pair_direct, lemma1_conclusion, lemma2_witness, Branch, Lemma1Outcome,
    Witness, WitnessError, WitnessMethod,
};
