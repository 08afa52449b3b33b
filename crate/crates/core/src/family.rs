//! Set families over a dense ground set `{0, .., n-1}`, `n <= 64`.
//!
//! Members are bitmasks stored sorted ascending with no duplicates. A
//! [`SetFamily`] always covers its ground set: the union of all members is
//! the full n-bit mask. That normalization is what makes `n = |∪F|` a stored
//! field instead of a recomputation.

use std::collections::{BTreeSet, HashSet};
use std::ops::Deref;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// All input sets empty (or no sets at all): the ground set would be empty.
    #[error("empty universe: families must have at least one ground element")]
    EmptyUniverse,
    #[error("duplicate set in input")]
    DuplicateSet,
    #[error("more than 64 distinct elements")]
    TooManyElements,
    #[error("element index {0} out of range for ground set of size {1}")]
    ElementOutOfRange(usize, usize),
    #[error("union of members does not cover the ground set")]
    UniverseNotCovered,
    #[error("family is not union-closed")]
    NotUnionClosed,
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// Full mask of the ground set `{0, .., n-1}`.
pub fn full_mask(n: usize) -> u64 {
    debug_assert!((1..=64).contains(&n));
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A finite family of distinct subsets of `{0, .., n-1}` whose union is the
/// whole ground set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFamily {
    n: usize,
    members: Vec<u64>,
}

impl SetFamily {
    /// Build from explicit masks. The masks must be distinct, fit in `n` bits,
    /// and jointly cover all `n` bits.
    pub fn from_masks(n: usize, masks: impl IntoIterator<Item = u64>) -> Result<Self, FamilyError> {
        let mut members: Vec<u64> = masks.into_iter().collect();
        if members.is_empty() {
            return Err(FamilyError::EmptyUniverse);
        }
        if n == 0 {
            return Err(FamilyError::EmptyUniverse);
        }
        if n > 64 {
            return Err(FamilyError::TooManyElements);
        }
        let full = full_mask(n);
        let mut union = 0u64;
        for &m in &members {
            if m & !full != 0 {
                return Err(FamilyError::ElementOutOfRange(
                    (63 - (m & !full).leading_zeros()) as usize,
                    n,
                ));
            }
            union |= m;
        }
        if union != full {
            return Err(FamilyError::UniverseNotCovered);
        }
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateSet);
        }
        Ok(SetFamily { n, members })
    }

    /// Ground-set size `n = |∪F|`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of members `|F|`.
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: at least one member
    }

    /// Members sorted ascending by mask value.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Membership test by binary search.
    pub fn contains(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// `Σ_{A∈F} |A|`, the total of all member sizes.
    pub fn size_sum(&self) -> u64 {
        self.members.iter().map(|m| m.count_ones() as u64).sum()
    }

    /// True iff every pairwise union of members is itself a member.
    pub fn is_union_closed(&self) -> bool {
        for (i, &a) in self.members.iter().enumerate() {
            for &b in &self.members[i + 1..] {
                if !self.contains(a | b) {
                    return false;
                }
            }
        }
        true
    }

    /// Exact density `Σ|A| / (n·|F|)` as a reduced fraction.
    pub fn density(&self) -> Rational {
        let (s, nm) = self.density_raw();
        Rational::new(BigInt::from(s), BigInt::from(nm))
    }

    /// The unreduced pair `(Σ|A|, n·|F|)` behind [`Self::density`], for exact
    /// cross-multiplied comparisons downstream.
    pub fn density_raw(&self) -> (u64, u64) {
        (self.size_sum(), self.n as u64 * self.members.len() as u64)
    }

    /// Per-element abundances `|F_a|` with the smallest-index argmax.
    pub fn abundance_profile(&self) -> AbundanceProfile {
        let mut counts = vec![0u64; self.n];
        for &m in &self.members {
            let mut bits = m;
            while bits != 0 {
                let a = bits.trailing_zeros() as usize;
                counts[a] += 1;
                bits &= bits - 1;
            }
        }
        let argmax = counts
            .iter()
            .enumerate()
            .max_by(|(ia, ca), (ib, cb)| ca.cmp(cb).then(ib.cmp(ia)))
            .map(|(i, _)| i)
            .unwrap();
        let total = counts.iter().sum();
        AbundanceProfile {
            counts,
            argmax,
            total,
        }
    }

    /// True iff elements `a` and `b` lie in exactly the same members.
    pub fn columns_equal(&self, a: usize, b: usize) -> bool {
        debug_assert!(a < self.n && b < self.n);
        self.members
            .iter()
            .all(|&m| (m >> a) & 1 == (m >> b) & 1)
    }

    /// Remove element `a` from every member, merging any sets that become
    /// equal, and renumber the remaining elements densely.
    pub fn delete_element(&self, a: usize) -> Result<SetFamily, FamilyError> {
        if a >= self.n {
            return Err(FamilyError::ElementOutOfRange(a, self.n));
        }
        if self.n == 1 {
            return Err(FamilyError::EmptyUniverse);
        }
        let low = if a == 0 { 0 } else { full_mask(a) };
        let dropped: BTreeSet<u64> = self
            .members
            .iter()
            .map(|&m| (m & low) | ((m >> (a + 1)) << a))
            .collect();
        SetFamily::from_masks(self.n - 1, dropped)
    }

    /// An inclusion-minimal nonempty member; tie-break smallest cardinality,
    /// then smallest mask value. (Minimum cardinality implies inclusion
    /// minimality among nonempty members.) Always exists: the universe
    /// invariant guarantees a nonempty member.
    pub fn minimal_nonempty(&self) -> u64 {
        self.members
            .iter()
            .copied()
            .filter(|&m| m != 0)
            .min_by_key(|&m| (m.count_ones(), m))
            .expect("invariant: some member is nonempty")
    }
}

/// Per-element membership counts of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbundanceProfile {
    /// `counts[a] = |F_a|`, the number of members containing `a`.
    pub counts: Vec<u64>,
    /// Element attaining the maximum count; ties broken by smallest index.
    pub argmax: usize,
    /// `Σ_a counts[a]`, which also equals `Σ_{A∈F} |A|`.
    pub total: u64,
}

impl AbundanceProfile {
    pub fn max(&self) -> u64 {
        self.counts[self.argmax]
    }
}

/// A [`SetFamily`] validated to be closed under pairwise union. Contains the
/// full-universe mask as a member (the union of all members is reachable by
/// pairwise unions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionClosedFamily(SetFamily);

impl UnionClosedFamily {
    pub fn new(family: SetFamily) -> Result<Self, FamilyError> {
        if !family.is_union_closed() {
            return Err(FamilyError::NotUnionClosed);
        }
        Ok(UnionClosedFamily(family))
    }

    /// Wrap a family already known to be union-closed (e.g. produced by
    /// [`union_closure`] or an enumeration that maintains closure).
    pub(crate) fn new_unchecked(family: SetFamily) -> Self {
        debug_assert!(family.len() > 4096 || family.is_union_closed());
        UnionClosedFamily(family)
    }

    pub fn as_set_family(&self) -> &SetFamily {
        &self.0
    }

    pub fn into_inner(self) -> SetFamily {
        self.0
    }
}

impl Deref for UnionClosedFamily {
    type Target = SetFamily;
    fn deref(&self) -> &SetFamily {
        &self.0
    }
}

impl TryFrom<SetFamily> for UnionClosedFamily {
    type Error = FamilyError;
    fn try_from(f: SetFamily) -> Result<Self, FamilyError> {
        UnionClosedFamily::new(f)
    }
}

/// Membership index for closure computation: dense bitmap for small ground
/// sets, hashing above that.
enum Present {
    Bitmap(Vec<u64>),
    Hash(HashSet<u64>),
}

impl Present {
    fn new(n: usize) -> Self {
        if n <= 20 {
            Present::Bitmap(vec![0u64; 1 << n.saturating_sub(6)])
        } else {
            Present::Hash(HashSet::new())
        }
    }

    fn insert(&mut self, m: u64) -> bool {
        match self {
            Present::Bitmap(words) => {
                let (w, b) = ((m >> 6) as usize, m & 63);
                let seen = (words[w] >> b) & 1 == 1;
                words[w] |= 1 << b;
                !seen
            }
            Present::Hash(set) => set.insert(m),
        }
    }
}

/// Smallest union-closed superfamily of `family`: every added mask is a union
/// of input masks. Idempotent on union-closed input.
///
/// Incremental construction: the closure of the first `i+1` members is the
/// closure of the first `i`, plus the new member, plus its union with each
/// mask already present. Runs in `O(|F| · |closure|)` membership operations.
pub fn union_closure(family: &SetFamily) -> UnionClosedFamily {
    let n = family.n();
    let mut present = Present::new(n);
    let mut closed: Vec<u64> = Vec::with_capacity(family.len());
    for &s in family.members() {
        if !present.insert(s) {
            continue;
        }
        let mut batch = vec![s];
        for i in 0..closed.len() {
            let u = s | closed[i];
            if present.insert(u) {
                batch.push(u);
            }
        }
        closed.append(&mut batch);
    }
    closed.sort_unstable();
    let f = SetFamily {
        n,
        members: closed,
    };
    UnionClosedFamily::new_unchecked(f)
}

/// A normalized family together with the map from dense indices back to the
/// caller's original element labels.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub family: SetFamily,
    /// `labels[i]` is the original label of element `i`.
    pub labels: Vec<u64>,
}

/// Remap arbitrary non-negative element labels to dense indices `0..n-1`,
/// order-preservingly, and validate the family invariants.
pub fn normalize(sets: &[BTreeSet<u64>]) -> Result<Normalized, FamilyError> {
    let labels: Vec<u64> = sets
        .iter()
        .flat_map(|s| s.iter().copied())
        .collect::<BTreeSet<u64>>()
        .into_iter()
        .collect();
    if labels.is_empty() {
        return Err(FamilyError::EmptyUniverse);
    }
    if labels.len() > 64 {
        return Err(FamilyError::TooManyElements);
    }
    let index_of = |label: u64| labels.binary_search(&label).unwrap();
    let mut masks = Vec::with_capacity(sets.len());
    let mut seen = HashSet::with_capacity(sets.len());
    for set in sets {
        let mask = set.iter().fold(0u64, |acc, &l| acc | 1 << index_of(l));
        if !seen.insert(mask) {
            return Err(FamilyError::DuplicateSet);
        }
        masks.push(mask);
    }
    let family = SetFamily::from_masks(labels.len(), masks)?;
    Ok(Normalized { family, labels })
}

/// The conjectured minimum-density family: all `2^k` subsets of `{0, .., k-1}`
/// together with the full ground set. `k = 0` is accepted and yields
/// `{∅, universe}`, which is convenient for seeding searches.
pub fn wojcik_family(n: usize, k: usize) -> Result<UnionClosedFamily, FamilyError> {
    if n == 0 || n > 64 || k > n {
        return Err(FamilyError::BadParameters(format!(
            "wojcik family needs 0 <= k <= n <= 64, got n={n} k={k}"
        )));
    }
    if k > 62 {
        // 2^63 members cannot be materialized; nothing at this scale is
        // enumerable anyway.
        return Err(FamilyError::BadParameters(format!(
            "wojcik family with k={k} is too large to materialize"
        )));
    }
    let full = full_mask(n);
    let mut members: Vec<u64> = (0..(1u64 << k)).collect();
    if k < n {
        members.push(full);
    }
    let f = SetFamily { n, members };
    debug_assert!(f.n > 16 || f.is_union_closed());
    Ok(UnionClosedFamily(f))
}

/// The nested prefix family `{0}, {0,1}, .., {0,..,n-1}`: union-closed with
/// `|F| = n` and all abundance columns pairwise distinct, showing that the
/// duplicate-column guarantee at `|F| < n` is sharp.
pub fn chain_family(n: usize) -> Result<UnionClosedFamily, FamilyError> {
    if n == 0 || n > 64 {
        return Err(FamilyError::BadParameters(format!(
            "chain family needs 1 <= n <= 64, got n={n}"
        )));
    }
    let members: Vec<u64> = (1..=n).map(full_mask).collect();
    Ok(UnionClosedFamily(SetFamily { n, members }))
}
