//! Exact minimum-density search and family enumeration for small ground sets.
//!
//! Families are searched over the subset lattice of `{0,..,n-1}` with the
//! universe mask always forced in (a finite union-closed family contains the
//! union of its members). Candidate masks are decided in ascending numeric
//! order; unions of chosen members point upward, so closure is maintained as
//! a set of pending obligations that force later masks in. Isomorph rejection
//! uses the lexicographically least relabeling of the ascending member list:
//! a partial family whose decided prefix can be beaten by some permutation is
//! pruned, which is sound because completions only append larger masks to the
//! prefix while a permutation can only move them below it.
//!
//! The minimum-density search is restricted to families containing the empty
//! set: adding `∅` to any union-closed family preserves closure and strictly
//! lowers density (the size sum is unchanged while `|F|` grows), so every
//! minimizer contains `∅`. Additionally, a family with `m` members has
//! density at least `log2(m)/(2n)` (Reimer), which caps `m` once an incumbent
//! density is known; the incumbent is seeded with the best closed-form
//! construction and kept fixed during the search so that results and explored
//! counts are independent of scheduling.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::conjectured_sn;
use crate::family::{full_mask, SetFamily, UnionClosedFamily};
use crate::rational::Rational;
use crate::{family, wojcik_family};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("problem too large: {0}")]
    TooLarge(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

/// The lexicographically least relabeling of a family's sorted mask list.
/// Equal canonical forms exactly characterize isomorphic families.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub masks: Vec<u64>,
}

impl CanonicalForm {
    /// Rebuild the representative family.
    pub fn to_family(&self) -> UnionClosedFamily {
        let f = SetFamily::from_masks(self.n, self.masks.iter().copied())
            .expect("canonical form stores a valid family");
        UnionClosedFamily::new(f).expect("canonical form stores a union-closed family")
    }
}

fn apply_perm(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        out |= 1 << perm[i];
        bits &= bits - 1;
    }
    out
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// Canonical form by sweeping all `n!` relabelings; capped at `n <= 8`.
pub fn canonical_form(family: &SetFamily) -> Result<CanonicalForm, SearchError> {
    let n = family.n();
    if n > 8 {
        return Err(SearchError::TooLarge(format!(
            "canonical form sweeps n! permutations; n={n} > 8"
        )));
    }
    let mut best: Option<Vec<u64>> = None;
    for perm in all_perms(n) {
        let mut masks: Vec<u64> = family
            .members()
            .iter()
            .map(|&m| apply_perm(m, &perm))
            .collect();
        masks.sort_unstable();
        if best.as_ref().is_none_or(|b| masks < *b) {
            best = Some(masks);
        }
    }
    Ok(CanonicalForm {
        n,
        masks: best.unwrap(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Scan every subfamily of the power set (`2^(2^n)` candidates); `n <= 4`.
    NaiveExhaustive,
    /// Ascending-mask backtracking with closure propagation, isomorph
    /// rejection, and density pruning; `n <= 6`.
    PrunedBranchAndBound,
}

impl std::fmt::Display for SearchMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchMode::NaiveExhaustive => write!(f, "naive"),
            SearchMode::PrunedBranchAndBound => write!(f, "pruned"),
        }
    }
}

/// Result of an exact `s_n` computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnRecord {
    pub n: usize,
    /// The exact minimum density.
    pub sn: Rational,
    /// Canonical forms of every minimizer, sorted.
    pub minimizers: Vec<CanonicalForm>,
    /// Complete candidate families whose density was evaluated: labeled
    /// families for the naive scan, canonical representatives for the pruned
    /// search. Independent of worker count.
    pub families_explored: u64,
    pub method: SearchMode,
}

/// Shared state for the ascending-mask backtracking search.
struct Walker<'a> {
    n: usize,
    full: u64,
    /// All n! label permutations (identity included; skipped in tests).
    perms: Vec<Vec<usize>>,
    /// Maximum total member count, universe included.
    max_members: usize,
    /// Static incumbent density `p/q` for pruning, if any.
    incumbent: Option<(u128, u128)>,
    /// For each next-undecided mask `v`: prefix sums of the sorted popcounts
    /// of the still-undecided masks `v..full`.
    suffix_presums: Vec<Vec<u64>>,
    /// Scripted decisions for the first masks (parallel partitioning).
    script: &'a [bool],
    script_base: u64,
}

/// One complete family reaching a leaf: ascending members, universe included.
type LeafSink<'s> = &'s mut dyn FnMut(&[u64], u64);

impl Walker<'_> {
    /// Is the ascending member list beaten by any relabeling of itself?
    fn prefix_dominated(&self, members: &[u64]) -> bool {
        let mut scratch: Vec<u64> = Vec::with_capacity(members.len());
        for perm in &self.perms {
            scratch.clear();
            scratch.extend(members.iter().map(|&m| apply_perm(m, perm)));
            scratch.sort_unstable();
            if scratch.as_slice() < members {
                return true;
            }
        }
        false
    }

    /// Can some completion of this node still meet the incumbent? Lower
    /// bound: take `t` more members of the smallest available sizes.
    fn density_can_meet_incumbent(&self, members: &[u64], sum: u64, v: u64) -> bool {
        let Some((p, q)) = self.incumbent else {
            return true;
        };
        let presums = &self.suffix_presums[v as usize];
        let base_m = members.len() as u128 + 1; // universe still to come
        let s0 = sum as u128 + self.n as u128;
        let t_max = (self.max_members as u128).saturating_sub(base_m) as usize;
        for t in 0..presums.len().min(t_max + 1) {
            let num = s0 + presums[t] as u128;
            let den = self.n as u128 * (base_m + t as u128);
            // completion density num/den <= p/q ?
            if num * q <= p * den {
                return true;
            }
        }
        false
    }

    fn walk(&self, v: u64, members: &mut Vec<u64>, pending: u64, sum: u64, out: LeafSink) {
        if v == self.full {
            out(members, sum);
            return;
        }
        let scripted = if v >= self.script_base && ((v - self.script_base) as usize) < self.script.len()
        {
            Some(self.script[(v - self.script_base) as usize])
        } else {
            None
        };
        let forced = (pending >> v) & 1 == 1;

        // include v
        if scripted != Some(false) {
            members.push(v);
            // + 1 for the universe member still to be appended
            let within_cap = members.len() + 1 <= self.max_members;
            if within_cap
                && !self.prefix_dominated(members)
                && self.density_can_meet_incumbent(members, sum + v.count_ones() as u64, v + 1)
            {
                let mut next_pending = pending & !(1 << v);
                for &x in members[..members.len() - 1].iter() {
                    let u = x | v;
                    if u != v && u != self.full {
                        next_pending |= 1 << u;
                    }
                }
                self.walk(v + 1, members, next_pending, sum + v.count_ones() as u64, out);
            }
            members.pop();
        }

        // exclude v (illegal when a chosen pair unions to v)
        if !forced && scripted != Some(true) {
            self.walk(v + 1, members, pending, sum, out);
        }
    }
}

fn suffix_presums(full: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::with_capacity(full as usize + 1);
    for v in 0..=full {
        let mut pops: Vec<u64> = (v..full).map(|m| m.count_ones() as u64).collect();
        pops.sort_unstable();
        let mut presum = vec![0u64];
        for p in pops {
            presum.push(presum.last().unwrap() + p);
        }
        out.push(presum);
    }
    out
}

struct WalkSpec {
    n: usize,
    force_empty: bool,
    max_members: usize,
    incumbent: Option<(u128, u128)>,
}

/// Run the backtracking search, single-threaded or partitioned over scripted
/// prefixes of the decision sequence. The leaf callback receives ascending
/// members (universe appended) and the total size sum; results are merged in
/// script order, so output is independent of scheduling.
fn run_walk<T: Send>(
    spec: &WalkSpec,
    jobs: usize,
    leaf: impl Fn(&[u64], u64, &mut T) + Sync,
    make_acc: impl Fn() -> T + Sync,
    merge: impl Fn(T, T) -> T,
) -> T {
    let n = spec.n;
    let full = full_mask(n);
    let perms = all_perms(n);
    let presums = suffix_presums(full);
    let start_v = if spec.force_empty { 1 } else { 0 };
    let start_members: Vec<u64> = if spec.force_empty { vec![0] } else { vec![] };

    let run_script = |script: &[bool]| -> T {
        let walker = Walker {
            n,
            full,
            perms: perms.clone(),
            max_members: spec.max_members,
            incumbent: spec.incumbent,
            suffix_presums: presums.clone(),
            script,
            script_base: start_v,
        };
        let mut acc = make_acc();
        let mut members = start_members.clone();
        let start_sum: u64 = members.iter().map(|m| m.count_ones() as u64).sum();
        let mut sink = |members: &[u64], sum: u64| {
            let mut with_full: Vec<u64> = members.to_vec();
            with_full.push(full);
            leaf(&with_full, sum + n as u64, &mut acc);
        };
        walker.walk(start_v, &mut members, 0, start_sum, &mut sink);
        acc
    };

    let decisions = full.saturating_sub(start_v) as usize;
    if jobs <= 1 || decisions == 0 {
        return run_script(&[]);
    }
    let depth = decisions.min(4);
    let scripts: Vec<Vec<bool>> = (0..(1u32 << depth))
        .map(|bits| (0..depth).map(|i| (bits >> i) & 1 == 1).collect())
        .collect();
    scripts
        .par_iter()
        .map(|s| run_script(s))
        .collect::<Vec<T>>()
        .into_iter()
        .reduce(merge)
        .unwrap()
}

/// Exact computation of the minimum density `s_n` together with all canonical
/// minimizers.
pub fn compute_sn(n: usize, mode: SearchMode) -> Result<SnRecord, SearchError> {
    compute_sn_with_jobs(n, mode, 1)
}

/// As [`compute_sn`], optionally fanning out over deterministic subtree
/// partitions. Output is byte-identical for every `jobs` value.
pub fn compute_sn_with_jobs(n: usize, mode: SearchMode, jobs: usize) -> Result<SnRecord, SearchError> {
    compute_sn_restricted(n, mode, jobs, None)
}

/// As [`compute_sn_with_jobs`], with an optional extra cap on the member
/// count. With a cap below the true minimizer size the result is the minimum
/// density over families with at most `max_m` members, not `s_n` itself.
pub fn compute_sn_restricted(
    n: usize,
    mode: SearchMode,
    jobs: usize,
    max_m: Option<usize>,
) -> Result<SnRecord, SearchError> {
    if max_m == Some(0) {
        return Err(SearchError::BadParameters("member cap must be >= 1".into()));
    }
    match mode {
        SearchMode::NaiveExhaustive => {
            if n == 0 || n > 4 {
                return Err(SearchError::TooLarge(format!(
                    "naive scan visits 2^(2^n) subfamilies; n={n} not in 1..=4"
                )));
            }
            Ok(compute_sn_naive(n, jobs, max_m.unwrap_or(1 << n)))
        }
        SearchMode::PrunedBranchAndBound => {
            if n == 0 || n > 6 {
                return Err(SearchError::TooLarge(format!(
                    "pruned search supports 1 <= n <= 6, got n={n}"
                )));
            }
            Ok(compute_sn_pruned(n, jobs, max_m))
        }
    }
}

struct MinAcc {
    best: Option<Rational>,
    minimizers: Vec<CanonicalForm>,
    explored: u64,
}

fn min_acc_merge(mut a: MinAcc, b: MinAcc) -> MinAcc {
    a.explored += b.explored;
    match (&a.best, &b.best) {
        (_, None) => {}
        (None, Some(_)) => {
            a.best = b.best;
            a.minimizers = b.minimizers;
        }
        (Some(x), Some(y)) => {
            if y < x {
                a.best = b.best;
                a.minimizers = b.minimizers;
            } else if y == x {
                a.minimizers.extend(b.minimizers);
            }
        }
    }
    a
}

fn finish_record(n: usize, acc: MinAcc, method: SearchMode) -> SnRecord {
    let mut minimizers = acc.minimizers;
    minimizers.sort();
    minimizers.dedup();
    SnRecord {
        n,
        sn: acc.best.expect("at least one family exists"),
        minimizers,
        families_explored: acc.explored,
        method,
    }
}

fn compute_sn_naive(n: usize, jobs: usize, max_m: usize) -> SnRecord {
    let full = full_mask(n) as u32;
    let subsets = 1u64 << (1 << n);
    let eval_range = |lo: u64, hi: u64| -> MinAcc {
        let mut acc = MinAcc {
            best: None,
            minimizers: Vec::new(),
            explored: 0,
        };
        'outer: for fam_bits in lo..hi {
            // the universe must be a member (union-closed families contain
            // the union of their members)
            if (fam_bits >> full) & 1 == 0 || fam_bits.count_ones() as usize > max_m {
                continue;
            }
            let members: Vec<u64> = (0..=full as u64)
                .filter(|&m| (fam_bits >> m) & 1 == 1)
                .collect();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i..] {
                    if (fam_bits >> (a | b)) & 1 == 0 {
                        continue 'outer;
                    }
                }
            }
            acc.explored += 1;
            let sum: u64 = members.iter().map(|m| m.count_ones() as u64).sum();
            let d = Rational::new(sum.into(), (n as u64 * members.len() as u64).into());
            let better = acc.best.as_ref().is_none_or(|b| d < *b);
            if better {
                acc.best = Some(d);
                acc.minimizers.clear();
            } else if acc.best.as_ref() != Some(&d) {
                continue;
            }
            let f = SetFamily::from_masks(n, members).unwrap();
            acc.minimizers.push(canonical_form(&f).unwrap());
        }
        acc
    };
    let acc = if jobs <= 1 {
        eval_range(1, subsets)
    } else {
        let chunks = 64u64;
        let step = subsets.div_ceil(chunks);
        (0..chunks)
            .into_par_iter()
            .map(|i| eval_range((i * step).max(1), ((i + 1) * step).min(subsets)))
            .collect::<Vec<_>>()
            .into_iter()
            .reduce(min_acc_merge)
            .unwrap()
    };
    finish_record(n, acc, SearchMode::NaiveExhaustive)
}

/// Largest member count `m` whose Reimer density floor `log2(m)/(2n)` does
/// not exceed the incumbent `p/q`, i.e. the largest `m` with `m^q <= 2^(2np)`.
fn reimer_member_cap(n: usize, p: u128, q: u128) -> usize {
    let hard_cap: usize = 1 << n;
    let rhs = BigUint::one() << ((2 * n as u128 * p) as usize).min(1 << 20);
    let mut m = 1usize;
    while m < hard_cap {
        let next = BigUint::from(m as u64 + 1).pow(q as u32);
        if next > rhs {
            break;
        }
        m += 1;
    }
    m
}

fn compute_sn_pruned(n: usize, jobs: usize, max_m: Option<usize>) -> SnRecord {
    let seed = conjectured_sn(n as u64).expect("n >= 1");
    let p: u128 = seed.numer().try_into().expect("small numerator");
    let q: u128 = seed.denom().try_into().expect("small denominator");
    let reimer_cap = reimer_member_cap(n, p, q);
    // With a member cap below the Reimer bound the closed-form incumbent may
    // be unattainable, so drop both the density pruning and the ∅
    // restriction: the result is then the exact minimum over all families
    // with at most `max_m` members.
    let spec = match max_m {
        Some(mm) if mm < reimer_cap => WalkSpec {
            n,
            force_empty: false,
            max_members: mm,
            incumbent: None,
        },
        _ => WalkSpec {
            n,
            force_empty: true,
            max_members: reimer_cap,
            incumbent: Some((p, q)),
        },
    };
    let acc = run_walk(
        &spec,
        jobs,
        |members, sum, acc: &mut MinAcc| {
            acc.explored += 1;
            let d = Rational::new(sum.into(), (n as u64 * members.len() as u64).into());
            let better = acc.best.as_ref().is_none_or(|b| d < *b);
            if better {
                acc.best = Some(d);
                acc.minimizers.clear();
            } else if acc.best.as_ref() != Some(&d) {
                return;
            }
            acc.minimizers.push(CanonicalForm {
                n,
                masks: members.to_vec(),
            });
        },
        || MinAcc {
            best: None,
            minimizers: Vec::new(),
            explored: 0,
        },
        min_acc_merge,
    );
    finish_record(n, acc, SearchMode::PrunedBranchAndBound)
}

/// Enumerate one representative per isomorphism class of union-closed
/// families with universe exactly `{0,..,n-1}`. Full enumeration is capped at
/// `n <= 5`; `n = 6` requires a member cap and is exposed as experimental.
pub fn enumerate_ucf(n: usize, max_m: Option<usize>) -> Result<Vec<UnionClosedFamily>, SearchError> {
    if n == 0 || n > 6 {
        return Err(SearchError::TooLarge(format!(
            "enumeration supports 1 <= n <= 6, got n={n}"
        )));
    }
    if n == 6 && max_m.is_none() {
        return Err(SearchError::TooLarge(
            "full enumeration at n=6 is out of budget; set a member cap".into(),
        ));
    }
    let spec = WalkSpec {
        n,
        force_empty: false,
        max_members: max_m.unwrap_or(1 << n).min(1 << n),
        incumbent: None,
    };
    let families = run_walk(
        &spec,
        1,
        |members, _sum, acc: &mut Vec<UnionClosedFamily>| {
            let f = SetFamily::from_masks(n, members.iter().copied()).unwrap();
            debug_assert!(f.is_union_closed());
            acc.push(UnionClosedFamily::new_unchecked(f));
        },
        Vec::new,
        |mut a, b| {
            a.extend(b);
            a
        },
    );
    Ok(families)
}

/// Both readings of the minimum-density structure conjecture at one `n`.
#[derive(Debug, Clone)]
pub struct Conjecture2Report {
    pub n: usize,
    pub record: SnRecord,
    /// Some minimizer is a `wojcik_family(n, k)` with `k` one of
    /// `floor(log2 n)`, `ceil(log2 n)`.
    pub exists_reading: bool,
    /// Every minimizer is.
    pub forall_reading: bool,
    /// Minimizers violating the forall reading, sorted.
    pub counterexamples: Vec<CanonicalForm>,
}

/// Compare every minimizer of `s_n` against the two candidate constructions.
pub fn verify_conjecture2(n: usize) -> Result<Conjecture2Report, SearchError> {
    conjecture2_for(compute_sn(n, SearchMode::PrunedBranchAndBound)?)
}

/// Fill both conjecture readings for an already-computed record.
pub fn conjecture2_for(record: SnRecord) -> Result<Conjecture2Report, SearchError> {
    let n = record.n;
    let mut forms = BTreeSet::new();
    for k in [
        crate::bounds::floor_log2(n as u64),
        crate::bounds::ceil_log2(n as u64),
    ] {
        let w = wojcik_family(n, k as usize)
            .map_err(|e| SearchError::BadParameters(e.to_string()))?;
        forms.insert(canonical_form(w.as_set_family())?);
    }
    let exists_reading = record.minimizers.iter().any(|m| forms.contains(m));
    let counterexamples: Vec<CanonicalForm> = record
        .minimizers
        .iter()
        .filter(|m| !forms.contains(*m))
        .cloned()
        .collect();
    let forall_reading = counterexamples.is_empty();
    Ok(Conjecture2Report {
        n,
        record,
        exists_reading,
        forall_reading,
        counterexamples,
    })
}

/// The fixed pseudo-random generator behind [`sample_random_ucf`]: splitmix64
/// (Steele, Lea & Flood's mixing constants). State advances by the golden
/// ratio increment and each output is finalized independently, so streams are
/// bit-identical on every platform.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Bernoulli trial: true with probability `p`, consuming one draw.
    /// Compares the top 53 bits against `floor(p · 2^53)`, which is exact for
    /// any `p` representable as an `f64` in `[0, 1]`.
    pub fn coin(&mut self, p: f64) -> bool {
        let threshold = (p * (1u64 << 53) as f64) as u64;
        (self.next_u64() >> 11) < threshold
    }
}

/// Probability of drawing one more seed mask after each draw.
const SAMPLE_CONTINUE_PROB: f64 = 0.75;
/// Hard cap on seed masks per family (closure size is at most `2^seeds`).
const SAMPLE_MAX_SEEDS: usize = 20;

/// Deterministic random union-closed families: draw a geometric number of
/// seed masks (each element included independently with probability
/// `size_bias`), adjoin the universe, and take the union closure. Fixed
/// `(n, count, seed, size_bias)` reproduce the same stream on any platform.
pub fn sample_random_ucf(
    n: usize,
    count: usize,
    seed: u64,
    size_bias: f64,
) -> Result<Vec<UnionClosedFamily>, SearchError> {
    if n == 0 || n > 24 {
        return Err(SearchError::TooLarge(format!(
            "sampling is capped at n <= 24 to bound closure blow-up, got n={n}"
        )));
    }
    if count == 0 {
        return Err(SearchError::BadParameters("count must be >= 1".into()));
    }
    if !(size_bias > 0.0 && size_bias < 1.0) {
        return Err(SearchError::BadParameters(format!(
            "size bias must be in (0, 1), got {size_bias}"
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let full = full_mask(n);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut seeds: Vec<u64> = Vec::new();
        loop {
            let mut mask = 0u64;
            for a in 0..n {
                if rng.coin(size_bias) {
                    mask |= 1 << a;
                }
            }
            seeds.push(mask);
            if seeds.len() >= SAMPLE_MAX_SEEDS || !rng.coin(SAMPLE_CONTINUE_PROB) {
                break;
            }
        }
        seeds.push(full);
        let masks: BTreeSet<u64> = seeds.into_iter().collect();
        let base = SetFamily::from_masks(n, masks).expect("universe mask covers the ground set");
        out.push(family::union_closure(&base));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{check_density_lower, check_reimer, Verdict};
    use crate::rational::ratio_u64;

    #[test]
    fn splitmix64_reference_stream() {
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
        let mut r = SplitMix64::new(42);
        assert_eq!(r.next_u64(), 0xBDD7_3226_2FEB_6E95);
    }

    #[test]
    fn canonical_form_examples() {
        let f = SetFamily::from_masks(2, [0b10, 0b11]).unwrap();
        assert_eq!(canonical_form(&f).unwrap().masks, vec![0b01, 0b11]);

        let chain = crate::family::chain_family(3).unwrap();
        assert_eq!(
            canonical_form(chain.as_set_family()).unwrap().masks,
            vec![1, 3, 7]
        );

        let wide = crate::family::chain_family(9).unwrap();
        assert!(canonical_form(wide.as_set_family()).is_err());
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let f = SetFamily::from_masks(4, [0b0011, 0b0111, 0b1000, 0b1111]).unwrap();
        let base = canonical_form(&f).unwrap();
        let mut rng = SplitMix64::new(7);
        for _ in 0..100 {
            // random permutation by sorting on random keys
            let mut perm: Vec<usize> = (0..4).collect();
            perm.sort_by_key(|_| rng.next_u64());
            let permuted = SetFamily::from_masks(
                4,
                f.members().iter().map(|&m| apply_perm(m, &perm)),
            )
            .unwrap();
            assert_eq!(canonical_form(&permuted).unwrap(), base);
        }
    }

    #[test]
    fn enumeration_small_counts() {
        assert_eq!(enumerate_ucf(1, None).unwrap().len(), 2);
        assert_eq!(enumerate_ucf(2, None).unwrap().len(), 6);
        assert_eq!(enumerate_ucf(3, None).unwrap().len(), 28);
    }

    #[test]
    fn enumeration_matches_naive_oracle_classes() {
        // oracle: scan all subfamilies of the power set, filter union-closed
        // with the universe as a member, dedupe by canonical form
        for n in 1..=3usize {
            let full = full_mask(n) as u32;
            let mut oracle = BTreeSet::new();
            let mut labeled = 0u64;
            'outer: for fam_bits in 1u64..(1 << (1 << n)) {
                if (fam_bits >> full) & 1 == 0 {
                    continue;
                }
                let members: Vec<u64> =
                    (0..=full as u64).filter(|&m| (fam_bits >> m) & 1 == 1).collect();
                for &a in &members {
                    for &b in &members {
                        if (fam_bits >> (a | b)) & 1 == 0 {
                            continue 'outer;
                        }
                    }
                }
                labeled += 1;
                let f = SetFamily::from_masks(n, members).unwrap();
                oracle.insert(canonical_form(&f).unwrap());
            }
            if n == 2 {
                assert_eq!(labeled, 8);
            }
            let enumerated: BTreeSet<CanonicalForm> = enumerate_ucf(n, None)
                .unwrap()
                .iter()
                .map(|f| canonical_form(f.as_set_family()).unwrap())
                .collect();
            assert_eq!(enumerated, oracle, "n={n}");
            assert_eq!(enumerated.len(), enumerate_ucf(n, None).unwrap().len());
        }
    }

    #[test]
    fn enumerated_families_are_canonical_and_closed() {
        for n in 1..=4usize {
            let fams = enumerate_ucf(n, None).unwrap();
            let mut seen = BTreeSet::new();
            for f in &fams {
                assert!(f.contains(f.full_mask()));
                assert!(f.is_union_closed());
                let c = canonical_form(f.as_set_family()).unwrap();
                assert_eq!(c.masks.as_slice(), f.members(), "representative is canonical");
                assert!(seen.insert(c), "duplicate class at n={n}");
            }
        }
    }

    #[test]
    fn enumeration_member_cap() {
        let all = enumerate_ucf(4, None).unwrap();
        let capped = enumerate_ucf(4, Some(3)).unwrap();
        let expect: Vec<_> = all.iter().filter(|f| f.len() <= 3).collect();
        assert_eq!(capped.len(), expect.len());
        assert!(enumerate_ucf(6, None).is_err());
        assert!(enumerate_ucf(6, Some(4)).is_ok());
        assert!(enumerate_ucf(7, Some(3)).is_err());
    }

    #[test]
    fn sn_small_values() {
        for (n, num, den) in [(1usize, 1u64, 2u64), (2, 1, 2), (3, 4, 9)] {
            let rec = compute_sn(n, SearchMode::PrunedBranchAndBound).unwrap();
            assert_eq!(rec.sn, ratio_u64(num, den), "n={n}");
        }
        let rec3 = compute_sn(3, SearchMode::PrunedBranchAndBound).unwrap();
        let w31 = canonical_form(wojcik_family(3, 1).unwrap().as_set_family()).unwrap();
        assert_eq!(rec3.minimizers, vec![w31]);
    }

    #[test]
    fn sn_modes_agree_up_to_4() {
        for n in 1..=4usize {
            let naive = compute_sn(n, SearchMode::NaiveExhaustive).unwrap();
            let pruned = compute_sn(n, SearchMode::PrunedBranchAndBound).unwrap();
            assert_eq!(naive.sn, pruned.sn, "n={n}");
            assert_eq!(naive.minimizers, pruned.minimizers, "n={n}");
        }
        assert!(compute_sn(5, SearchMode::NaiveExhaustive).is_err());
        assert!(compute_sn(7, SearchMode::PrunedBranchAndBound).is_err());
    }

    #[test]
    fn sn_restricted_modes_agree() {
        for n in 2..=4usize {
            for cap in 1..=4usize {
                let naive =
                    compute_sn_restricted(n, SearchMode::NaiveExhaustive, 1, Some(cap)).unwrap();
                let pruned =
                    compute_sn_restricted(n, SearchMode::PrunedBranchAndBound, 1, Some(cap))
                        .unwrap();
                assert_eq!(naive.sn, pruned.sn, "n={n} cap={cap}");
                assert_eq!(naive.minimizers, pruned.minimizers, "n={n} cap={cap}");
            }
        }
        assert!(compute_sn_restricted(3, SearchMode::PrunedBranchAndBound, 1, Some(0)).is_err());
    }

    #[test]
    fn sn_parallel_is_identical() {
        for n in 2..=4usize {
            let single = compute_sn_with_jobs(n, SearchMode::PrunedBranchAndBound, 1).unwrap();
            let multi = compute_sn_with_jobs(n, SearchMode::PrunedBranchAndBound, 4).unwrap();
            assert_eq!(single, multi);
            let nsingle = compute_sn_with_jobs(n, SearchMode::NaiveExhaustive, 1).unwrap();
            let nmulti = compute_sn_with_jobs(n, SearchMode::NaiveExhaustive, 4).unwrap();
            assert_eq!(nsingle, nmulti);
        }
    }

    #[test]
    fn sn_sandwich_and_minimizer_certificates() {
        use crate::bounds::{check_density_lower, Verdict};
        for n in 1..=6usize {
            let rec = compute_sn(n, SearchMode::PrunedBranchAndBound).unwrap();
            assert!(rec.sn <= conjectured_sn(n as u64).unwrap(), "upper side at n={n}");
            for m in &rec.minimizers {
                let f = m.to_family();
                assert_eq!(f.density(), rec.sn);
                assert_eq!(
                    check_density_lower(&f).verdict,
                    Verdict::Proven,
                    "lower side certified on each minimizer, n={n}"
                );
            }
        }
    }

    #[test]
    fn sk_table_matches_search_results() {
        let table = crate::bounds::SkTable::builtin();
        for k in 1..=5usize {
            let rec = compute_sn(k, SearchMode::PrunedBranchAndBound).unwrap();
            assert_eq!(table.get(k), Some(&rec.sn), "table entry s_{k}");
        }
    }

    #[test]
    fn conjecture2_readings() {
        let r1 = verify_conjecture2(1).unwrap();
        assert!(r1.exists_reading && r1.forall_reading);

        let r2 = verify_conjecture2(2).unwrap();
        assert!(r2.exists_reading);
        assert!(!r2.forall_reading);
        // counterexamples: the full power set on two elements and {∅, U}
        let cex: Vec<Vec<u64>> = r2.counterexamples.iter().map(|c| c.masks.clone()).collect();
        assert_eq!(cex, vec![vec![0, 1, 2, 3], vec![0, 3]]);

        let r3 = verify_conjecture2(3).unwrap();
        assert!(r3.exists_reading && r3.forall_reading);

        for n in 1..=6 {
            let r = verify_conjecture2(n).unwrap();
            assert!(!r.record.minimizers.is_empty());
            if r.forall_reading {
                assert!(r.exists_reading, "forall implies exists at n={n}");
            }
        }
    }

    #[test]
    fn reimer_cap_values() {
        // incumbent 9/25 at n=5: largest m with m^25 <= 2^90 is 12
        assert_eq!(reimer_member_cap(5, 9, 25), 12);
        // incumbent 1/2 at n=2: m^2 <= 2^4
        assert_eq!(reimer_member_cap(2, 1, 2), 4);
    }

    #[test]
    fn sampler_is_deterministic_and_sound() {
        let a = sample_random_ucf(8, 50, 42, 0.3).unwrap();
        let b = sample_random_ucf(8, 50, 42, 0.3).unwrap();
        assert_eq!(a.len(), 50);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.members(), y.members());
        }
        let c = sample_random_ucf(8, 50, 43, 0.3).unwrap();
        assert!(a.iter().zip(&c).any(|(x, y)| x.members() != y.members()));

        for f in &a {
            assert!(f.is_union_closed());
            assert!(f.contains(f.full_mask()));
        }
    }

    #[test]
    fn sampled_families_pass_certified_checks() {
        for f in sample_random_ucf(8, 100, 42, 0.3).unwrap() {
            assert_eq!(check_reimer(&f).verdict, Verdict::Proven);
            assert_eq!(check_density_lower(&f).verdict, Verdict::Proven);
        }
    }

    #[test]
    fn sampler_parameter_validation() {
        assert!(sample_random_ucf(25, 1, 0, 0.3).is_err());
        assert!(sample_random_ucf(8, 0, 0, 0.3).is_err());
        assert!(sample_random_ucf(8, 1, 0, 1.5).is_err());
    }
}
