//! Certified instance checks for the known density bounds.
//!
//! Every verdict here is backed either by an exact big-integer comparison or
//! by a certified directed-rounding interval; floating point is never used to
//! decide anything. The transcendental inequalities are first transformed
//! into integer-power comparisons:
//!
//! - density lower bound `D(F) >= log2(n)/(2n)`  ⇔  `2^(2S) >= n^m`
//! - Reimer's bound `S/m >= log2(m)/2`           ⇔  `2^(2S) >= m^m`
//! - Corollary 2    `max_a|F_a| >= ½√(log2n/n)·m` ⇔  `2^(4·n·max²) >= n^(m²)`
//!
//! where `S = Σ|A|` and `m = |F|`. When the integer powers exceed the bit
//! budget, the comparison `a vs exp·log2(base)` is settled by dyadic
//! lower/upper bounds on `log2(base)` computed with directed rounding at
//! escalating precision (128/256/512 fraction bits). Powers of two are
//! compared exactly by exponent, which is what makes equality cases (for
//! example power-set families under Reimer's bound) detectable.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::family::UnionClosedFamily;
use crate::rational::{ratio_u64, Rational};

/// Bit budget per side for exact integer-power comparisons.
pub const DEFAULT_BUDGET_BITS: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("set is not a member of the family")]
    NotAMember,
    #[error("n = {0} is below the domain of this bound (needs n >= {1})")]
    BelowDomain(u64, u64),
    #[error("bad parameters: {0}")]
    BadParameters(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    Refuted,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proven => write!(f, "Proven"),
            Verdict::Refuted => write!(f, "Refuted"),
            Verdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// Result of a certified inequality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub verdict: Verdict,
    /// Human-readable description of the exact comparison performed.
    pub certificate: String,
    /// True when the underlying exact comparison found the two sides equal.
    pub equality: bool,
}

impl CheckOutcome {
    fn proven(certificate: String, equality: bool) -> Self {
        CheckOutcome {
            verdict: Verdict::Proven,
            certificate,
            equality,
        }
    }
    fn refuted(certificate: String) -> Self {
        CheckOutcome {
            verdict: Verdict::Refuted,
            certificate,
            equality: false,
        }
    }
    fn unknown(certificate: String) -> Self {
        CheckOutcome {
            verdict: Verdict::Unknown,
            certificate,
            equality: false,
        }
    }
}

/// Outcome of deciding `2^a >= base^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowCmp {
    GreaterEq { equality: bool, method: String },
    Less { method: String },
    Inconclusive { method: String },
}

/// Dyadic bounds `lo/2^frac <= log2(x) <= hi/2^frac` by the square-and-extract
/// recurrence with directed rounding. The floor chain under-approximates and
/// the ceil chain over-approximates unconditionally: each squaring step keeps
/// the invariant `log2(x) ⋛ acc + 2^-i · log2(mantissa/2^p)` in the matching
/// direction, and the residual term is in `[0, 2^-frac]`.
fn log2_bounds(x: u64, frac_bits: u32) -> (BigUint, BigUint) {
    debug_assert!(x >= 2 && !x.is_power_of_two());
    // Internal mantissa fraction bits: doubled so per-step rounding noise
    // stays below the extracted precision, plus enough headroom that the
    // initial mantissa x·2^(p-e) is exact for any 64-bit x.
    let p = 2 * frac_bits + 72;
    let e = 63 - x.leading_zeros(); // floor(log2 x)
    let m0 = BigUint::from(x) << (p - e); // exact: (x / 2^e) · 2^p, in [2^p, 2^(p+1))
    let one_p1 = BigUint::one() << (p + 1);

    // lower: floor everywhere
    let mut m = m0.clone();
    let mut acc_lo = BigUint::zero();
    for _ in 0..frac_bits {
        m = (&m * &m) >> p;
        acc_lo <<= 1;
        if m >= one_p1 {
            acc_lo |= BigUint::one();
            m >>= 1;
        }
    }

    // upper: ceil everywhere
    let mut m = m0;
    let mut acc_hi = BigUint::zero();
    let round_up = (BigUint::one() << p) - BigUint::one();
    for _ in 0..frac_bits {
        m = (&m * &m + &round_up) >> p;
        acc_hi <<= 1;
        if m >= one_p1 {
            acc_hi |= BigUint::one();
            m = (m + BigUint::one()) >> 1;
        }
    }

    let base = BigUint::from(e) << frac_bits;
    (&base + acc_lo, base + acc_hi + BigUint::one())
}

/// Decide `2^a >= base^exp` with exact certification.
///
/// Powers of two compare by exponent; otherwise the sides are materialized as
/// big integers while they fit in `budget_bits`, and past that the comparison
/// `a vs exp·log2(base)` is settled by interval bounds on `log2(base)` at
/// 128, then 256, then 512 fraction bits. Equality is impossible on the
/// interval path (`log2` of a non-power-of-two is irrational), so `equality`
/// is exact whenever reported.
pub fn certified_pow2_ge(a: u128, base: u64, exp: u128, budget_bits: u64) -> PowCmp {
    if exp == 0 || base == 1 {
        return PowCmp::GreaterEq {
            equality: a == 0,
            method: "trivial: right side is 1".into(),
        };
    }
    if base == 0 {
        return PowCmp::GreaterEq {
            equality: false,
            method: "trivial: right side is 0".into(),
        };
    }
    if base.is_power_of_two() {
        let t = base.ilog2() as u128;
        let rhs = t * exp;
        let method = format!("exponent comparison: {a} vs {t}·{exp} = {rhs}");
        return if a >= rhs {
            PowCmp::GreaterEq {
                equality: a == rhs,
                method,
            }
        } else {
            PowCmp::Less { method }
        };
    }
    let base_bits = 64 - base.leading_zeros() as u128;
    if a < budget_bits as u128 && exp * base_bits <= budget_bits as u128 {
        let lhs = BigUint::one() << (a as usize);
        let rhs = BigUint::from(base).pow(exp as u32);
        let method = format!("exact big-integer comparison of 2^{a} vs {base}^{exp}");
        return match lhs.cmp(&rhs) {
            std::cmp::Ordering::Less => PowCmp::Less { method },
            std::cmp::Ordering::Equal => PowCmp::GreaterEq {
                equality: true,
                method,
            },
            std::cmp::Ordering::Greater => PowCmp::GreaterEq {
                equality: false,
                method,
            },
        };
    }
    for frac_bits in [128u32, 256, 512] {
        let (lo, hi) = log2_bounds(base, frac_bits);
        let lhs = BigUint::from(a) << frac_bits;
        let exp_big = BigUint::from(exp);
        let method = format!(
            "directed-rounding interval: {a} vs {exp}·log2({base}) at {frac_bits} fraction bits"
        );
        if lhs >= &exp_big * &hi {
            return PowCmp::GreaterEq {
                equality: false,
                method,
            };
        }
        if lhs < exp_big * lo {
            return PowCmp::Less { method };
        }
    }
    PowCmp::Inconclusive {
        method: format!(
            "budget of {budget_bits} bits exhausted and interval still straddles at 512 fraction bits"
        ),
    }
}

fn outcome_from_pow(context: &str, cmp: PowCmp) -> CheckOutcome {
    match cmp {
        PowCmp::GreaterEq { equality, method } => {
            let rel = if equality { "holds with equality" } else { "holds" };
            CheckOutcome::proven(format!("{context}: {rel}; {method}"), equality)
        }
        PowCmp::Less { method } => CheckOutcome::refuted(format!("{context}: fails; {method}")),
        PowCmp::Inconclusive { method } => {
            CheckOutcome::unknown(format!("{context}: undecided; {method}"))
        }
    }
}

/// Certify `D(F) >= log2(n)/(2n)` on a concrete family, via `2^(2S) >= n^m`.
pub fn check_density_lower(family: &UnionClosedFamily) -> CheckOutcome {
    let n = family.n() as u64;
    let m = family.len() as u128;
    let s = family.size_sum() as u128;
    if n == 1 {
        return CheckOutcome::proven(
            "density lower bound at n=1 is 0; every density is positive".into(),
            false,
        );
    }
    let context = format!("D(F) >= log2(n)/(2n) iff 2^(2S) >= n^m with S={s}, n={n}, m={m}");
    outcome_from_pow(&context, certified_pow2_ge(2 * s, n, m, DEFAULT_BUDGET_BITS))
}

/// Certify Reimer's average-set-size bound `S/m >= log2(m)/2`, via
/// `2^(2S) >= m^m`. Power-set families attain exact equality.
pub fn check_reimer(family: &UnionClosedFamily) -> CheckOutcome {
    let m = family.len() as u64;
    let s = family.size_sum() as u128;
    if m == 1 {
        return CheckOutcome::proven(
            "single-member family: log2(1)/2 = 0 and S >= 0".into(),
            family.size_sum() == 0,
        );
    }
    let context = format!("S/m >= log2(m)/2 iff 2^(2S) >= m^m with S={s}, m={m}");
    outcome_from_pow(
        &context,
        certified_pow2_ge(2 * s, m, m as u128, DEFAULT_BUDGET_BITS),
    )
}

/// Certify the abundant-element bound for `n >= 16`:
/// `max_a |F_a| >= ½·√(log2(n)/n)·|F|`, via `2^(4·n·max²) >= n^(m²)`.
pub fn check_corollary2(family: &UnionClosedFamily) -> Result<CheckOutcome, BoundsError> {
    let n = family.n() as u64;
    if n < 16 {
        return Err(BoundsError::BelowDomain(n, 16));
    }
    let m = family.len() as u128;
    let max = family.abundance_profile().max() as u128;
    let a = 4 * n as u128 * max * max;
    let context = format!(
        "max|F_a| >= sqrt(log2(n)/n)·m/2 iff 2^(4·n·max²) >= n^(m²) with max={max}, n={n}, m={m}"
    );
    Ok(outcome_from_pow(
        &context,
        certified_pow2_ge(a, n, m * m, DEFAULT_BUDGET_BITS),
    ))
}

/// Table of known exact minimum densities `s_k`, used by [`check_theorem1`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkTable {
    entries: BTreeMap<usize, Rational>,
}

impl SkTable {
    /// The classical hand-verifiable values: `s_1 = s_2 = 1/2`, `s_3 = 4/9`.
    pub fn classical() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(1, ratio_u64(1, 2));
        entries.insert(2, ratio_u64(1, 2));
        entries.insert(3, ratio_u64(4, 9));
        SkTable { entries }
    }

    /// Classical values plus the two produced by this crate's exhaustive
    /// search: `s_4 = 2/5` and `s_5 = 9/25`. The tests re-derive both from
    /// [`crate::search::compute_sn`]; there are no extrapolated entries.
    pub fn builtin() -> Self {
        let mut t = Self::classical();
        t.insert(4, ratio_u64(2, 5));
        t.insert(5, ratio_u64(9, 25));
        t
    }

    pub fn insert(&mut self, k: usize, sk: Rational) {
        self.entries.insert(k, sk);
    }

    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.entries.get(&k)
    }

    pub fn max_k(&self) -> Option<usize> {
        self.entries.keys().next_back().copied()
    }
}

/// Certify `Σ_{a∈S} |F_a| >= k·s_k·|F|` for a member `S` with `|S| = k`, by
/// exact cross-multiplication against the table value of `s_k`. Unknown when
/// the table has no entry for `k`.
pub fn check_theorem1(
    family: &UnionClosedFamily,
    member: u64,
    table: &SkTable,
) -> Result<CheckOutcome, BoundsError> {
    if !family.contains(member) {
        return Err(BoundsError::NotAMember);
    }
    let k = member.count_ones() as usize;
    let Some(sk) = table.get(k) else {
        return Ok(CheckOutcome::unknown(format!(
            "no table entry for s_{k}; comparison not attempted"
        )));
    };
    let profile = family.abundance_profile();
    let lhs: u64 = (0..family.n())
        .filter(|&a| (member >> a) & 1 == 1)
        .map(|a| profile.counts[a])
        .sum();
    let m = family.len() as u64;
    // lhs >= k·(p/q)·m  ⇔  lhs·q >= k·p·m
    let left = BigInt::from(lhs) * sk.denom();
    let right = BigInt::from(k as u64) * sk.numer() * BigInt::from(m);
    let certificate = format!(
        "Σ_(a∈S)|F_a| = {lhs} vs k·s_k·|F| = {k}·{}·{m}: exact cross-multiplication {left} vs {right}",
        crate::rational::ratio_string(sk),
    );
    Ok(match left.cmp(&right) {
        std::cmp::Ordering::Less => CheckOutcome::refuted(certificate),
        std::cmp::Ordering::Equal => CheckOutcome::proven(certificate, true),
        std::cmp::Ordering::Greater => CheckOutcome::proven(certificate, false),
    })
}

pub fn floor_log2(n: u64) -> u32 {
    assert!(n >= 1);
    n.ilog2()
}

pub fn ceil_log2(n: u64) -> u32 {
    assert!(n >= 1);
    if n.is_power_of_two() {
        n.ilog2()
    } else {
        n.ilog2() + 1
    }
}

/// Closed-form density of the `wojcik_family(n, k)` construction,
/// `(k·2^(k-1) + n) / (n·(2^k + 1))` for `k < n`, and `1/2` for `k = n`
/// (the power set). Exact rational; no family is materialized.
pub fn wojcik_density(n: u64, k: u32) -> Result<Rational, BoundsError> {
    if n == 0 || k as u64 > n {
        return Err(BoundsError::BadParameters(format!(
            "need 0 <= k <= n with n >= 1, got n={n} k={k}"
        )));
    }
    if k as u64 == n {
        return Ok(ratio_u64(1, 2));
    }
    let two_k = BigInt::one() << k;
    let half_k_sum = if k == 0 {
        BigInt::zero()
    } else {
        BigInt::from(k) << (k - 1)
    };
    let num = half_k_sum + BigInt::from(n);
    let den = BigInt::from(n) * (two_k + BigInt::one());
    Ok(Rational::new(num, den))
}

/// Density upper bound from the `k = ceil(log2 n)` construction. For `n = 1`
/// this is `1/2`, the density of `{∅, {0}}`.
pub fn corollary1_upper(n: u64) -> Result<Rational, BoundsError> {
    if n == 0 {
        return Err(BoundsError::BadParameters("n must be >= 1".into()));
    }
    if n == 1 {
        return Ok(ratio_u64(1, 2));
    }
    wojcik_density(n, ceil_log2(n))
}

/// The conjectured minimum density: the smaller of the two candidate
/// constructions at `k = floor(log2 n)` and `k = ceil(log2 n)`.
pub fn conjectured_sn(n: u64) -> Result<Rational, BoundsError> {
    if n == 0 {
        return Err(BoundsError::BadParameters("n must be >= 1".into()));
    }
    let lo = wojcik_density(n, floor_log2(n))?;
    let hi = wojcik_density(n, ceil_log2(n))?;
    Ok(lo.min(hi))
}

/// `½·√(log2(n)/n)`, the abundant-element threshold, defined for `n >= 16`.
/// Real approximation only; exact checking goes through [`check_corollary2`].
pub fn corollary2_threshold(n: u64) -> Result<f64, BoundsError> {
    if n < 16 {
        return Err(BoundsError::BelowDomain(n, 16));
    }
    Ok(0.5 * ((n as f64).log2() / n as f64).sqrt())
}

/// Forward map `f(x) = 2x²/log2(x)`, strictly increasing on `[4, ∞)` with
/// `f(4) = 16`.
pub fn g_forward(x: f64) -> f64 {
    2.0 * x * x / x.log2()
}

/// Inverse of [`g_forward`]: the unique `x ∈ [4, ∞)` with `2x²/log2(x) = n`,
/// by bisection to relative tolerance 1e-12. Satisfies
/// `g(n)/n >= ½·√(log2(n)/n)`.
pub fn g_inverse(n: f64) -> Result<f64, BoundsError> {
    if n.is_nan() || n < 16.0 {
        return Err(BoundsError::BelowDomain(n as u64, 16));
    }
    let (mut lo, mut hi) = (4.0f64, n.max(4.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g_forward(mid) < n {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-12 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Exact check of the proof-step inequality `(n+1)^m <= 4·n^m` for
/// `1 <= m <= n` (the `((n+1)/n)^m <= e <= 4` step in integer form).
pub fn proofstep_e_inequality(n: u64, m: u64) -> Result<CheckOutcome, BoundsError> {
    if m == 0 || m > n {
        return Err(BoundsError::BadParameters(format!(
            "needs 1 <= m <= n, got n={n} m={m}"
        )));
    }
    let lhs = BigUint::from(n + 1).pow(m as u32);
    let rhs = BigUint::from(n).pow(m as u32) << 2;
    let certificate = format!("(n+1)^m <= 4·n^m with n={n}, m={m}: exact big integers");
    Ok(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => CheckOutcome::refuted(certificate),
        std::cmp::Ordering::Equal => CheckOutcome::proven(certificate, true),
        std::cmp::Ordering::Less => CheckOutcome::proven(certificate, false),
    })
}

/// One row of the bounds report: the certified lower bound, the two candidate
/// upper bounds, and (for `n >= 16`) the abundant-element columns.
#[derive(Debug, Clone)]
pub struct BoundTable {
    pub n: u64,
    /// `log2(n)/(2n)` as a real approximation (report column only).
    pub theorem3_lower: f64,
    pub corollary1_upper_ceil: Rational,
    pub conjectured_sn: Rational,
    pub corollary2_threshold: Option<f64>,
    pub g_of_n: Option<f64>,
}

impl BoundTable {
    pub fn new(n: u64) -> Result<Self, BoundsError> {
        if n == 0 {
            return Err(BoundsError::BadParameters("n must be >= 1".into()));
        }
        Ok(BoundTable {
            n,
            theorem3_lower: (n as f64).log2() / (2.0 * n as f64),
            corollary1_upper_ceil: corollary1_upper(n)?,
            conjectured_sn: conjectured_sn(n)?,
            corollary2_threshold: corollary2_threshold(n).ok(),
            g_of_n: g_inverse(n as f64).ok(),
        })
    }

    /// Certify `log2(n)/(2n) <= conjectured_sn(n)` exactly:
    /// with `conjectured_sn = p/q` this is `2^(2·n·p) >= n^q`.
    pub fn certify_consistency(&self) -> CheckOutcome {
        let p = self
            .conjectured_sn
            .numer()
            .to_u128()
            .expect("conjectured s_n numerator fits u128");
        let q = self
            .conjectured_sn
            .denom()
            .to_u128()
            .expect("conjectured s_n denominator fits u128");
        if self.n == 1 {
            return CheckOutcome::proven("lower bound at n=1 is 0".into(), false);
        }
        let context = format!(
            "log2(n)/(2n) <= {p}/{q} iff 2^(2·n·p) >= n^q with n={}",
            self.n
        );
        outcome_from_pow(
            &context,
            certified_pow2_ge(2 * self.n as u128 * p, self.n, q, DEFAULT_BUDGET_BITS),
        )
    }
}
