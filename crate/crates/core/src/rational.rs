//! Exact rational values.
//!
//! Densities and minimum densities are ratios of machine-sized integers, but
//! everything downstream (cross-multiplied theorem checks, minimizer
//! comparisons) must stay exact, so they are carried as reduced
//! arbitrary-precision fractions.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Reduced arbitrary-precision fraction with positive denominator.
/// `Ratio::new` normalizes, so the invariants hold by construction.
pub type Rational = num_rational::BigRational;

/// Build a rational from unsigned parts. Panics on zero denominator.
pub fn ratio_u64(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Render as `"p/q"` (or just `"p"` for integers).
pub fn ratio_string(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal approximation with `sig` significant digits, suitable for report
/// columns next to the exact `p/q` form. Exact scaled integer division with
/// round-half-up in the last digit; never goes through `f64`.
pub fn decimal_approx(r: &Rational, sig: usize) -> String {
    assert!(sig >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();

    // Position of the leading digit: smallest e with |r| < 10^(e+1).
    let ten = BigInt::from(10);
    let mut exp: i64 = 0;
    let mut hi = num.clone();
    let mut lo = den.clone();
    while hi >= lo.clone() * &ten {
        lo *= &ten;
        exp += 1;
    }
    while hi < lo {
        hi *= &ten;
        exp -= 1;
    }
    // digits = round(|r| * 10^(sig-1-exp)) rendered as `sig` digits.
    let shift = sig as i64 - 1 - exp;
    let (mut scaled_num, mut scaled_den) = (num, den);
    if shift >= 0 {
        scaled_num *= ten.pow(shift as u32);
    } else {
        scaled_den *= ten.pow((-shift) as u32);
    }
    let mut digits = (&scaled_num * 2u32 + &scaled_den) / (&scaled_den * 2u32);
    if digits >= ten.pow(sig as u32) {
        // rounding carried over, e.g. 0.999.. -> 1.00..
        digits /= &ten;
        exp += 1;
    }
    let ds = digits.to_string();
    debug_assert_eq!(ds.len(), sig);

    let sign = if neg { "-" } else { "" };
    if exp >= sig as i64 || exp < -4 {
        // scientific form for extreme magnitudes
        let mantissa = if sig == 1 {
            ds.clone()
        } else {
            format!("{}.{}", &ds[..1], &ds[1..])
        };
        format!("{sign}{mantissa}e{exp}")
    } else if exp >= 0 {
        let k = (exp + 1) as usize;
        format!("{sign}{}.{}", &ds[..k], &ds[k..])
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        format!("{sign}0.{zeros}{ds}")
    }
}

/// `f64` approximation of a rational (for report columns only, never verdicts).
pub fn to_f64(r: &Rational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_string_forms() {
        assert_eq!(ratio_string(&ratio_u64(4, 9)), "4/9");
        assert_eq!(ratio_string(&ratio_u64(8, 20)), "2/5");
        assert_eq!(ratio_string(&ratio_u64(3, 3)), "1");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_approx(&ratio_u64(4, 9), 12), "0.444444444444");
        assert_eq!(decimal_approx(&ratio_u64(1, 2), 12), "0.500000000000");
        assert_eq!(decimal_approx(&ratio_u64(1, 1), 12), "1.00000000000");
        assert_eq!(decimal_approx(&ratio_u64(2, 3), 3), "0.667");
        assert_eq!(decimal_approx(&ratio_u64(999, 1000), 2), "1.0");
        assert_eq!(decimal_approx(&ratio_u64(6144, 1049600), 6), "0.00585366");
        assert_eq!(decimal_approx(&ratio_u64(0, 5), 12), "0");
    }

    #[test]
    fn decimal_scientific_for_tiny_values() {
        let r = Rational::new(1.into(), 100_000_000.into());
        assert_eq!(decimal_approx(&r, 3), "1.00e-8");
    }
}
