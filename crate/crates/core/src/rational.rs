//! Exact rational helpers shared by the solver and the oracles.
//!
//! Solver thresholds use [`Rational`] (`Ratio<i128>`); polytope and LP code
//! uses [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i128>;

/// Parses `"p/q"`, `"p"` or a plain decimal like `"0.05"`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    if let Some((num, den)) = text.split_once('/') {
        let num: i128 = num.trim().parse().map_err(|_| bad())?;
        let den: i128 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = text.split_once('.') {
        if frac.is_empty() || frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int: i128 = if int.is_empty() || int == "-" {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let den = 10i128.pow(frac.len() as u32);
        let frac: i128 = frac.parse().map_err(|_| bad())?;
        let num = int.abs() * den + frac;
        return Ok(Rational::new(if negative { -num } else { num }, den));
    }
    let num: i128 = text.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(num))
}

/// Formats as `"p/q"` (or `"p"` for integers).
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// `value >= threshold` for a non-negative integer value.
#[inline]
pub fn meets(value: u64, threshold: &Rational) -> bool {
    // threshold = n/d with d > 0
    (value as i128) * threshold.denom() >= *threshold.numer()
}

/// `⌈x⌉` for a rational, as an integer.
pub fn ceil_int(x: &Rational) -> i128 {
    x.ceil().to_integer()
}

/// `max(1, ⌈ratio · count⌉)`: the size thresholds used by the solver.
pub fn ceil_at_least_one(ratio: &Rational, count: usize) -> usize {
    let product = ratio * Rational::from_integer(count as i128);
    ceil_int(&product).max(1) as usize
}

/// True iff `count >= ratio · total` exactly.
pub fn at_least_fraction(count: usize, ratio: &Rational, total: usize) -> bool {
    Rational::from_integer(count as i128) >= ratio * Rational::from_integer(total as i128)
}

pub fn to_big(value: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
}

/// Largest power exponent we are willing to evaluate exactly.
const EXACT_POWER_BITS: u64 = 1 << 16;

/// `⌊log_base n⌋` for `base > 1` and `n >= 1`.
///
/// Uses exact power comparisons when the powers stay small; for bases very
/// close to one (the solver's signature base) the exponent runs into the
/// millions and the value is obtained from `ln n / ln base` in `f64`, with
/// `ln base` computed through `ln_1p` to keep full relative precision.
pub fn floor_log(base: &Rational, n: u64) -> i64 {
    assert!(*base > Rational::one(), "logarithm base must exceed 1");
    assert!(n >= 1, "logarithm of zero");
    if n == 1 {
        return 0;
    }
    let ln_base = ln_rational(base);
    let estimate = ((n as f64).ln() / ln_base).floor() as i64;
    let bits = (bit_len(*base.numer()) + bit_len(*base.denom())) as u64;
    if (estimate.max(1) as u64).saturating_mul(bits) > EXACT_POWER_BITS {
        return estimate;
    }
    // exact refinement: find s with base^s <= n < base^(s+1)
    let big_base = to_big(base);
    let target = BigRational::from_integer(BigInt::from(n));
    let mut s = estimate.max(0);
    let mut power = pow(&big_base, s as u64);
    while power > target {
        s -= 1;
        power /= &big_base;
    }
    loop {
        let next = &power * &big_base;
        if next > target {
            return s;
        }
        power = next;
        s += 1;
    }
}

/// `⌈log_base n⌉` for `base > 1` and `n >= 1`.
pub fn ceil_log(base: &Rational, n: u64) -> i64 {
    let floor = floor_log(base, n);
    if n == 1 {
        return 0;
    }
    // base^floor == n is only possible for an integral base
    if base.is_integer() {
        let b = *base.numer();
        if let Some(p) = b.checked_pow(floor as u32) {
            if p == n as i128 {
                return floor;
            }
        }
    }
    floor + 1
}

fn bit_len(v: i128) -> u32 {
    128 - v.unsigned_abs().leading_zeros()
}

fn ln_rational(value: &Rational) -> f64 {
    // ln(p/q) = ln_1p((p - q)/q), precise for p/q near 1
    let diff = value.numer() - value.denom();
    let delta = diff as f64 / *value.denom() as f64;
    delta.ln_1p()
}

fn pow(base: &BigRational, exp: u64) -> BigRational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

pub fn big_to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parses `"p/q"` into a [`BigRational`].
pub fn parse_big(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

pub fn format_big(value: &BigRational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/20").unwrap(), Rational::new(1, 20));
        assert_eq!(parse_rational("0.05").unwrap(), Rational::new(1, 20));
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("-1/4").unwrap(), Rational::new(-1, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&Rational::new(2, 40)), "1/20");
    }

    #[test]
    fn floor_log_exact_powers() {
        let base = Rational::new(3, 2);
        // (3/2)^3 = 3.375 <= 4 < 5.0625
        assert_eq!(floor_log(&base, 4), 3);
        assert_eq!(floor_log(&base, 1), 0);
        assert_eq!(floor_log(&base, 2), 1);
        // (3/2)^2 = 2.25
        assert_eq!(floor_log(&base, 3), 2);
        assert_eq!(floor_log(&Rational::from_integer(2), 8), 3);
        assert_eq!(ceil_log(&Rational::from_integer(2), 8), 3);
        assert_eq!(ceil_log(&Rational::from_integer(2), 9), 4);
        assert_eq!(ceil_log(&base, 4), 4);
    }

    #[test]
    fn floor_log_near_one_agrees_with_floats() {
        let base = Rational::new(41_331_200, 41_331_199);
        let s = floor_log(&base, 2);
        let expected = (2f64.ln() / (1.0 / 41_331_199f64).ln_1p()).floor() as i64;
        assert_eq!(s, expected);
        assert!(floor_log(&base, 3) > s);
    }

    #[test]
    fn threshold_helpers() {
        let eps = Rational::new(1, 20);
        assert_eq!(ceil_at_least_one(&eps, 10), 1);
        assert_eq!(ceil_at_least_one(&eps, 21), 2);
        assert_eq!(ceil_at_least_one(&eps, 0), 1);
        assert!(meets(7, &Rational::from_integer(7)));
        assert!(!meets(6, &Rational::new(13, 2)));
        assert!(at_least_fraction(1, &Rational::new(1, 80), 4));
    }
}
