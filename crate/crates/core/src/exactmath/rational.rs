//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. This module adds the parsing
//! and rendering conventions used throughout the crate.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ExactError;

pub type Rational = num_rational::BigRational;

/// `num/den` as a rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or a plain integer. Decimal notation is rejected so that
/// no value silently loses precision.
pub fn parse_rational(text: &str) -> Result<Rational, ExactError> {
    let s = text.trim();
    let bad = || ExactError::Parse(text.to_string());
    if s.is_empty() || s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Canonical `p/q` rendering (integers without the `/1`).
pub fn rational_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Decimal rendering with `digits` fractional digits, rounded half away from
/// zero. Computed with integer arithmetic only, so it is deterministic.
pub fn to_decimal(r: &Rational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * Rational::from_integer(scale.clone());
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = rem * 2;
    let rounded = if &twice >= scaled.denom() { q + 1 } else { q };
    let (whole, frac) = rounded.div_rem(&scale);
    let negative = r.is_negative() && !(whole.is_zero() && frac.is_zero());
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{whole}");
    }
    let frac = frac.to_string();
    format!("{sign}{whole}.{}{frac}", "0".repeat(digits - frac.len()))
}

/// Lossy conversion used only for rendering (SVG coordinates).
pub fn to_f64(r: &Rational) -> f64 {
    to_decimal(r, 17).parse().unwrap_or(f64::NAN)
}

pub fn sign_of(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Integer power allowing negative exponents. Errors on `0^negative`.
pub fn pow_i(base: &Rational, exp: i64) -> Result<Rational, ExactError> {
    if exp < 0 && base.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    let magnitude = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    Ok(if exp < 0 { magnitude.recip() } else { magnitude })
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (Stern–Brocot descent).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = lo.floor();
    if fl == *lo {
        return fl;
    }
    if fl.clone() + Rational::one() <= *hi {
        return fl + Rational::one();
    }
    // lo and hi share the integer part; recurse on the reciprocals of the
    // fractional parts.
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    fl + simplest_positive(&hi_frac.recip(), &lo_frac.recip()).recip()
}
