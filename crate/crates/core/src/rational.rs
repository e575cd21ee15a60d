//! Exact rationals plus the two text forms used throughout the crate: lossless
//! `p/q` strings and correctly rounded decimals.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{PzfError, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `base^exp` with the convention `0^0 = 1`.
pub fn pow(base: &Rational, exp: usize) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    num_traits::pow(base.clone(), exp)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Serializes as `p/q` (always with a denominator, `q > 0`).
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q`, a bare integer `p`, or a finite decimal such as `2.625`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || PzfError::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let mut numer = BigInt::from_str(&digits).map_err(|_| bad())?;
        if negative {
            numer = -numer;
        }
        let denom = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rational::new(numer, denom));
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

/// How many digits a rendered decimal carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Significant digits.
    Significant(u32),
    /// Digits after the decimal point.
    Places(u32),
}

impl Default for Precision {
    fn default() -> Self {
        Precision::Significant(6)
    }
}

impl Precision {
    pub fn digits(self) -> u32 {
        match self {
            Precision::Significant(d) | Precision::Places(d) => d,
        }
    }
}

/// Rounds `numer / denom` (denom > 0) to the nearest integer, ties to even.
fn round_half_even(numer: &BigInt, denom: &BigInt) -> BigInt {
    let (q, r) = numer.div_mod_floor(denom);
    let twice: BigInt = &r * 2u32;
    match twice.cmp(denom) {
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Greater => q + 1,
        std::cmp::Ordering::Equal => {
            if q.is_even() {
                q
            } else {
                q + 1
            }
        }
    }
}

/// Number of decimal digits in the integer part of `|r|`, or the negated count of
/// leading zeros after the point when `|r| < 1`; i.e. `floor(log10 |r|) + 1`.
fn decimal_exponent(r: &Rational) -> i64 {
    let abs = r.abs();
    let ten = BigInt::from(10);
    if abs >= Rational::one() {
        let whole = abs.to_integer();
        whole.to_string().len() as i64
    } else {
        let mut e = 0i64;
        let mut scaled = abs;
        while scaled < Rational::from_integer(BigInt::one()) {
            scaled *= Rational::from_integer(ten.clone());
            e -= 1;
        }
        e + 1
    }
}

/// Renders `r` as a decimal string, rounding half-to-even at the requested precision.
/// Significant-digit output drops trailing zeros; fixed-place output keeps them.
pub fn render_decimal(r: &Rational, precision: Precision) -> String {
    if r.is_zero() {
        return match precision {
            Precision::Places(p) if p > 0 => format!("0.{}", "0".repeat(p as usize)),
            _ => "0".to_string(),
        };
    }
    let places: i64 = match precision {
        Precision::Places(p) => p as i64,
        Precision::Significant(d) => d.max(1) as i64 - decimal_exponent(r),
    };
    let negative = r.is_negative();
    let abs = r.abs();
    let (numer, denom) = if places >= 0 {
        (
            abs.numer() * num_traits::pow(BigInt::from(10), places as usize),
            abs.denom().clone(),
        )
    } else {
        (
            abs.numer().clone(),
            abs.denom() * num_traits::pow(BigInt::from(10), (-places) as usize),
        )
    };
    let mut rounded = round_half_even(&numer, &denom);
    if places < 0 {
        rounded *= num_traits::pow(BigInt::from(10), (-places) as usize);
    }
    let mut digits = rounded.to_string();
    let mut out = String::new();
    if negative && rounded.sign() != Sign::NoSign {
        out.push('-');
    }
    if places <= 0 {
        out.push_str(&digits);
        return out;
    }
    let places = places as usize;
    if digits.len() <= places {
        digits = format!("{}{}", "0".repeat(places + 1 - digits.len()), digits);
    }
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let frac_part = match precision {
        Precision::Significant(_) => frac_part.trim_end_matches('0'),
        Precision::Places(_) => frac_part,
    };
    out.push_str(int_part);
    if !frac_part.is_empty() {
        out.push('.');
        out.push_str(frac_part);
    }
    out
}

/// `true` when `|a - b| <= tol`, evaluated exactly.
pub fn within(a: &Rational, b: &Rational, tol: &Rational) -> bool {
    (a - b).abs() <= *tol
}

/// `10^-k` as an exact rational.
pub fn ten_pow_neg(k: usize) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(10), k))
}
