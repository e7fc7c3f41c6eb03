//! Exact rational scalars and lossless numeric ingestion.
//!
//! Coordinates arrive as decimal strings ("2.25", "1e-3") or rational
//! literals ("9/4") and are converted without rounding, so algebraic
//! coincidences constructed in the data survive into the polynomial layer.

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Exact rational scalar. `BigRational` keeps values canonical (reduced,
/// positive denominator) after every operation.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty numeral")]
    Empty,
    #[error("invalid numeral `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses a numeral into an exact rational.
///
/// Accepted forms: integers (`-3`), decimals (`2.25`), scientific notation
/// (`1.5e-4`), and rational literals (`p/q`). Every form converts exactly.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| ParseRationalError::Invalid(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    parse_decimal(s).ok_or_else(|| ParseRationalError::Invalid(s.to_string()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().ok()?;
            (&s[..pos], e)
        }
        None => (s, 0i64),
    };
    let (sign, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let joined = format!("{int_part}{frac_part}");
    let mut value = BigInt::from_str(if joined.is_empty() { "0" } else { &joined }).ok()?;
    if sign == Sign::Minus {
        value = -value;
    }
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let scale = ten.pow(shift.unsigned_abs() as u32);
    Some(if shift >= 0 {
        Rational::from_integer(value * scale)
    } else {
        Rational::new(value, scale)
    })
}

/// Exact conversion from a finite `f64` (every finite double is a dyadic
/// rational).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_float(x)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a scaled division when numerator/denominator
        // individually overflow f64.
        let s = r.to_string();
        s.split_once('/')
            .map(|(n, d)| n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN))
            .unwrap_or(f64::NAN)
    })
}

/// Renders `r` as the canonical "p/q" string ("p" when q = 1).
pub fn to_ratio_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical-form check: reduced and positive denominator.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && num::Integer::gcd(r.numer(), r.denom()).is_one()
}
