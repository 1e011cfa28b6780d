//! Exact rational scalars and their canonical string form.
//!
//! Every quantity in the crate is a [`Q`]. On the wire a rational is a
//! lowest-terms string `"p/q"` with the denominator omitted when it is 1.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision exact rational.
pub type Q = num_rational::BigRational;

/// `n/d` as a [`Q`]. Panics if `d == 0`.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a [`Q`].
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parse a canonical rational string.
///
/// Accepted: an optional leading `-`, ASCII digits, and optionally `/`
/// followed by a positive denominator, in lowest terms. Whitespace, a
/// leading `+`, signed or zero denominators, leading zeros and decimal
/// points are rejected.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let bad = |why: &str| Error::Parse(format!("malformed rational {s:?}: {why}"));
    let (num_part, den_part) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let digits = num_part.strip_prefix('-').unwrap_or(num_part);
    if !is_plain_digits(digits) {
        return Err(bad("numerator must be an integer"));
    }
    if num_part.starts_with('-') && digits == "0" {
        return Err(bad("negative zero"));
    }
    let numer = BigInt::from_str(num_part).map_err(|_| bad("numerator"))?;
    let denom = match den_part {
        None => BigInt::one(),
        Some(d) => {
            if !is_plain_digits(d) {
                return Err(bad("denominator must be a positive integer"));
            }
            let d = BigInt::from_str(d).map_err(|_| bad("denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            if d.is_one() {
                return Err(bad("denominator 1 must be omitted"));
            }
            d
        }
    };
    if !numer.gcd(&denom).is_one() {
        return Err(bad("not in lowest terms"));
    }
    Ok(Q::new_raw(numer, denom))
}

fn is_plain_digits(s: &str) -> bool {
    !s.is_empty()
        && s.bytes().all(|b| b.is_ascii_digit())
        && (s == "0" || !s.starts_with('0'))
}

/// Canonical string form, the inverse of [`parse_q`].
pub fn format_q(x: &Q) -> String {
    x.to_string()
}

/// Exact square root when `x` is the square of a nonnegative rational.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    if &(&n * &n) == x.numer() && &(&d * &d) == x.denom() {
        Some(Q::new(n, d))
    } else {
        None
    }
}

/// Round `x` to `digits` fractional decimal digits, half away from zero.
pub fn to_decimal(x: &Q, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * Q::from_integer(scale.clone());
    let rounded = (scaled + q(1, 2)).floor().to_integer();
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let negative = x.is_negative() && !rounded.is_zero();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_string());
    if digits > 0 {
        let frac = frac_part.to_string();
        out.push('.');
        out.extend(std::iter::repeat_n('0', digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Sign of `x` as -1, 0 or 1.
pub fn sign(x: &Q) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Newtype carrying a rational through serde as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QStr(pub Q);

impl fmt::Display for QStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serde adapter for `Q` fields: `#[serde(with = "crate::rational::serde_q")]`.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(de::Error::custom)
    }
}
