//! Exact rationals and closed rational intervals.
//!
//! Every coordinate in the crate is a [`Rational`]: an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. Iterating a
//! piecewise-linear map multiplies slopes and denominators, so nothing here
//! ever touches floating point.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// `numer / denom` as a [`Rational`]. Panics if `denom == 0`.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`, reducing to lowest terms.
pub fn parse_rational(field: &str, text: &str) -> Result<Rational> {
    let (numer, denom) = split_fraction(field, text)?;
    if denom.is_zero() {
        return Err(Error::parse(field, format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Parses the canonical form: lowest terms, positive denominator, and no
/// explicit `/1` on integers.
pub fn parse_canonical(field: &str, text: &str) -> Result<Rational> {
    let (numer, denom) = split_fraction(field, text)?;
    if !denom.is_positive() {
        return Err(Error::parse(
            field,
            format!("denominator of {text:?} must be positive"),
        ));
    }
    if !numer.gcd(&denom).is_one() {
        return Err(Error::parse(
            field,
            format!("{text:?} is not in lowest terms"),
        ));
    }
    if denom.is_one() && text.contains('/') {
        return Err(Error::parse(
            field,
            format!("{text:?} should be written without /1"),
        ));
    }
    Ok(Rational::new_raw(numer, denom))
}

fn split_fraction(field: &str, text: &str) -> Result<(BigInt, BigInt)> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        let ok = {
            let digits = s.strip_prefix('-').unwrap_or(s);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !ok {
            return Err(Error::parse(
                field,
                format!("{text:?} is not a rational p/q"),
            ));
        }
        s.parse::<BigInt>()
            .map_err(|e| Error::parse(field, format!("{text:?}: {e}")))
    };
    match text.split_once('/') {
        Some((p, q)) => Ok((parse_int(p)?, parse_int(q)?)),
        None => Ok((parse_int(text)?, BigInt::one())),
    }
}

/// Decimal rendering with `digits` significant digits, trailing zeros trimmed.
/// Only used for plots; no computation goes through it.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    let v = to_f64(value);
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    value.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing a rational as its canonical `"p/q"` string.
pub mod text {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_canonical("rational", &raw).map_err(serde::de::Error::custom)
    }
}

/// A closed interval `[lo, hi]` with `lo <= hi`. Degenerate intervals are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("interval [{lo}, {hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    /// The closed interval spanned by two endpoints in either order.
    pub fn spanning(a: Rational, b: Rational) -> Self {
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn point(x: Rational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    /// Intersection, if non-empty.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then_some(Interval { lo, hi })
    }

    /// Parses `"lo,hi"` or `"[lo, hi]"`.
    pub fn parse(field: &str, text: &str) -> Result<Self> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let (lo, hi) = inner
            .split_once(',')
            .ok_or_else(|| Error::parse(field, format!("{text:?} is not an interval lo,hi")))?;
        let lo = parse_rational(field, lo)?;
        let hi = parse_rational(field, hi)?;
        Interval::new(lo, hi).map_err(|e| Error::parse(field, e.to_string()))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.lo.to_string(), self.hi.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_canonical("interval", &lo).map_err(serde::de::Error::custom)?;
        let hi = parse_canonical("interval", &hi).map_err(serde::de::Error::custom)?;
        Interval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}
