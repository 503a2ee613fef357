//! The Sharkovsky ordering of the positive integers, extended by the class `2^inf`.
//!
//! ```text
//! 1 < 2 < 4 < 8 < ... < 2^inf < ... < 9·4 < 7·4 < 5·4 < 3·4 < ... < 9·2 < ... < 3·2 < ... < 9 < 7 < 5 < 3
//! ```
//!
//! Write `n = 2^i · q` with `q` odd. Powers of two (`q = 1`) come first in
//! increasing order, then the virtual class `2^inf`, then the remaining numbers
//! grouped by decreasing valuation `i`, each group ordered by decreasing odd
//! part. [`SharkClass`] implements [`Ord`] with exactly this rule, so the
//! standard comparison operators read as `≺`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A point of the Sharkovsky order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SharkClass {
    Finite(u64),
    TwoInf,
}

impl SharkClass {
    pub fn finite(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("Sharkovsky classes start at 1".into()));
        }
        Ok(SharkClass::Finite(n))
    }

    pub fn as_finite(self) -> Option<u64> {
        match self {
            SharkClass::Finite(n) => Some(n),
            SharkClass::TwoInf => None,
        }
    }

    /// `true` for `1, 2, 4, …` and for `2^inf`.
    pub fn is_power_of_two_class(self) -> bool {
        match self {
            SharkClass::Finite(n) => n.is_power_of_two(),
            SharkClass::TwoInf => true,
        }
    }
}

/// `n = 2^valuation · odd_part` with `odd_part` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DyadicDecomposition {
    pub valuation: u32,
    pub odd_part: u64,
}

impl DyadicDecomposition {
    pub fn value(self) -> u64 {
        self.odd_part << self.valuation
    }
}

pub fn decompose(n: u64) -> Result<DyadicDecomposition> {
    if n == 0 {
        return Err(Error::Domain("cannot decompose 0".into()));
    }
    let valuation = n.trailing_zeros();
    Ok(DyadicDecomposition {
        valuation,
        odd_part: n >> valuation,
    })
}

/// Position key: (block, secondary). Lower keys come first.
fn rank(c: SharkClass) -> (u8, i64, i64) {
    match c {
        SharkClass::TwoInf => (1, 0, 0),
        SharkClass::Finite(n) => {
            let d = decompose(n).expect("SharkClass::Finite holds n >= 1");
            if d.odd_part == 1 {
                (0, i64::from(d.valuation), 0)
            } else {
                // higher valuation earlier, then larger odd part earlier
                (2, -i64::from(d.valuation), -(d.odd_part as i64))
            }
        }
    }
}

impl Ord for SharkClass {
    fn cmp(&self, other: &Self) -> Ordering {
        rank(*self).cmp(&rank(*other))
    }
}

impl PartialOrd for SharkClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `Less` means `a ≺ b`.
pub fn shark_cmp(a: SharkClass, b: SharkClass) -> Ordering {
    a.cmp(&b)
}

/// `{ m <= bound : m ⪯ c }`, ascending.
pub fn shark_tail(c: SharkClass, bound: u64) -> Vec<u64> {
    (1..=bound)
        .filter(|&m| SharkClass::Finite(m) <= c)
        .collect()
}

/// Result of [`recognize_tail`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TailMatch {
    pub class: SharkClass,
    /// The set is also the truncation of the `2^inf` tail at this bound.
    pub ambiguous_at_bound: bool,
}

/// Finds the class whose tail, cut at `bound`, is exactly `set`.
///
/// Only classes up to `bound` are considered, so the answer is the
/// Sharkovsky-maximum of `set` whenever one exists. A set of all powers of two
/// up to the bound is also the cut-down tail of `2^inf`; that case reports the
/// largest power of two and raises `ambiguous_at_bound`.
pub fn recognize_tail(set: &[u64], bound: u64) -> Option<TailMatch> {
    let mut sorted: Vec<u64> = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.first() == Some(&0) {
        return None;
    }
    let top = sorted.iter().map(|&m| SharkClass::Finite(m)).max()?;
    if shark_tail(top, bound) != sorted {
        return None;
    }
    let n = top.as_finite().expect("finite by construction");
    let ambiguous_at_bound = n.is_power_of_two() && n.checked_mul(2).is_none_or(|d| d > bound);
    Some(TailMatch {
        class: top,
        ambiguous_at_bound,
    })
}

impl fmt::Display for SharkClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SharkClass::Finite(n) => write!(f, "{n}"),
            SharkClass::TwoInf => f.write_str("2^inf"),
        }
    }
}

impl FromStr for SharkClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "2^inf" {
            return Ok(SharkClass::TwoInf);
        }
        let n: u64 = s.parse().map_err(|_| {
            Error::parse(
                "class",
                format!("{s:?} is neither a positive integer nor 2^inf"),
            )
        })?;
        SharkClass::finite(n).map_err(|e| Error::parse("class", e.to_string()))
    }
}

impl serde::Serialize for SharkClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SharkClass::*;

    #[test]
    fn decompose_examples() {
        let d = decompose(12).unwrap();
        assert_eq!((d.valuation, d.odd_part), (2, 3));
        assert_eq!(
            decompose(1).unwrap(),
            DyadicDecomposition {
                valuation: 0,
                odd_part: 1
            }
        );
        assert_eq!(
            decompose(8).unwrap(),
            DyadicDecomposition {
                valuation: 3,
                odd_part: 1
            }
        );
        assert!(matches!(decompose(0), Err(Error::Domain(_))));
        assert_eq!(decompose(40).unwrap().value(), 40);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(shark_cmp(Finite(5), Finite(3)), Ordering::Less);
        assert_eq!(shark_cmp(Finite(2), Finite(2)), Ordering::Equal);
        assert_eq!(shark_cmp(Finite(6), Finite(12)), Ordering::Greater);
        assert_eq!(shark_cmp(TwoInf, Finite(8)), Ordering::Greater);
        assert_eq!(shark_cmp(TwoInf, Finite(12)), Ordering::Less);
        assert_eq!(shark_cmp(Finite(1), Finite(2)), Ordering::Less);
        assert_eq!(shark_cmp(Finite(1024), Finite(3 * 1024)), Ordering::Less);
    }

    #[test]
    fn tail_examples() {
        assert_eq!(shark_tail(Finite(3), 10), (1..=10).collect::<Vec<_>>());
        assert_eq!(shark_tail(Finite(4), 10), vec![1, 2, 4]);
        assert_eq!(shark_tail(Finite(5), 10), vec![1, 2, 4, 5, 6, 7, 8, 9, 10]);
        assert_eq!(shark_tail(Finite(6), 13), vec![1, 2, 4, 6, 8, 10, 12]);
        assert_eq!(shark_tail(TwoInf, 20), vec![1, 2, 4, 8, 16]);
    }

    #[test]
    fn recognize_examples() {
        let m = recognize_tail(&[1, 2], 3).unwrap();
        assert_eq!(m.class, Finite(2));
        assert!(m.ambiguous_at_bound);
        assert_eq!(recognize_tail(&[1, 3], 3), None);
        let m = recognize_tail(&[1, 2, 4, 6, 8, 10, 12], 13).unwrap();
        assert_eq!(
            m,
            TailMatch {
                class: Finite(6),
                ambiguous_at_bound: false
            }
        );
        assert_eq!(recognize_tail(&[], 5), None);
        let m = recognize_tail(&[1, 2], 7).unwrap();
        assert_eq!(
            m,
            TailMatch {
                class: Finite(2),
                ambiguous_at_bound: false
            }
        );
        let m = recognize_tail(&[1, 2, 4], 7).unwrap();
        assert!(m.ambiguous_at_bound);
    }

    #[test]
    fn text_form() {
        assert_eq!("2^inf".parse::<SharkClass>().unwrap(), TwoInf);
        assert_eq!("12".parse::<SharkClass>().unwrap(), Finite(12));
        assert!("0".parse::<SharkClass>().is_err());
        assert!("x".parse::<SharkClass>().is_err());
        assert_eq!(TwoInf.to_string(), "2^inf");
    }
}
