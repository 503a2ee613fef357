//! Exact periodic-point analysis of piecewise-linear maps.
//!
//! Periods are found by enumerating the fixed points of `f^n` piece by piece
//! and classifying each candidate with [`least_period`], which re-evaluates the
//! orbit point by point. The two routes share nothing beyond [`PlMap::eval`].

mod abc;
mod cover;
mod lemma6;
mod walk;

use std::collections::{BTreeMap, BTreeSet};
use std::ops::ControlFlow;

use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::budget::PieceBudget;
use crate::error::{Error, Result};
use crate::map::PlMap;
use crate::order::{recognize_tail, SharkClass};
use crate::rational::{Interval, Rational};

pub use abc::{check_abc, AbcCheck, AbcReport, AbcRule, AbcStatus};
pub use cover::{check_covering, pull_back, realize_loop, IntervalCycle, LoopCertificate};
pub use lemma6::{lemma6_consequence, lemma6_search, Lemma6Variant, Lemma6Witness};

pub(crate) use walk::{for_each_fixed, FixedFeature};

/// Fixed points of a map: isolated points plus segments on the diagonal.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixedSet {
    pub isolated: Vec<Rational>,
    pub segments: Vec<Interval>,
}

impl FixedSet {
    pub fn is_empty(&self) -> bool {
        self.isolated.is_empty() && self.segments.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.isolated.contains(x) || self.segments.iter().any(|s| s.contains(x))
    }
}

/// Solves `f(x) = x` piece by piece.
pub fn fixed_points(f: &PlMap) -> FixedSet {
    let mut out = FixedSet::default();
    for piece in f.pieces() {
        if piece.slope.is_one() {
            if piece.intercept.is_zero() {
                match out.segments.last_mut() {
                    Some(last) if last.hi() == &piece.lo => {
                        *last = Interval::spanning(last.lo().clone(), piece.hi.clone());
                    }
                    _ => out
                        .segments
                        .push(Interval::spanning(piece.lo.clone(), piece.hi.clone())),
                }
            }
            continue;
        }
        let x = &piece.intercept / (Rational::one() - &piece.slope);
        if piece.lo <= x && x <= piece.hi && out.isolated.last() != Some(&x) {
            out.isolated.push(x);
        }
    }
    // isolated points swallowed by a neighbouring segment
    let segments = out.segments.clone();
    out.isolated
        .retain(|x| !segments.iter().any(|s| s.contains(x)));
    out
}

/// The least `d` dividing `n` with `f^d(x) = x`.
pub fn least_period(f: &PlMap, x: &Rational, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("period multiple must be positive".into()));
    }
    let mut orbit = Vec::with_capacity(n as usize);
    let mut y = x.clone();
    for _ in 0..n {
        y = f.eval(&y)?;
        orbit.push(y.clone());
    }
    if &y != x {
        return Err(Error::Precondition(format!("f^{n}({x}) = {y}, not {x}")));
    }
    Ok((1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| &orbit[(d - 1) as usize] == x)
        .expect("d = n always qualifies"))
}

/// Least periods found up to `bound`, each with its smallest witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodReport {
    pub bound: u64,
    pub entries: BTreeMap<u64, Rational>,
    pub tail_class: Option<SharkClass>,
    pub ambiguous_at_bound: bool,
}

impl PeriodReport {
    pub fn periods(&self) -> Vec<u64> {
        self.entries.keys().copied().collect()
    }

    /// The period set is a Sharkovsky tail cut at the bound.
    pub fn passes(&self) -> bool {
        self.tail_class.is_some()
    }

    pub fn has_period(&self, n: u64) -> bool {
        self.entries.contains_key(&n)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "bound": self.bound,
            "periods": self.entries.iter().map(|(n, w)| serde_json::json!({
                "period": n,
                "witness": w.to_string(),
            })).collect::<Vec<_>>(),
            "tailClass": self.tail_class.map(|c| c.to_string()),
            "ambiguousAtBound": self.ambiguous_at_bound,
            "pass": self.passes(),
        })
    }
}

/// The smallest point of least period exactly `n`, if any.
pub fn find_period_witness(f: &PlMap, n: u64, budget: PieceBudget) -> Result<Option<Rational>> {
    let mut found = None;
    let mut failure = None;
    for_each_fixed(f, n, &f.domain(), budget, |feature| {
        let rep = match feature {
            FixedFeature::Point(x) => match least_period(f, &x, n) {
                Ok(p) if p == n => Ok(Some(x)),
                Ok(_) => Ok(None),
                Err(e) => Err(e),
            },
            FixedFeature::Segment { span, .. } => segment_representative(f, n, &span, budget),
        };
        match rep {
            Ok(Some(x)) => {
                found = Some(x);
                ControlFlow::Break(())
            }
            Ok(None) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// A point of least period `n` on a segment fixed by `f^n`: the smallest one
/// when it exists, otherwise a point just past the lower-period part.
fn segment_representative(
    f: &PlMap,
    n: u64,
    span: &Interval,
    budget: PieceBudget,
) -> Result<Option<Rational>> {
    let mut covered: Vec<Interval> = Vec::new();
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let fixed = fixed_points_of_iterate(f, d, span, budget)?;
        covered.extend(fixed.isolated.into_iter().map(Interval::point));
        covered.extend(fixed.segments);
    }
    covered.sort_by(|a, b| a.lo().cmp(b.lo()));
    let mut cursor = span.lo().clone();
    let mut at_cursor = false;
    for iv in &covered {
        if iv.lo() > &cursor {
            break;
        }
        at_cursor = true;
        if iv.hi() > &cursor {
            cursor = iv.hi().clone();
        }
    }
    if !at_cursor {
        return Ok(Some(cursor));
    }
    let next = covered
        .iter()
        .map(Interval::lo)
        .find(|lo| *lo > &cursor)
        .unwrap_or(span.hi());
    if next == &cursor {
        return Ok(None);
    }
    Ok(Some((&cursor + next) / Rational::from_integer(2.into())))
}

/// Enumerates the least periods `1..=bound` of `f`.
pub fn period_set(f: &PlMap, bound: u64, budget: PieceBudget) -> Result<PeriodReport> {
    if bound == 0 {
        return Err(Error::Domain("bound must be at least 1".into()));
    }
    let found: Vec<(u64, Option<Rational>)> = (1..=bound)
        .into_par_iter()
        .map(|n| find_period_witness(f, n, budget).map(|w| (n, w)))
        .collect::<Result<_>>()?;
    let entries: BTreeMap<u64, Rational> = found
        .into_iter()
        .filter_map(|(n, w)| w.map(|w| (n, w)))
        .collect();
    let periods: Vec<u64> = entries.keys().copied().collect();
    let tail = recognize_tail(&periods, bound);
    Ok(PeriodReport {
        bound,
        entries,
        tail_class: tail.map(|t| t.class),
        ambiguous_at_bound: tail.is_some_and(|t| t.ambiguous_at_bound),
    })
}

/// [`period_set`] plus the requirement that the period set is a tail.
/// Inspect [`PeriodReport::passes`] for the verdict.
pub fn verify_sharkovsky(f: &PlMap, bound: u64, budget: PieceBudget) -> Result<PeriodReport> {
    period_set(f, bound, budget)
}

/// All points of least period exactly `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodicPoints {
    pub points: Vec<Rational>,
    /// Maximal fixed segments of `f^n` whose generic point has least period `n`.
    pub segments: Vec<Interval>,
}

impl PeriodicPoints {
    /// Groups the isolated points into orbits, each sorted, ordered by minimum.
    pub fn orbits(&self, f: &PlMap) -> Result<Vec<Vec<Rational>>> {
        let mut remaining: BTreeSet<Rational> = self.points.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some(start) = remaining.pop_first() {
            let mut orbit = vec![start.clone()];
            let mut y = f.eval(&start)?;
            while y != start {
                remaining.remove(&y);
                orbit.push(y.clone());
                y = f.eval(&y)?;
            }
            orbit.sort();
            out.push(orbit);
        }
        Ok(out)
    }
}

/// The fixed set of `f^n` on `within`, with adjacent diagonal pieces merged.
pub fn fixed_points_of_iterate(
    f: &PlMap,
    n: u64,
    within: &Interval,
    budget: PieceBudget,
) -> Result<FixedSet> {
    let mut out = FixedSet::default();
    for_each_fixed(f, n, within, budget, |feature| {
        match feature {
            FixedFeature::Point(x) => out.isolated.push(x),
            FixedFeature::Segment { span, continues } => {
                let glued_point = continues && out.isolated.last() == Some(span.lo());
                let glued_segment =
                    continues && out.segments.last().is_some_and(|s| s.hi() >= span.lo());
                if glued_segment && !glued_point {
                    let last = out.segments.last_mut().expect("checked above");
                    *last = Interval::spanning(last.lo().clone(), span.hi().clone());
                } else {
                    if glued_point {
                        out.isolated.pop();
                    }
                    out.segments.push(span);
                }
            }
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// All points of least period exactly `n`.
pub fn periodic_points(f: &PlMap, n: u64, budget: PieceBudget) -> Result<PeriodicPoints> {
    let fixed = fixed_points_of_iterate(f, n, &f.domain(), budget)?;
    let mut out = PeriodicPoints::default();
    for x in fixed.isolated {
        if least_period(f, &x, n)? == n {
            out.points.push(x);
        }
    }
    for seg in fixed.segments {
        if segment_representative(f, n, &seg, budget)?.is_some() {
            out.segments.push(seg);
        }
    }
    Ok(out)
}

/// Least period under `f^n` of a point with least period `m` under `f`.
pub fn power_period(m: u64, n: u64) -> u64 {
    m / m.gcd(&n)
}

/// Possible least `f`-periods of a point whose least `f^n`-period is `k`:
/// `{ k·n/s : s | n, gcd(s, k) = 1 }`.
pub fn lift_period(k: u64, n: u64) -> BTreeSet<u64> {
    (1..=n)
        .filter(|s| n.is_multiple_of(*s) && s.gcd(&k) == 1)
        .map(|s| k * n / s)
        .collect()
}

#[cfg(test)]
mod tests;
