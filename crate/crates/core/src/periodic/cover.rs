//! Covering relations between intervals and their realization as periodic points.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::budget::PieceBudget;
use crate::error::{Error, Result};
use crate::map::PlMap;
use crate::rational::{Interval, Rational};

use super::walk::{for_each_fixed, FixedFeature};

/// `true` iff `f(j) ⊇ l`.
pub fn check_covering(f: &PlMap, j: &Interval, l: &Interval) -> Result<bool> {
    let (lo, hi) = f.extrema_on(j)?;
    Ok(&lo <= l.lo() && &hi >= l.hi())
}

/// Intervals `J_0 … J_{n-1}` with `f(J_i) ⊇ J_{i+1 mod n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IntervalCycle {
    intervals: Vec<Interval>,
}

impl IntervalCycle {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Domain("a cycle needs at least one interval".into()));
        }
        Ok(IntervalCycle { intervals })
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// The first index `i` whose covering `f(J_i) ⊇ J_{i+1}` fails.
    pub fn first_gap(&self, f: &PlMap) -> Result<Option<usize>> {
        let n = self.intervals.len();
        for i in 0..n {
            if !check_covering(f, &self.intervals[i], &self.intervals[(i + 1) % n])? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// A closed `K ⊆ j` with `f(K) = l` exactly, selected by the extremal rule:
/// with `p`, `q` the first preimages of `min l` and `max l` in `j`, take the
/// last preimage of the nearer endpoint value before the other one, then the
/// first preimage of the far value after it.
pub fn pull_back(f: &PlMap, j: &Interval, l: &Interval) -> Result<Interval> {
    if !check_covering(f, j, l)? {
        return Err(Error::Precondition(format!("f({j}) does not cover {l}")));
    }
    let (a, b) = (l.lo(), l.hi());
    let first_hit = |y: &Rational, within: &Interval| -> Result<Rational> {
        f.level_set(y, within)?
            .first()
            .map(|iv| iv.lo().clone())
            .ok_or_else(|| Error::Precondition(format!("{y} has no preimage in {within}")))
    };
    let last_hit = |y: &Rational, within: &Interval| -> Result<Rational> {
        f.level_set(y, within)?
            .last()
            .map(|iv| iv.hi().clone())
            .ok_or_else(|| Error::Precondition(format!("{y} has no preimage in {within}")))
    };
    let p = first_hit(a, j)?;
    if a == b {
        return Ok(Interval::point(p));
    }
    let q = first_hit(b, j)?;
    let (c, d) = if p < q {
        let c = last_hit(a, &Interval::spanning(p, q.clone()))?;
        let d = first_hit(b, &Interval::spanning(c.clone(), q))?;
        (c, d)
    } else {
        let c = last_hit(b, &Interval::spanning(q, p.clone()))?;
        let d = first_hit(a, &Interval::spanning(c.clone(), p))?;
        (c, d)
    };
    Ok(Interval::spanning(c, d))
}

/// Evidence that a cycle of intervals carries a point of period dividing `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopCertificate {
    pub cycle: IntervalCycle,
    /// `Q_0 … Q_n` with `Q_n = J_0`, `Q_i ⊆ J_i` and `f(Q_i) = Q_{i+1}`.
    pub nested: Vec<Interval>,
    #[serde(with = "crate::rational::text")]
    pub witness: Rational,
}

impl LoopCertificate {
    /// Re-checks every claim of the certificate from scratch.
    pub fn validate(&self, f: &PlMap) -> Result<()> {
        let js = self.cycle.intervals();
        let n = js.len();
        let fail = |msg: String| Err(Error::Precondition(format!("invalid certificate: {msg}")));
        if self.nested.len() != n + 1 {
            return fail(format!(
                "expected {} nested intervals, found {}",
                n + 1,
                self.nested.len()
            ));
        }
        if self.nested[n] != js[0] {
            return fail("last nested interval differs from J_0".into());
        }
        for (i, (pair, j)) in self.nested.windows(2).zip(js).enumerate() {
            if !pair[0].is_subset_of(j) {
                return fail(format!("Q_{i} = {} is not inside J_{i} = {j}", pair[0]));
            }
            let image = f.image(&pair[0])?;
            if image != pair[1] {
                return fail(format!("f(Q_{i}) = {image}, expected {}", pair[1]));
            }
        }
        let mut y = self.witness.clone();
        for (i, q) in self.nested.iter().enumerate().take(n) {
            if !q.contains(&y) {
                return fail(format!("f^{i}(witness) = {y} is not in Q_{i} = {q}"));
            }
            y = f.eval(&y)?;
        }
        if y != self.witness {
            return fail(format!("f^{n}(witness) = {y}, not {}", self.witness));
        }
        Ok(())
    }

    pub fn itinerary(&self, f: &PlMap) -> Result<Vec<Rational>> {
        let mut out = Vec::with_capacity(self.cycle.len());
        let mut y = self.witness.clone();
        for _ in 0..self.cycle.len() {
            out.push(y.clone());
            y = f.eval(&y)?;
        }
        Ok(out)
    }
}

/// Turns a cycle of intervals into a point `y` with `f^i(y) ∈ J_i` and
/// `f^n(y) = y`. The least period of `y` is not claimed; it may divide `n`.
pub fn realize_loop(
    f: &PlMap,
    cycle: &IntervalCycle,
    budget: PieceBudget,
) -> Result<LoopCertificate> {
    if let Some(i) = cycle.first_gap(f)? {
        let n = cycle.len();
        return Err(Error::Precondition(format!(
            "covering fails at index {i}: f(J_{i}) does not contain J_{}",
            (i + 1) % n
        )));
    }
    let js = cycle.intervals();
    let n = js.len();
    let mut nested = vec![js[0].clone(); n + 1];
    for i in (0..n).rev() {
        nested[i] = pull_back(f, &js[i], &nested[i + 1])?;
    }
    let mut witness = None;
    for_each_fixed(f, n as u64, &nested[0], budget, |feature| {
        witness = Some(match feature {
            FixedFeature::Point(x) => x,
            FixedFeature::Segment { span, .. } => span.lo().clone(),
        });
        ControlFlow::Break(())
    })?;
    let witness = witness
        .ok_or_else(|| Error::Precondition(format!("f^{n} has no fixed point in {}", nested[0])))?;
    Ok(LoopCertificate {
        cycle: cycle.clone(),
        nested,
        witness,
    })
}
