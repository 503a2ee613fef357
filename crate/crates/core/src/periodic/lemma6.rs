//! Search for a point `d` that spirals around a fixed point `z`:
//!
//! * left:  `f²(d) < d < z < f(d)` and `f³(d) ≤ z`
//! * right: `f(d) < z < d < f²(d)` and `z ≤ f³(d)`
//!
//! Either configuration forces periodic points of every even period.
//!
//! On each piece of `f³` the maps `f`, `f²`, `f³` are all affine, so every
//! condition is a linear inequality in `d` and the feasible set on the piece is
//! an interval computed exactly. The search returns the smallest feasible `d`
//! for the smallest fixed point `z` that admits one.

use std::cmp::Ordering;
use std::ops::ControlFlow;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::budget::PieceBudget;
use crate::error::Result;
use crate::map::PlMap;
use crate::rational::{int, Interval, Rational};

use super::walk::for_each_branch;
use super::{fixed_points, period_set};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma6Variant {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma6Witness {
    #[serde(with = "crate::rational::text")]
    pub d: Rational,
    #[serde(with = "crate::rational::text")]
    pub z: Rational,
    pub variant: Lemma6Variant,
}

impl Lemma6Witness {
    /// Checks the defining inequalities directly by evaluation.
    pub fn holds_for(&self, f: &PlMap) -> Result<bool> {
        let (d, z) = (&self.d, &self.z);
        if &f.eval(z)? != z {
            return Ok(false);
        }
        let f1 = f.eval(d)?;
        let f2 = f.eval(&f1)?;
        let f3 = f.eval(&f2)?;
        Ok(match self.variant {
            Lemma6Variant::Left => &f3 <= z && &f2 < d && d < z && z < &f1,
            Lemma6Variant::Right => &f1 < z && z < d && d < &f2 && z <= &f3,
        })
    }
}

/// Feasible set of linear constraints on one piece.
#[derive(Clone, Debug)]
struct Feasible {
    lo: Rational,
    lo_strict: bool,
    hi: Rational,
    hi_strict: bool,
    empty: bool,
}

impl Feasible {
    fn on(piece: &Interval) -> Self {
        Feasible {
            lo: piece.lo().clone(),
            lo_strict: false,
            hi: piece.hi().clone(),
            hi_strict: false,
            empty: false,
        }
    }

    /// Imposes `coef · d + offset < 0` (strict) or `≤ 0`.
    fn require(&mut self, coef: &Rational, offset: &Rational, strict: bool) {
        if coef.is_zero() {
            let ok = if strict {
                offset.is_negative()
            } else {
                !offset.is_positive()
            };
            self.empty |= !ok;
            return;
        }
        let root = -offset / coef;
        if coef.is_positive() {
            match root.cmp(&self.hi) {
                Ordering::Less => {
                    self.hi = root;
                    self.hi_strict = strict;
                }
                Ordering::Equal => self.hi_strict |= strict,
                Ordering::Greater => {}
            }
        } else {
            match root.cmp(&self.lo) {
                Ordering::Greater => {
                    self.lo = root;
                    self.lo_strict = strict;
                }
                Ordering::Equal => self.lo_strict |= strict,
                Ordering::Less => {}
            }
        }
    }

    /// Least feasible point, or the midpoint when the infimum is excluded.
    fn pick(&self) -> Option<Rational> {
        if self.empty {
            return None;
        }
        match self.lo.cmp(&self.hi) {
            Ordering::Greater => None,
            Ordering::Equal => (!self.lo_strict && !self.hi_strict).then(|| self.lo.clone()),
            Ordering::Less if !self.lo_strict => Some(self.lo.clone()),
            Ordering::Less => Some((&self.lo + &self.hi) / int(2)),
        }
    }
}

/// `(coef, offset)` of `x ↦ f^k(x)` on a piece, from its endpoint values.
fn affine(
    lo: &Rational,
    hi: &Rational,
    at_lo: &Rational,
    at_hi: &Rational,
) -> (Rational, Rational) {
    let coef = (at_hi - at_lo) / (hi - lo);
    let offset = at_lo - &coef * lo;
    (coef, offset)
}

fn solve_piece(
    f: &PlMap,
    piece: &Interval,
    z: &Rational,
) -> Result<Option<(Rational, Lemma6Variant)>> {
    let (lo, hi) = (piece.lo(), piece.hi());
    let mut at_lo = vec![lo.clone()];
    let mut at_hi = vec![hi.clone()];
    for k in 0..3 {
        at_lo.push(f.eval(&at_lo[k])?);
        at_hi.push(f.eval(&at_hi[k])?);
    }
    let maps: Vec<(Rational, Rational)> = (1..=3)
        .map(|k| affine(lo, hi, &at_lo[k], &at_hi[k]))
        .collect();
    let (c1, o1) = &maps[0];
    let (c2, o2) = &maps[1];
    let (c3, o3) = &maps[2];
    let one = int(1);
    let zero = int(0);

    let mut left = Feasible::on(piece);
    left.require(c3, &(o3 - z), false); // f³(d) ≤ z
    left.require(&(c2 - &one), o2, true); // f²(d) < d
    left.require(&one, &-z, true); // d < z
    left.require(&-c1, &(z - o1), true); // z < f(d)

    let mut right = Feasible::on(piece);
    right.require(c1, &(o1 - z), true); // f(d) < z
    right.require(&-&one, z, true); // z < d
    right.require(&(&one - c2), &(&zero - o2), true); // d < f²(d)
    right.require(&-c3, &(z - o3), false); // z ≤ f³(d)

    Ok(match (left.pick(), right.pick()) {
        (Some(l), Some(r)) if r < l => Some((r, Lemma6Variant::Right)),
        (Some(l), _) => Some((l, Lemma6Variant::Left)),
        (None, Some(r)) => Some((r, Lemma6Variant::Right)),
        (None, None) => None,
    })
}

/// The first witness in `(z, d)` order, `z` ranging over isolated fixed points.
pub fn lemma6_search(f: &PlMap, budget: PieceBudget) -> Result<Option<Lemma6Witness>> {
    let candidates = fixed_points(f).isolated;
    for z in candidates {
        let mut hit = None;
        let mut failure = None;
        for_each_branch(f, 3, &f.domain(), budget, |branch| {
            if branch.lo == branch.hi {
                return ControlFlow::Continue(());
            }
            let piece = Interval::spanning(branch.lo.clone(), branch.hi.clone());
            match solve_piece(f, &piece, &z) {
                Ok(Some(found)) => {
                    hit = Some(found);
                    ControlFlow::Break(())
                }
                Ok(None) => ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some((d, variant)) = hit {
            return Ok(Some(Lemma6Witness { d, z, variant }));
        }
    }
    Ok(None)
}

/// When a witness exists, whether every even period up to `bound` is present.
/// `None` when there is no witness to draw a consequence from.
pub fn lemma6_consequence(f: &PlMap, bound: u64, budget: PieceBudget) -> Result<Option<bool>> {
    if lemma6_search(f, budget)?.is_none() {
        return Ok(None);
    }
    let report = period_set(f, bound, budget)?;
    Ok(Some((2..=bound).step_by(2).all(|n| report.has_period(n))))
}
