//! Lazy enumeration of the linear pieces of `f^n`.
//!
//! Instead of materializing `f^n` (whose piece count grows geometrically), the
//! walk descends a tree: a node is a sub-interval `X` on which `f^k` is affine,
//! and its children split `f^k(X)` along the breakpoints of `f`. Children are
//! visited in increasing `x`, so leaves arrive sorted and the first fixed point
//! found is the smallest one.

use std::ops::ControlFlow;

use num_traits::{One, Signed, Zero};

use crate::budget::PieceBudget;
use crate::error::{Error, Result};
use crate::map::PlMap;
use crate::rational::{Interval, Rational};

/// `f^depth(x) = slope · x + intercept` for `x` in `[lo, hi]`.
#[derive(Clone, Debug)]
pub(crate) struct Branch {
    pub lo: Rational,
    pub hi: Rational,
    pub slope: Rational,
    pub intercept: Rational,
}

impl Branch {
    pub fn apply(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }
}

/// Visits every leaf branch of `f^n` on `within`, left to right.
/// Returns `Ok(true)` if the walk ran to completion.
pub(crate) fn for_each_branch<F>(
    f: &PlMap,
    n: u64,
    within: &Interval,
    budget: PieceBudget,
    mut visit: F,
) -> Result<bool>
where
    F: FnMut(&Branch) -> ControlFlow<()>,
{
    if !within.is_subset_of(&f.domain()) {
        return Err(Error::Domain(format!(
            "{within} is not inside the domain {}",
            f.domain()
        )));
    }
    let root = Branch {
        lo: within.lo().clone(),
        hi: within.hi().clone(),
        slope: Rational::one(),
        intercept: Rational::zero(),
    };
    let mut stack: Vec<(Branch, u64)> = vec![(root, 0)];
    let mut leaves = 0usize;
    let mut children = Vec::new();
    while let Some((branch, depth)) = stack.pop() {
        if depth == n {
            leaves += 1;
            if leaves > budget.pieces() {
                return Err(Error::Resource {
                    what: "branch count of the iterate",
                    budget: budget.pieces(),
                    reached: n,
                });
            }
            if visit(&branch).is_break() {
                return Ok(false);
            }
            continue;
        }
        split(f, &branch, &mut children);
        // reversed so the leftmost child is popped first
        stack.extend(children.drain(..).rev().map(|c| (c, depth + 1)));
    }
    Ok(true)
}

/// Children of `branch` under one more application of `f`, in increasing x.
fn split(f: &PlMap, branch: &Branch, out: &mut Vec<Branch>) {
    let a = branch.apply(&branch.lo);
    let b = branch.apply(&branch.hi);
    let pts = f.points();
    if a == b {
        let j = f.piece_index(&a).expect("iterates stay inside the domain");
        let piece = f.piece(j);
        out.push(Branch {
            lo: branch.lo.clone(),
            hi: branch.hi.clone(),
            slope: &piece.slope * &branch.slope,
            intercept: &piece.slope * &branch.intercept + &piece.intercept,
        });
        return;
    }
    let (ylo, yhi) = if a < b { (&a, &b) } else { (&b, &a) };
    let last = f.piece_count() - 1;
    let first_piece = pts
        .partition_point(|p| &p.x <= ylo)
        .saturating_sub(1)
        .min(last);
    let last_piece = pts
        .partition_point(|p| &p.x < yhi)
        .saturating_sub(1)
        .min(last);
    let increasing = branch.slope.is_positive();
    let start = out.len();
    for j in first_piece..=last_piece {
        let p = ylo.max(&pts[j].x);
        let q = yhi.min(&pts[j + 1].x);
        let xp = (p - &branch.intercept) / &branch.slope;
        let xq = (q - &branch.intercept) / &branch.slope;
        let (lo, hi) = if increasing { (xp, xq) } else { (xq, xp) };
        let piece = f.piece(j);
        out.push(Branch {
            lo,
            hi,
            slope: &piece.slope * &branch.slope,
            intercept: &piece.slope * &branch.intercept + &piece.intercept,
        });
    }
    if !increasing {
        out[start..].reverse();
    }
}

/// A fixed point of `f^n`, as produced by [`for_each_fixed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum FixedFeature {
    Point(Rational),
    /// A piece of `f^n` lying on the diagonal. `continues` is set when the
    /// segment is glued to the previously reported feature, i.e. it belongs to
    /// the same maximal fixed segment.
    Segment {
        span: Interval,
        continues: bool,
    },
}

/// Streams the fixed points of `f^n` on `within` in increasing order. Points
/// shared by adjacent branches are reported once.
pub(crate) fn for_each_fixed<F>(
    f: &PlMap,
    n: u64,
    within: &Interval,
    budget: PieceBudget,
    mut visit: F,
) -> Result<bool>
where
    F: FnMut(FixedFeature) -> ControlFlow<()>,
{
    let mut covered: Option<Rational> = None;
    for_each_branch(f, n, within, budget, |branch| {
        let one = Rational::one();
        if branch.lo == branch.hi {
            let x = &branch.lo;
            if branch.apply(x) != *x || covered.as_ref().is_some_and(|c| c >= x) {
                return ControlFlow::Continue(());
            }
            covered = Some(x.clone());
            return visit(FixedFeature::Point(x.clone()));
        }
        if branch.slope == one && branch.intercept.is_zero() {
            let continues = covered.as_ref().is_some_and(|c| c >= &branch.lo);
            covered = Some(branch.hi.clone());
            let span = Interval::spanning(branch.lo.clone(), branch.hi.clone());
            return visit(FixedFeature::Segment { span, continues });
        }
        if branch.slope == one {
            return ControlFlow::Continue(());
        }
        let x = &branch.intercept / (&one - &branch.slope);
        if x < branch.lo || x > branch.hi || covered.as_ref().is_some_and(|c| c >= &x) {
            return ControlFlow::Continue(());
        }
        covered = Some(x.clone());
        visit(FixedFeature::Point(x))
    })
}
