//! The three elementary forcing rules behind the ordering:
//!
//! * (a) period 3 or 4 forces period 2;
//! * (b) an odd period `m ≥ 3` forces `m + 2`;
//! * (c) an odd period `m ≥ 3` forces `6` and `2m`.

use serde::Serialize;

use crate::budget::PieceBudget;
use crate::error::Result;
use crate::map::PlMap;

use super::{period_set, PeriodReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AbcRule {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AbcStatus {
    Pass,
    Fail,
    /// The forced period lies beyond the bound.
    Skipped,
}

/// One exercised implication: period `from` present, so `requires` must be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AbcCheck {
    pub rule: AbcRule,
    pub from: u64,
    pub requires: u64,
    pub status: AbcStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbcReport {
    pub bound: u64,
    pub checks: Vec<AbcCheck>,
}

impl AbcReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.status != AbcStatus::Fail)
    }

    pub fn exercised(&self, rule: AbcRule) -> usize {
        self.checks
            .iter()
            .filter(|c| c.rule == rule && c.status != AbcStatus::Skipped)
            .count()
    }

    pub fn from_periods(report: &PeriodReport) -> AbcReport {
        let bound = report.bound;
        let mut checks = Vec::new();
        let mut push = |rule, from, requires: u64| {
            let status = if requires > bound {
                AbcStatus::Skipped
            } else if report.has_period(requires) {
                AbcStatus::Pass
            } else {
                AbcStatus::Fail
            };
            checks.push(AbcCheck {
                rule,
                from,
                requires,
                status,
            });
        };
        for m in report.periods() {
            if m == 3 || m == 4 {
                push(AbcRule::A, m, 2);
            }
            if m >= 3 && m % 2 == 1 {
                push(AbcRule::B, m, m + 2);
                push(AbcRule::C, m, 6);
                push(AbcRule::C, m, 2 * m);
            }
        }
        AbcReport { bound, checks }
    }
}

pub fn check_abc(f: &PlMap, bound: u64, budget: PieceBudget) -> Result<AbcReport> {
    Ok(AbcReport::from_periods(&period_set(f, bound, budget)?))
}
