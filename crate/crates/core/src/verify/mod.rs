//! Composite verifiers: bounded-degree relation search as a
//! transcendence-degree oracle, Ax inequality checks, and the assembled
//! power inequalities on concrete series instances.
//!
//! Transcendence degree is never claimed outright. Inequalities resting on
//! exact linear dimensions can fail; inequalities resting on a relation
//! search can only pass or be inconclusive.

mod ax;
mod powers;
mod relations;

use std::fmt;

pub use ax::{ax_check, AxReport};
pub use powers::{et_power_check, powers_sc_check, EtPowerReport, PowersReport};
pub use relations::{
    capacity, coefficient_rows, effective_degree, monomial_columns, relation_search,
    relation_search_with, relation_var, td_estimate, td_stability, Check, RelationCertificate,
    SearchOutcome, TdEstimate, TdKind, TdStability,
};

use crate::arith::{Field, RatFunc};
use crate::chain::Comparison;
use crate::expseries::TruncatedSeries;

/// Default degree bound `D`; the default truncation is `4D`.
pub const DEFAULT_DEGREE: u32 = 4;

pub fn default_truncation(degree: u32) -> u32 {
    4 * degree
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
    Error,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Error => "ERROR",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
            Verdict::Error => 3,
        }
    }

    fn severity(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Inconclusive => 1,
            Verdict::Error => 2,
            Verdict::Fail => 3,
        }
    }

    /// The more severe of the two: FAIL, then ERROR, then INCONCLUSIVE.
    pub fn combine(self, other: Verdict) -> Verdict {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A comparison tagged with whether both sides are exact dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub comparison: Comparison,
    pub exact: bool,
}

impl Step {
    pub fn exact(c: Comparison) -> Self {
        Step {
            comparison: c,
            exact: true,
        }
    }

    pub fn estimate(c: Comparison) -> Self {
        Step {
            comparison: c,
            exact: false,
        }
    }

    pub fn verdict(&self) -> Verdict {
        match (self.comparison.holds(), self.exact) {
            (true, _) => Verdict::Pass,
            (false, true) => Verdict::Fail,
            (false, false) => Verdict::Inconclusive,
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} ({})",
            self.comparison,
            if self.exact { "exact" } else { "estimate" }
        )
    }
}

pub(crate) fn fold_verdicts(steps: &[Step], stable: bool) -> Verdict {
    let v = steps
        .iter()
        .fold(Verdict::Pass, |acc, s| acc.combine(s.verdict()));
    if stable {
        v
    } else {
        v.combine(Verdict::Inconclusive)
    }
}

/// The value of a series up to its certified order.
pub fn certified_value<F: Field>(s: &TruncatedSeries<F>) -> RatFunc {
    if s.certified() < 0 {
        RatFunc::zero()
    } else {
        s.truncate(s.certified() as u32).to_ratfunc()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_precedence() {
        use Verdict::*;
        assert_eq!(Pass.combine(Inconclusive), Inconclusive);
        assert_eq!(Inconclusive.combine(Error), Error);
        assert_eq!(Error.combine(Fail), Fail);
        assert_eq!(Fail.combine(Inconclusive), Fail);
        assert_eq!(Pass.combine(Pass), Pass);
        assert_eq!(
            [Pass, Fail, Inconclusive, Error].map(Verdict::exit_code),
            [0, 1, 2, 3]
        );
    }
}
