use std::collections::BTreeSet;

use super::{certified_value, td_stability, TdStability, Verdict};
use crate::arith::{RatFunc, Rational, Var};
use crate::error::Result;
use crate::exec::Execution;
use crate::expseries::TruncatedSeries;
use crate::linalg::{rank, ExactMatrix};
use crate::subspace::{ldim, CoeffField};

/// `td(z̄, exp z̄) − ldim_ℚ(z̄/ℚ) − rank(∂_i z_j)` with its ingredients.
#[derive(Debug, Clone, PartialEq)]
pub struct AxReport {
    pub n: usize,
    pub m: usize,
    pub ldim: usize,
    pub rank: usize,
    /// Estimates for `(z̄, exp z̄)` at `D` and `D + 1`.
    pub td: TdStability,
    pub slack: i64,
    pub verdict: Verdict,
}

impl AxReport {
    pub fn td_estimate(&self) -> usize {
        self.td.at.value()
    }
}

/// Checks Ax's inequality on `z̄`. Never fails: a weak or unstable estimate
/// gives INCONCLUSIVE.
pub fn ax_check(z: &[TruncatedSeries<Rational>], degree: u32, mode: Execution) -> Result<AxReport> {
    let vars: Vec<Var> = z
        .iter()
        .flat_map(|s| s.vars().iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut gens = z.to_vec();
    for s in z {
        gens.push(s.exp()?);
    }
    let td = td_stability(&gens, degree, mode)?;

    let values: Vec<RatFunc> = z.iter().map(certified_value).collect();
    let ldim = ldim(&CoeffField::Rationals, &values, &[RatFunc::one()])?;

    let mut rows = Vec::with_capacity(vars.len());
    for v in &vars {
        let row = z
            .iter()
            .map(|s| s.derive(v).map(|d| certified_value(&d)))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    let rank = rank(&ExactMatrix::from_rows(rows, z.len()));

    let slack = td.at.lower() as i64 - ldim as i64 - rank as i64;
    let verdict = if slack >= 0 && td.is_stable() {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(AxReport {
        n: z.len(),
        m: vars.len(),
        ldim,
        rank,
        td,
        slack,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expseries::{parse_series, SeriesContext};

    fn run(src: &[&str], degree: u32) -> AxReport {
        let ctx = SeriesContext::new(vec![Var::series("t")], vec![], 4 * 4);
        let z: Vec<TruncatedSeries> = src.iter().map(|s| parse_series(s, &ctx).unwrap()).collect();
        ax_check(&z, degree, Execution::Sequential).unwrap()
    }

    #[test]
    fn single_variable() {
        let r = run(&["t"], 4);
        assert_eq!((r.td_estimate(), r.ldim, r.rank, r.slack), (2, 1, 1, 0));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn square() {
        let r = run(&["t", "t^2"], 4);
        assert_eq!((r.td_estimate(), r.ldim, r.rank, r.slack), (3, 2, 1, 0));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn rational_multiple() {
        let r = run(&["t", "2*t"], 4);
        assert_eq!((r.td_estimate(), r.ldim, r.rank, r.slack), (2, 1, 1, 0));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn low_degree_is_inconclusive() {
        let r = run(&["t", "t^2"], 1);
        assert!(!r.td.is_stable());
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn two_variables() {
        let ctx = SeriesContext::new(vec![Var::series("s"), Var::series("t")], vec![], 16);
        let z: Vec<TruncatedSeries> = ["s", "t", "s + t"]
            .iter()
            .map(|x| parse_series(x, &ctx).unwrap())
            .collect();
        let r = ax_check(&z, 4, Execution::Sequential).unwrap();
        assert_eq!((r.ldim, r.rank, r.m), (2, 2, 2));
        assert_eq!(r.td_estimate(), 4);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn shipped_two_variable_instances() {
        let ctx = SeriesContext::new(vec![Var::series("s"), Var::series("t")], vec![], 16);
        for src in [["t", "s"], ["t + s^2", "s"]] {
            let z: Vec<TruncatedSeries> =
                src.iter().map(|x| parse_series(x, &ctx).unwrap()).collect();
            let r = ax_check(&z, 4, Execution::Sequential).unwrap();
            assert_eq!((r.td_estimate(), r.ldim, r.rank, r.slack), (4, 2, 2, 0));
            assert_eq!(r.verdict, Verdict::Pass);
        }
    }
}
