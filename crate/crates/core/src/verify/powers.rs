use super::{
    certified_value, fold_verdicts, td_estimate, td_stability, Step, TdEstimate, TdStability,
    Verdict,
};
use crate::arith::{RatFunc, Var, VarKind};
use crate::chain::{
    check_kernel, power_inequality_check, Comparison, PowerInequalityReport, Relation,
};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::expseries::TruncatedSeries;
use crate::subspace::{ldim, CoeffField};

/// Quantities of the powers inequality
/// `td(exp z̄ / C, p̄) + ldim_ℚ(p̄)(z̄/ker) − ldim_ℚ(z̄/ker) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowersReport {
    /// Estimates for `exp z̄` over ℚ(p̄) at `D` and `D + 1`.
    pub td_exp: TdStability,
    /// Estimate for `z̄` itself over ℚ(p̄).
    pub td_args: TdEstimate,
    /// `ldim_ℚ(p̄)(z̄/k̄)`.
    pub ldim_qp: usize,
    /// `ldim_ℚ(z̄/k̄)`.
    pub ldim_q: usize,
    /// `td_lower + ldim_ℚ(p̄) − ldim_ℚ`.
    pub value: i64,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

fn cat(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Evaluates the powers inequality on `z̄`, with `k̄` declared generators of
/// the kernel of `exp`. Power variables appear as coefficients.
pub fn powers_sc_check(
    z: &[TruncatedSeries<RatFunc>],
    kernel: &[RatFunc],
    degree: u32,
    mode: Execution,
) -> Result<PowersReport> {
    let powers: Vec<Var> = z
        .iter()
        .flat_map(|s| s.terms().flat_map(|(_, c)| c.variables()))
        .chain(kernel.iter().flat_map(RatFunc::variables))
        .filter(|v| v.kind() == VarKind::Power)
        .collect();
    for p in &powers {
        check_kernel(kernel, p)?;
    }
    let exps = z
        .iter()
        .map(TruncatedSeries::exp)
        .collect::<Result<Vec<_>>>()?;
    let td_exp = td_stability(&exps, degree, mode)?;
    let td_args = td_estimate(z, degree, mode)?;

    let (q, qp) = (CoeffField::Rationals, CoeffField::Powers);
    let values: Vec<RatFunc> = z.iter().map(certified_value).collect();
    let ldim_qp = ldim(&qp, &values, kernel)?;
    let ldim_q = ldim(&q, &values, kernel)?;
    let plain_q = ldim(&q, &values, &[])?;
    let plain_qp = ldim(&qp, &values, &[])?;

    // Finite samples B of L with k̄ ⊆ B: ldim_K(z̄/B) − ldim_ℚ(z̄/B) can only
    // shrink as B grows.
    let sample = cat(&[RatFunc::one()], kernel);
    let k_sample = ldim(&qp, &values, &sample)?;
    let q_sample = ldim(&q, &values, &sample)?;

    let lower = td_exp.at.lower();
    let value = lower as i64 + ldim_qp as i64 - ldim_q as i64;
    let steps = vec![
        Step::estimate(Comparison::new(
            "exp_td_within_q_span",
            td_exp.at.upper(),
            Relation::Le,
            plain_q,
        )),
        Step::estimate(Comparison::new(
            "arg_td_within_qp_span",
            td_args.upper(),
            Relation::Le,
            plain_qp,
        )),
        Step::exact(Comparison::new(
            "disjoint_base_monotone",
            k_sample + ldim_q,
            Relation::Le,
            ldim_qp + q_sample,
        )),
        Step::estimate(Comparison::new(
            "powers_inequality",
            lower + ldim_qp,
            Relation::Ge,
            ldim_q,
        )),
    ];
    let verdict = fold_verdicts(&steps, td_exp.is_stable());
    Ok(PowersReport {
        td_exp,
        td_args,
        ldim_qp,
        ldim_q,
        value,
        steps,
        verdict,
    })
}

/// The power-raising specialization `z̄ = (x̄, px̄)`.
#[derive(Debug, Clone, PartialEq)]
pub struct EtPowerReport {
    pub n: usize,
    pub powers: PowersReport,
    pub chain: PowerInequalityReport,
    pub steps: Vec<Step>,
    pub verdict: Verdict,
}

/// Requires `x̄` ℚ-linearly independent over `k̄`, so that `exp x̄` is
/// multiplicatively independent; checks `td(exp x̄, exp px̄) ≥ n` together
/// with the exact reduction and descent it rests on.
pub fn et_power_check(
    x: &[TruncatedSeries<RatFunc>],
    p: &Var,
    kernel: &[RatFunc],
    degree: u32,
    mode: Execution,
) -> Result<EtPowerReport> {
    check_kernel(kernel, p)?;
    let n = x.len();
    let xs: Vec<RatFunc> = x.iter().map(certified_value).collect();
    let q = CoeffField::Rationals;
    let qp = CoeffField::Powers;
    let base = ldim(&q, &xs, kernel)?;
    if base != n {
        return Err(Error::Domain(format!(
            "x̄ spans {base} < {n} dimensions over ℚ modulo the kernel, so exp x̄ is multiplicatively dependent"
        )));
    }
    let pv = RatFunc::var(p.clone());
    let mut z = x.to_vec();
    z.extend(x.iter().map(|s| s.scale(&pv)));
    let powers = powers_sc_check(&z, kernel, degree, mode)?;

    let pxs: Vec<RatFunc> = xs.iter().map(|e| e.mul(&pv)).collect();
    let zs = cat(&xs, &pxs);
    let chain = power_inequality_check(&xs, kernel, p)?;
    let z_q = ldim(&q, &zs, kernel)?;
    let shift_q = ldim(&q, &pxs, &cat(&xs, kernel))?;
    let z_qp = ldim(&qp, &zs, kernel)?;
    let x_qp = ldim(&qp, &xs, kernel)?;

    let mut steps = vec![
        Step::exact(Comparison::new(
            "reduction_q",
            z_q,
            Relation::Eq,
            n + shift_q,
        )),
        Step::exact(Comparison::new("reduction_qp", z_qp, Relation::Eq, x_qp)),
        Step::exact(Comparison::new(
            "power_descent",
            chain.lhs,
            Relation::Ge,
            chain.rhs,
        )),
        Step::estimate(Comparison::new(
            "exp_power_td",
            powers.td_exp.at.lower(),
            Relation::Ge,
            n,
        )),
    ];
    if !chain.holds() {
        steps.push(Step::exact(Comparison::new(
            "descent_certificate",
            0,
            Relation::Eq,
            1,
        )));
    }
    let verdict = fold_verdicts(&steps, powers.td_exp.is_stable()).combine(powers.verdict);
    Ok(EtPowerReport {
        n,
        powers,
        chain,
        steps,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expseries::{parse_series, SeriesContext};

    fn ctx() -> SeriesContext {
        SeriesContext::new(vec![Var::series("t")], vec![Var::power("p")], 16)
    }

    fn series(src: &[&str]) -> Vec<TruncatedSeries<RatFunc>> {
        src.iter()
            .map(|s| parse_series(s, &ctx()).unwrap())
            .collect()
    }

    #[test]
    fn t_and_pt() {
        let r = powers_sc_check(&series(&["t", "p*t"]), &[], 4, Execution::Sequential).unwrap();
        assert_eq!(r.td_exp.at.value(), 2);
        assert_eq!((r.ldim_qp, r.ldim_q, r.value), (1, 2, 1));
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn single() {
        let r = powers_sc_check(&series(&["t"]), &[], 4, Execution::Sequential).unwrap();
        assert_eq!(
            (r.td_exp.at.value(), r.ldim_qp, r.ldim_q, r.value),
            (1, 1, 1, 1)
        );
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn rational_multiple() {
        let r = powers_sc_check(&series(&["t", "2*t"]), &[], 4, Execution::Sequential).unwrap();
        assert_eq!(
            (r.td_exp.at.value(), r.ldim_qp, r.ldim_q, r.value),
            (1, 1, 1, 1)
        );
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn et_power_mode() {
        let p = Var::power("p");
        let r = et_power_check(&series(&["t"]), &p, &[], 4, Execution::Sequential).unwrap();
        assert!(r.chain.holds());
        assert_eq!(r.powers.value, 1);
        assert_eq!(r.verdict, Verdict::Pass);
        assert!(r.steps.iter().all(|s| s.comparison.holds()));
    }

    #[test]
    fn et_power_mode_two_generators() {
        let p = Var::power("p");
        let r = et_power_check(&series(&["t", "t^2"]), &p, &[], 4, Execution::Sequential).unwrap();
        assert_eq!(r.powers.td_exp.at.value(), 4);
        assert_eq!(r.verdict, Verdict::Pass);
    }

    #[test]
    fn et_power_rejects_dependent_input() {
        let p = Var::power("p");
        let r = et_power_check(&series(&["t", "3*t"]), &p, &[], 4, Execution::Sequential);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn kernel_involving_power_is_rejected() {
        let k = [RatFunc::var(Var::power("p"))];
        let r = powers_sc_check(&series(&["p*t"]), &k, 4, Execution::Sequential);
        assert!(matches!(r, Err(Error::KernelNotDisjoint(_))));
    }
}
