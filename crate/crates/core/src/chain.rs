//! The descent chain `A_{i+1} = A_i ∩ p⁻¹A_i`, its telescoping identity,
//! and the comparison `ldim_ℚ(px̄/x̄, k̄) ≥ ldim_ℚ(p)(x̄/k̄)`.

use std::fmt;

use crate::arith::{RatFunc, Var};
use crate::error::{Error, Result};
use crate::subspace::{ldim, CoeffField, SubspaceBasis};

/// A full descent chain ending in `{0}` with its dimension bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCertificate {
    pub p: Var,
    /// `A_0, …, A_N` with `A_N = {0}`.
    pub chain: Vec<SubspaceBasis>,
    pub dims: Vec<usize>,
    /// `ldim_ℚ(A_i / (A_{i+1} + pA_{i+1}))` for `i < N`.
    pub step_terms: Vec<usize>,
    /// The same quotients over ℚ(p).
    pub qp_step_terms: Vec<usize>,
    /// `ldim_ℚ(A_0/A_1)`, zero when `N = 0`.
    pub telescoping_lhs: usize,
    /// `ldim_ℚ(p)` of the generators of `A_0`.
    pub qp_dim: usize,
}

impl ChainCertificate {
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }
}

fn p_inverse(a: &SubspaceBasis, p: &Var) -> Result<SubspaceBasis> {
    a.scale(&RatFunc::var(p.clone()).inv()?)
}

fn p_times(a: &SubspaceBasis, p: &Var) -> Result<SubspaceBasis> {
    a.scale(&RatFunc::var(p.clone()))
}

/// `A_{i+1} + pA_{i+1}`.
fn widened(next: &SubspaceBasis, p: &Var) -> Result<SubspaceBasis> {
    next.sum(&p_times(next, p)?)
}

/// Runs the descent from `A_0 = span_ℚ(a0_gens)` down to `{0}`.
pub fn chain_descent(a0_gens: &[RatFunc], p: &Var) -> Result<ChainCertificate> {
    let q = CoeffField::Rationals;
    let qp = CoeffField::of([p.clone()]);
    let a0 = SubspaceBasis::span(&q, a0_gens)?;
    let guard = a0.dim() + 1;
    let mut chain = vec![a0];
    while !chain.last().expect("nonempty").is_zero() {
        if chain.len() > guard {
            return Err(Error::IterationGuard(guard));
        }
        let a = chain.last().expect("nonempty");
        let next = a.intersect(&p_inverse(a, p)?)?;
        if next.dim() >= a.dim() {
            // A nonzero fixed point would be a ℚ(p)-space of finite ℚ-dimension.
            return Err(Error::IterationGuard(guard));
        }
        chain.push(next);
    }
    let dims: Vec<usize> = chain.iter().map(SubspaceBasis::dim).collect();
    let mut step_terms = Vec::with_capacity(chain.len() - 1);
    let mut qp_step_terms = Vec::with_capacity(chain.len() - 1);
    for w in chain.windows(2) {
        let base = widened(&w[1], p)?;
        step_terms.push(ldim(&q, w[0].elements(), base.elements())?);
        qp_step_terms.push(ldim(&qp, w[0].elements(), base.elements())?);
    }
    let telescoping_lhs = if chain.len() > 1 {
        ldim(&q, chain[0].elements(), chain[1].elements())?
    } else {
        0
    };
    let qp_dim = ldim(&qp, a0_gens, &[])?;
    Ok(ChainCertificate {
        p: p.clone(),
        chain,
        dims,
        step_terms,
        qp_step_terms,
        telescoping_lhs,
        qp_dim,
    })
}

/// Recomputed sides of the telescoping identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelescopeReport {
    pub lhs: usize,
    pub sum: usize,
    /// First index `i` at which
    /// `ldim(A_i/A_{i+1}) = ldim(A_i/(A_{i+1}+pA_{i+1})) + ldim(A_{i+1}/A_{i+2})`
    /// fails, or at which a stored value disagrees with its recomputation.
    pub failing_step: Option<usize>,
}

impl TelescopeReport {
    pub fn holds(&self) -> bool {
        self.failing_step.is_none() && self.lhs == self.sum
    }
}

/// Recomputes `ldim_ℚ(A_0/A_1) = Σ ldim_ℚ(A_i/(A_{i+1}+pA_{i+1}))` and each
/// per-step equality from the stored bases.
pub fn telescoping_check(cert: &ChainCertificate) -> Result<TelescopeReport> {
    let q = CoeffField::Rationals;
    let zero = SubspaceBasis::zero(&q);
    let chain = &cert.chain;
    let n = chain.len();
    let at = |i: usize| chain.get(i).unwrap_or(&zero);
    let mut failing_step = None;
    let mut sum = 0;
    for i in 0..n.saturating_sub(1) {
        let quotient = ldim(&q, at(i).elements(), at(i + 1).elements())?;
        let step = ldim(
            &q,
            at(i).elements(),
            widened(at(i + 1), &cert.p)?.elements(),
        )?;
        let tail = ldim(&q, at(i + 1).elements(), at(i + 2).elements())?;
        sum += step;
        if failing_step.is_none()
            && (quotient != step + tail || cert.step_terms.get(i) != Some(&step))
        {
            failing_step = Some(i);
        }
    }
    let lhs = if n > 1 {
        ldim(&q, at(0).elements(), at(1).elements())?
    } else {
        0
    };
    if failing_step.is_none() && (lhs != cert.telescoping_lhs || !at(n - 1).is_zero()) {
        failing_step = Some(n - 1);
    }
    Ok(TelescopeReport {
        lhs,
        sum,
        failing_step,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

impl Relation {
    pub fn holds(self, lhs: usize, rhs: usize) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Le => "<=",
        }
    }
}

/// One evaluated (in)equality between two exact dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub label: &'static str,
    pub lhs: usize,
    pub relation: Relation,
    pub rhs: usize,
}

impl Comparison {
    pub fn new(label: &'static str, lhs: usize, relation: Relation, rhs: usize) -> Self {
        Comparison {
            label,
            lhs,
            relation,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.relation.holds(self.lhs, self.rhs)
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} {} {} [{}]",
            self.label,
            self.lhs,
            self.relation.symbol(),
            self.rhs,
            if self.holds() { "ok" } else { "violated" }
        )
    }
}

/// Everything computed on the way to `ldim_ℚ(px̄/x̄, k̄) ≥ ldim_ℚ(p)(x̄/k̄)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerInequalityReport {
    pub certificate: ChainCertificate,
    pub telescope: TelescopeReport,
    /// `ldim_ℚ(px̄ / x̄, k̄)`.
    pub lhs: usize,
    /// `ldim_ℚ(p)(x̄ / k̄)`.
    pub rhs: usize,
    /// Every intermediate comparison, final inequality last.
    pub comparisons: Vec<Comparison>,
}

impl PowerInequalityReport {
    pub fn holds(&self) -> bool {
        self.telescope.holds() && self.comparisons.iter().all(Comparison::holds)
    }
}

/// Kernel generators must lie in a field linearly disjoint from ℚ(p); in the
/// formal model that means not involving `p`.
pub(crate) fn check_kernel(kernel: &[RatFunc], p: &Var) -> Result<()> {
    match kernel.iter().find(|k| k.involves(|v| v == p)) {
        Some(k) => Err(Error::KernelNotDisjoint(k.to_string())),
        None => Ok(()),
    }
}

fn cat(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Evaluates the descent argument for `x̄` and declared kernel generators `k̄`.
pub fn power_inequality_check(
    x: &[RatFunc],
    kernel: &[RatFunc],
    p: &Var,
) -> Result<PowerInequalityReport> {
    check_kernel(kernel, p)?;
    let q = CoeffField::Rationals;
    let qp = CoeffField::of([p.clone()]);
    let pv = RatFunc::var(p.clone());
    let p_inv = pv.inv()?;
    let px: Vec<RatFunc> = x.iter().map(|e| e.mul(&pv)).collect();
    let pinv_k: Vec<RatFunc> = kernel.iter().map(|e| e.mul(&p_inv)).collect();

    let a0_gens = cat(&px, kernel);
    let certificate = chain_descent(&a0_gens, p)?;
    let telescope = telescoping_check(&certificate)?;

    let lhs = ldim(&q, &px, &cat(x, kernel))?;
    let rhs = ldim(&qp, x, kernel)?;

    let quotient = ldim(&q, &a0_gens, &cat(x, &pinv_k))?;
    let qp_span = ldim(&qp, &cat(x, &pinv_k), &[])?;
    let qp_steps: usize = certificate.qp_step_terms.iter().sum();

    let qp_span_shifted = ldim(&qp, &cat(x, kernel), &[])?;
    let qp_k = ldim(&qp, kernel, &[])?;
    let qp_split = rhs + qp_k;

    let q_k = ldim(&q, kernel, &[])?;
    let drop_shift = ldim(&q, &a0_gens, x)?;
    let with_kernel = lhs + ldim(&q, kernel, x)?;
    let drop_base = lhs + q_k;
    let disjoint_base = lhs + qp_k;

    let comparisons = vec![
        Comparison::new(
            "quotient_is_first_step",
            quotient,
            Relation::Eq,
            certificate.telescoping_lhs,
        ),
        Comparison::new(
            "telescoping",
            certificate.telescoping_lhs,
            Relation::Eq,
            telescope.sum,
        ),
        Comparison::new("step_domination", telescope.sum, Relation::Ge, qp_steps),
        Comparison::new(
            "qp_steps_sum_to_qp_dim",
            qp_steps,
            Relation::Eq,
            certificate.qp_dim,
        ),
        Comparison::new(
            "quotient_dominates_qp_span",
            quotient,
            Relation::Ge,
            qp_span,
        ),
        Comparison::new("qp_span_shift", qp_span, Relation::Eq, qp_span_shifted),
        Comparison::new("qp_span_addition", qp_span_shifted, Relation::Eq, qp_split),
        Comparison::new("drop_shift", quotient, Relation::Le, drop_shift),
        Comparison::new("kernel_addition", drop_shift, Relation::Eq, with_kernel),
        Comparison::new("drop_base", with_kernel, Relation::Le, drop_base),
        Comparison::new("disjoint_kernel", drop_base, Relation::Eq, disjoint_base),
        Comparison::new("final", lhs, Relation::Ge, rhs),
    ];
    Ok(PowerInequalityReport {
        certificate,
        telescope,
        lhs,
        rhs,
        comparisons,
    })
}

/// Enlarges a kernel prefix until both relative dimensions of the
/// comparison stabilize, returning the prefix length used.
pub fn stabilized_kernel_prefix(x: &[RatFunc], kernel: &[RatFunc], p: &Var) -> Result<usize> {
    let q = CoeffField::Rationals;
    let qp = CoeffField::of([p.clone()]);
    let px: Vec<RatFunc> = x.iter().map(|e| e.mul(&RatFunc::var(p.clone()))).collect();
    let values = |k: &[RatFunc]| -> Result<(usize, usize)> {
        Ok((ldim(&q, &px, &cat(x, k))?, ldim(&qp, x, k)?))
    };
    let full = values(kernel)?;
    for n in 0..=kernel.len() {
        if values(&kernel[..n])? == full {
            return Ok(n);
        }
    }
    Ok(kernel.len())
}
