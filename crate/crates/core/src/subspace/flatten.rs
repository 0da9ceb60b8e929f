use std::collections::BTreeSet;
use std::fmt;

use crate::arith::{poly_lcm, Field, Monomial, MultiPoly, RatFunc, Rational, Var, VarKind};
use crate::error::{Error, Result};
use crate::linalg::{rank, ExactMatrix};

/// The coefficient field `K` of a linear-dimension computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffField {
    /// ℚ
    Rationals,
    /// ℚ(p̄): every power variable is a scalar.
    Powers,
    /// ℚ(S) for an explicit set of variables.
    FunctionsOf(Vec<Var>),
}

impl CoeffField {
    pub fn of(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: Vec<Var> = vars.into_iter().collect();
        v.sort();
        v.dedup();
        if v.is_empty() {
            CoeffField::Rationals
        } else {
            CoeffField::FunctionsOf(v)
        }
    }

    pub fn is_scalar_var(&self, v: &Var) -> bool {
        match self {
            CoeffField::Rationals => false,
            CoeffField::Powers => v.kind() == VarKind::Power,
            CoeffField::FunctionsOf(s) => s.contains(v),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, CoeffField::Rationals)
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rationals => f.write_str("Q"),
            CoeffField::Powers => f.write_str("Q(pbar)"),
            CoeffField::FunctionsOf(s) => {
                let names: Vec<&str> = s.iter().map(Var::name).collect();
                write!(f, "Q({})", names.join(","))
            }
        }
    }
}

/// Coordinatization of a finite set of field elements as vectors over `K`.
///
/// Each element equals `Σ coord_j · support_j / denominator`. Over ℚ the
/// denominator is the lcm of the elements' denominators (negative powers
/// of `p` become a cleared common denominator); over a function field the
/// denominators are absorbed into the coordinates and `denominator = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatteningContext {
    pub field: CoeffField,
    pub residual_vars: Vec<Var>,
    pub support: Vec<Monomial>,
    pub denominator: MultiPoly,
}

/// Coordinate matrix, one row per element, over the context's field.
#[derive(Debug, Clone, PartialEq)]
pub enum Coordinates {
    Rational(ExactMatrix<Rational>),
    Function(ExactMatrix<RatFunc>),
}

impl Coordinates {
    pub fn rows(&self) -> usize {
        match self {
            Coordinates::Rational(m) => m.rows(),
            Coordinates::Function(m) => m.rows(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Coordinates::Rational(m) => rank(m),
            Coordinates::Function(m) => rank(m),
        }
    }

    /// Rank of the sub-matrix made of the given rows.
    pub fn rank_of_rows(&self, rows: impl Iterator<Item = usize> + Clone) -> usize {
        fn sub<F: Field>(m: &ExactMatrix<F>, rows: impl Iterator<Item = usize>) -> ExactMatrix<F> {
            ExactMatrix::from_rows(rows.map(|i| m.row(i).to_vec()).collect(), m.cols())
        }
        match self {
            Coordinates::Rational(m) => rank(&sub(m, rows)),
            Coordinates::Function(m) => rank(&sub(m, rows)),
        }
    }
}

/// Flattens `elements` over `field` into one shared coordinate system.
pub fn flatten(
    elements: &[RatFunc],
    field: &CoeffField,
) -> Result<(FlatteningContext, Coordinates)> {
    match field {
        CoeffField::Rationals => {
            let (ctx, m) = flatten_rational(elements);
            Ok((ctx, Coordinates::Rational(m)))
        }
        _ => {
            let (ctx, m) = flatten_function(elements, field)?;
            Ok((ctx, Coordinates::Function(m)))
        }
    }
}

fn residual_vars(support: &[Monomial]) -> Vec<Var> {
    let set: BTreeSet<Var> = support.iter().flat_map(|m| m.vars().cloned()).collect();
    set.into_iter().collect()
}

fn flatten_rational(elements: &[RatFunc]) -> (FlatteningContext, ExactMatrix<Rational>) {
    let denominator = elements
        .iter()
        .filter(|e| !e.is_zero())
        .fold(MultiPoly::one(), |acc, e| poly_lcm(&acc, e.den()));
    let nums: Vec<MultiPoly> = elements
        .iter()
        .map(|e| {
            if e.is_zero() {
                MultiPoly::zero()
            } else {
                e.num() * &denominator.div_exact(e.den()).expect("lcm is a multiple")
            }
        })
        .collect();
    let support: Vec<Monomial> = nums
        .iter()
        .flat_map(|n| n.terms().map(|(m, _)| m.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rows = nums
        .iter()
        .map(|n| {
            support
                .iter()
                .map(|m| {
                    n.terms()
                        .find(|(k, _)| *k == m)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(Rational::zero_el)
                })
                .collect()
        })
        .collect();
    let cols = support.len();
    (
        FlatteningContext {
            field: CoeffField::Rationals,
            residual_vars: residual_vars(&support),
            support,
            denominator,
        },
        ExactMatrix::from_rows(rows, cols),
    )
}

fn flatten_function(
    elements: &[RatFunc],
    field: &CoeffField,
) -> Result<(FlatteningContext, ExactMatrix<RatFunc>)> {
    let is_scalar = |v: &Var| field.is_scalar_var(v);
    let mut split = Vec::with_capacity(elements.len());
    for e in elements {
        if e.den().involves(|v| !is_scalar(v)) {
            return Err(Error::UnsupportedPlacement(format!(
                "denominator of `{e}` is not in {field}"
            )));
        }
        split.push(e.num().split_by(is_scalar));
    }
    let support: Vec<Monomial> = split
        .iter()
        .flat_map(|s| s.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut rows = Vec::with_capacity(elements.len());
    for (e, s) in elements.iter().zip(&split) {
        let mut row = Vec::with_capacity(support.len());
        for m in &support {
            row.push(match s.get(m) {
                Some(c) => RatFunc::new(c.clone(), e.den().clone())?,
                None => RatFunc::zero(),
            });
        }
        rows.push(row);
    }
    let cols = support.len();
    Ok((
        FlatteningContext {
            field: field.clone(),
            residual_vars: residual_vars(&support),
            support,
            denominator: MultiPoly::one(),
        },
        ExactMatrix::from_rows(rows, cols),
    ))
}

impl FlatteningContext {
    /// Rebuilds the field element with the given coordinates.
    pub fn reconstruct<F: Field>(&self, coords: &[F]) -> RatFunc {
        let mut acc = RatFunc::zero();
        for (c, m) in coords.iter().zip(&self.support) {
            if c.eq_zero() {
                continue;
            }
            let term = c.to_ratfunc().mul(&RatFunc::poly(MultiPoly::term(
                Rational::one_el(),
                m.clone(),
            )));
            acc = acc.add(&term);
        }
        acc.div(&RatFunc::poly(self.denominator.clone()))
            .expect("context denominator is nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_ratfunc;

    fn vars() -> Vec<Var> {
        vec![Var::power("p"), Var::generic("q")]
    }

    fn els(src: &[&str]) -> Vec<RatFunc> {
        src.iter()
            .map(|s| parse_ratfunc(s, &vars()).unwrap())
            .collect()
    }

    #[test]
    fn monomials_are_the_basis() {
        let (ctx, m) = flatten_rational(&els(&["1", "p", "p^2"]));
        assert_eq!(ctx.support.len(), 3);
        assert_eq!(m, ExactMatrix::identity(3));
    }

    #[test]
    fn power_coefficients() {
        let (ctx, m) = flatten_function(&els(&["q", "p*q"]), &CoeffField::Powers).unwrap();
        assert_eq!(ctx.support, vec![Monomial::var(Var::generic("q"))]);
        assert_eq!(m.row(1), &[RatFunc::var(Var::power("p"))]);
    }

    #[test]
    fn proportional_rows() {
        let (_, m) = flatten_rational(&els(&["1 + p", "2 + 2*p"]));
        assert_eq!(
            m.row(1),
            &[
                Rational::from_integer(2.into()),
                Rational::from_integer(2.into())
            ]
        );
    }

    #[test]
    fn reconstruction_is_exact() {
        let xs = els(&["1/p + q", "(q^2 - 1)/(p^2 + 1)", "3/2"]);
        let (ctx, m) = flatten_rational(&xs);
        for (i, x) in xs.iter().enumerate() {
            assert_eq!(&ctx.reconstruct(m.row(i)), x);
        }
        let (ctx, m) = flatten_function(&xs, &CoeffField::Powers).unwrap();
        for (i, x) in xs.iter().enumerate() {
            assert_eq!(&ctx.reconstruct(m.row(i)), x);
        }
    }

    #[test]
    fn generic_denominator_is_rejected_over_powers() {
        let r = flatten_function(&els(&["1/(p + q)"]), &CoeffField::Powers);
        assert!(matches!(r, Err(Error::UnsupportedPlacement(_))));
    }
}
