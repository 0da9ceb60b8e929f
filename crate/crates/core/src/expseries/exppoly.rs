use std::collections::BTreeMap;

use super::series::TruncatedSeries;
use crate::arith::{parse_ratfunc, Field, MultiPoly, Var};
use crate::error::{Error, Result};

/// An element of `ℤ[X̄, e^{X̄}]`: a polynomial in `x1..xn, y1..yn` with
/// integer coefficients, where `yi` stands for `e^{xi}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpPolynomial {
    n: usize,
    poly: MultiPoly,
}

impl ExpPolynomial {
    /// The variable `X_i` (1-based).
    pub fn x(i: usize) -> Var {
        Var::aux(&format!("x{i}"))
    }

    /// The variable `Y_i = e^{X_i}` (1-based).
    pub fn y(i: usize) -> Var {
        Var::aux(&format!("y{i}"))
    }

    pub fn alphabet(n: usize) -> Vec<Var> {
        (1..=n).flat_map(|i| [Self::x(i), Self::y(i)]).collect()
    }

    pub fn new(n: usize, poly: MultiPoly) -> Result<Self> {
        let alphabet = Self::alphabet(n);
        if let Some(v) = poly.variables().into_iter().find(|v| !alphabet.contains(v)) {
            return Err(Error::UnknownVariable(v.name().to_string()));
        }
        if !poly.has_integer_coeffs() {
            return Err(Error::Domain(format!(
                "exponential polynomial `{poly}` must have integer coefficients"
            )));
        }
        Ok(ExpPolynomial { n, poly })
    }

    /// Parses e.g. `y1 - 1 - x1` for arity `n`.
    pub fn parse(n: usize, src: &str) -> Result<Self> {
        let f = parse_ratfunc(src, &Self::alphabet(n))?;
        if !f.is_polynomial() {
            return Err(Error::Domain(format!("`{src}` is not a polynomial")));
        }
        Self::new(n, f.num().clone())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    fn derivative(&self, v: &Var) -> ExpPolynomial {
        ExpPolynomial {
            n: self.n,
            poly: self.poly.derivative(v),
        }
    }
}

impl std::fmt::Display for ExpPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Values of `x̄` and `e^{x̄}` shared by several evaluations.
struct Point<F: Field> {
    values: BTreeMap<Var, TruncatedSeries<F>>,
    template: TruncatedSeries<F>,
}

impl<F: Field> Point<F> {
    fn new(n: usize, xs: &[TruncatedSeries<F>]) -> Result<Self> {
        if xs.len() != n {
            return Err(Error::Arity {
                expected: n,
                found: xs.len(),
            });
        }
        let template = match xs.first() {
            Some(x) => xs
                .iter()
                .fold(TruncatedSeries::zero(x.vars(), x.order()), |acc, x| {
                    acc.add(&x.scale(&F::zero_el()))
                }),
            None => TruncatedSeries::zero(&[], 0),
        };
        let mut values = BTreeMap::new();
        for (i, x) in xs.iter().enumerate() {
            values.insert(ExpPolynomial::x(i + 1), x.clone());
            values.insert(ExpPolynomial::y(i + 1), x.exp()?);
        }
        Ok(Point { values, template })
    }

    fn eval(&self, f: &ExpPolynomial) -> TruncatedSeries<F> {
        let one = TruncatedSeries::one(self.template.vars(), self.template.order());
        let mut acc = self.template.clone();
        let mut powers: BTreeMap<(Var, u32), TruncatedSeries<F>> = BTreeMap::new();
        for (m, c) in f.poly.terms() {
            let mut term = one.scale(&F::from_rational(c));
            for (v, e) in m.pairs() {
                let p = powers
                    .entry((v.clone(), *e))
                    .or_insert_with(|| self.values[v].pow(*e));
                term = term.mul(p);
            }
            acc = acc.add(&term);
        }
        acc
    }
}

/// `f(x̄, e^{x̄})` for `x̄` with zero constant terms.
pub fn eval_exp_poly<F: Field>(
    f: &ExpPolynomial,
    xs: &[TruncatedSeries<F>],
) -> Result<TruncatedSeries<F>> {
    Ok(Point::new(f.n, xs)?.eval(f))
}

/// How the Jacobian of an exponential-polynomial system is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum JacobianMode {
    /// Derivative of the composed map `x̄ ↦ f(x̄, e^{x̄})`:
    /// `∂f_i/∂X_j + ∂f_i/∂Y_j · e^{x_j}`.
    #[default]
    Total,
    /// The formal partial `∂f_i/∂X_j` alone.
    FormalPartial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpAlgWitness<F: Field> {
    pub values: Vec<TruncatedSeries<F>>,
    /// Every `f_i(x̄, e^{x̄})` vanishes up to its certified order.
    pub vanishes: bool,
    pub jacobian: Vec<Vec<TruncatedSeries<F>>>,
    pub jacobian_det: TruncatedSeries<F>,
    /// `vanishes` and the determinant is nonzero at the base point.
    pub holds: bool,
}

fn det<F: Field>(m: &[Vec<TruncatedSeries<F>>], zero: &TruncatedSeries<F>) -> TruncatedSeries<F> {
    let n = m.len();
    match n {
        0 => TruncatedSeries::one(zero.vars(), zero.order()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = zero.clone();
            for j in 0..n {
                let minor: Vec<Vec<TruncatedSeries<F>>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][j].mul(&det(&minor, zero));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }
    }
}

/// Checks that `x̄` is a zero of `f̄` with nonsingular Jacobian at the point.
pub fn expalg_witness<F: Field>(
    fs: &[ExpPolynomial],
    xs: &[TruncatedSeries<F>],
    mode: JacobianMode,
) -> Result<ExpAlgWitness<F>> {
    let n = xs.len();
    if fs.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: fs.len(),
        });
    }
    if let Some(f) = fs.iter().find(|f| f.n != n) {
        return Err(Error::Arity {
            expected: n,
            found: f.n,
        });
    }
    let point = Point::new(n, xs)?;
    let values: Vec<TruncatedSeries<F>> = fs.iter().map(|f| point.eval(f)).collect();
    let vanishes = values.iter().all(|v| v.is_zero_up_to(v.certified()));
    let jacobian: Vec<Vec<TruncatedSeries<F>>> = fs
        .iter()
        .map(|f| {
            (1..=n)
                .map(|j| {
                    let dx = point.eval(&f.derivative(&ExpPolynomial::x(j)));
                    match mode {
                        JacobianMode::FormalPartial => dx,
                        JacobianMode::Total => {
                            let dy = point.eval(&f.derivative(&ExpPolynomial::y(j)));
                            dx.add(&dy.mul(&point.values[&ExpPolynomial::y(j)]))
                        }
                    }
                })
                .collect()
        })
        .collect();
    let jacobian_det = det(&jacobian, &point.template);
    let holds =
        vanishes && jacobian_det.certified() >= 0 && !jacobian_det.constant_term().eq_zero();
    Ok(ExpAlgWitness {
        values,
        vanishes,
        jacobian,
        jacobian_det,
        holds,
    })
}
