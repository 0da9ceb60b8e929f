//! Sparse multivariate polynomials with rational coefficients.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::rational::{format_rational, is_negative, Rational};
use super::var::Var;
use crate::error::{Error, Result};

/// A polynomial over ℚ. Terms are keyed by graded-lex ordered monomials;
/// no zero coefficient is ever stored, so the zero polynomial has no terms
/// and structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Variables that occur, in the global order.
    pub fn variables(&self) -> Vec<Var> {
        let set: BTreeSet<Var> = self.terms.keys().flat_map(|m| m.vars().cloned()).collect();
        set.into_iter().collect()
    }

    pub fn involves(&self, pred: impl Fn(&Var) -> bool) -> bool {
        self.terms.keys().any(|m| m.vars().any(&pred))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    /// Leading term under graded-lex.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    /// Divides out the leading coefficient; zero stays zero.
    pub fn monic(&self) -> MultiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading_coeff();
        self.scale(&lc.recip())
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact evaluation; every occurring variable needs a value.
    pub fn eval(&self, value: &impl Fn(&Var) -> Option<Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        let mut cache: BTreeMap<Var, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.pairs() {
                let x = match cache.get(v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or_else(|| Error::MissingValue(v.to_string()))?;
                        cache.insert(v.clone(), x.clone());
                        x
                    }
                };
                t *= super::rational::pow_i(&x, *e as i64)?;
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes polynomials for some variables; others are kept.
    pub fn substitute(&self, value: &impl Fn(&Var) -> Option<MultiPoly>) -> MultiPoly {
        let mut total = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut t = MultiPoly::one();
            let mut kept = Vec::new();
            for (v, e) in m.pairs() {
                match value(v) {
                    Some(p) => t = &t * &p.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            let t = t.mul_monomial(&Monomial::from_pairs(kept), c);
            total = &total + &t;
        }
        total
    }

    pub fn derivative(&self, v: &Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let (e, rest) = m.remove(v);
            if e == 0 {
                return None;
            }
            let m2 = rest.mul(&Monomial::var_pow(v.clone(), e - 1));
            Some((m2, c * Rational::from_integer(e.into())))
        }))
    }

    /// Coefficients in `v`: entry `k` is the coefficient of `v^k`, free of `v`.
    pub fn coeffs_in(&self, v: &Var) -> Vec<MultiPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![MultiPoly::zero(); if self.is_zero() { 0 } else { d + 1 }];
        for (m, c) in &self.terms {
            let (e, rest) = m.remove(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(v: &Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            let vk = Monomial::var_pow(v.clone(), k as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&vk), a.clone());
            }
        }
        out
    }

    /// Groups terms by the monomial over the variables *not* selected by
    /// `is_coeff`; each group's coefficient is a polynomial in the selected ones.
    pub fn split_by(&self, is_coeff: impl Fn(&Var) -> bool) -> BTreeMap<Monomial, MultiPoly> {
        let mut out: BTreeMap<Monomial, MultiPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (coef_part, rest) = m.split(&is_coeff);
            out.entry(rest).or_default().add_term(coef_part, c.clone());
        }
        out
    }

    /// Exact quotient `self / g`, or `None` when `g` does not divide `self`.
    pub fn div_exact(&self, g: &MultiPoly) -> Option<MultiPoly> {
        if g.is_zero() {
            return None;
        }
        if let Some(c) = g.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm, lc) = g.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.div(&lm)?;
            let qc = c / &lc;
            rem = &rem - &g.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Integer-coefficient check (for exponential polynomials).
    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

/// Which operation [`poly_arith`] performs.
#[derive(Debug, Clone)]
pub enum PolyOp<'a> {
    Add(&'a MultiPoly),
    Mul(&'a MultiPoly),
    Neg,
    Eval(&'a [(Var, Rational)]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyResult {
    Poly(MultiPoly),
    Value(Rational),
}

pub fn poly_arith(f: &MultiPoly, op: PolyOp<'_>) -> Result<PolyResult> {
    Ok(match op {
        PolyOp::Add(g) => PolyResult::Poly(f + g),
        PolyOp::Mul(g) => PolyResult::Poly(f * g),
        PolyOp::Neg => PolyResult::Poly(-f),
        PolyOp::Eval(point) => PolyResult::Value(
            f.eval(&|v: &Var| point.iter().find(|(w, _)| w == v).map(|(_, x)| x.clone()))?,
        ),
    })
}

impl fmt::Display for MultiPoly {
    /// Highest graded-lex term first, in the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    fn p() -> MultiPoly {
        MultiPoly::var(Var::power("p"))
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::generic("q"))
    }

    #[test]
    fn difference_of_squares() {
        let prod = &(&p() - &q()) * &(&p() + &q());
        let expected = &(&p() * &p()) - &(&q() * &q());
        assert_eq!(prod, expected);
        assert_eq!(prod.to_string(), "p^2 - q^2");
    }

    #[test]
    fn cancellation_gives_empty_terms() {
        let p2 = &p() * &p();
        let r = &p2 + &(-&p2);
        assert!(r.is_zero());
        assert_eq!(r.num_terms(), 0);
    }

    #[test]
    fn eval_substitution() {
        let f = &(&p() * &p()) + &q();
        let point = [(Var::power("p"), rat(2, 1)), (Var::generic("q"), rat(1, 2))];
        assert_eq!(
            poly_arith(&f, PolyOp::Eval(&point)).unwrap(),
            PolyResult::Value(rat(9, 2))
        );
        assert!(matches!(
            poly_arith(&f, PolyOp::Eval(&point[..1])),
            Err(Error::MissingValue(_))
        ));
    }

    #[test]
    fn exact_division() {
        let f = &(&p() * &p()) - &q().pow(2);
        let g = &p() - &q();
        assert_eq!(f.div_exact(&g), Some(&p() + &q()));
        assert_eq!(f.div_exact(&p()), None);
    }

    #[test]
    fn derivative_and_coeffs() {
        let f = &(&p().pow(2) * &q()).scale(&rat(3, 1)) + &p();
        let v = Var::power("p");
        assert_eq!(
            f.derivative(&v),
            &(&p() * &q()).scale(&rat(6, 1)) + &MultiPoly::one()
        );
        let cs = f.coeffs_in(&v);
        assert_eq!(cs.len(), 3);
        assert_eq!(MultiPoly::from_coeffs_in(&v, &cs), f);
    }
}
