use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{int, Field, Monomial, MultiPoly, RatFunc, Rational, Var};
use crate::error::{Error, Result};

/// A multivariate power series in `vars`, truncated above total degree
/// `order`, with coefficients in `F` (ℚ or ℚ(p̄)).
///
/// `certified` is the largest total degree up to which every coefficient
/// is exact; it is `-1` when nothing is certified (a derivative of an
/// order-0 value). `exact` marks values that are polynomials with nothing
/// lost to truncation.
#[derive(Clone, PartialEq)]
pub struct TruncatedSeries<F: Field = Rational> {
    vars: Vec<Var>,
    order: u32,
    certified: i32,
    exact: bool,
    terms: BTreeMap<Monomial, F>,
}

fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    if a == b {
        return a.to_vec();
    }
    a.iter()
        .chain(b)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

impl<F: Field> TruncatedSeries<F> {
    pub fn zero(vars: &[Var], order: u32) -> Self {
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        TruncatedSeries {
            vars,
            order,
            certified: order as i32,
            exact: true,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[Var], order: u32, c: F) -> Self {
        let mut s = Self::zero(vars, order);
        s.insert(Monomial::one(), c);
        s
    }

    pub fn one(vars: &[Var], order: u32) -> Self {
        Self::constant(vars, order, F::one_el())
    }

    /// The series variable `v` itself.
    pub fn var(vars: &[Var], order: u32, v: &Var) -> Result<Self> {
        if !vars.contains(v) {
            return Err(Error::UnknownVariable(v.name().to_string()));
        }
        let mut s = Self::zero(vars, order);
        if order >= 1 {
            s.insert(Monomial::var(v.clone()), F::one_el());
        } else {
            s.exact = false;
        }
        Ok(s)
    }

    /// Builds a series from explicit terms; terms above `order` are dropped
    /// (and the value marked inexact).
    pub fn from_terms(
        vars: &[Var],
        order: u32,
        terms: impl IntoIterator<Item = (Monomial, F)>,
    ) -> Result<Self> {
        let mut s = Self::zero(vars, order);
        for (m, c) in terms {
            if let Some(v) = m.vars().find(|v| !s.vars.contains(v)) {
                return Err(Error::UnknownVariable(v.name().to_string()));
            }
            if m.degree() > order {
                s.exact &= c.eq_zero();
                continue;
            }
            let sum = s.coeff(&m).plus(&c);
            s.insert(m, sum);
        }
        Ok(s)
    }

    /// A polynomial whose series variables are `vars`; every other variable
    /// is a coefficient and must lie in `F`.
    pub fn from_poly(vars: &[Var], order: u32, p: &MultiPoly) -> Result<Self> {
        let split = p.split_by(|v| !vars.contains(v));
        let mut terms = Vec::with_capacity(split.len());
        for (m, c) in split {
            let rf = RatFunc::poly(c);
            let c = F::from_ratfunc(&rf).ok_or_else(|| {
                Error::Domain(format!(
                    "coefficient `{rf}` is not in the coefficient field"
                ))
            })?;
            terms.push((m, c));
        }
        Self::from_terms(vars, order, terms)
    }

    fn insert(&mut self, m: Monomial, c: F) {
        if c.eq_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn certified(&self) -> i32 {
        self.certified
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero_el)
    }

    pub fn constant_term(&self) -> F {
        self.coeff(&Monomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient of total degree `≤ order` vanishes.
    pub fn is_zero_up_to(&self, order: i32) -> bool {
        self.terms.keys().all(|m| m.degree() as i32 > order)
    }

    /// Equality of all coefficients of total degree `≤ order`.
    pub fn eq_up_to(&self, other: &Self, order: i32) -> bool {
        self.sub(other).is_zero_up_to(order)
    }

    /// Equality up to the smaller certified order of the two sides.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.eq_up_to(other, self.certified.min(other.certified))
    }

    /// Lowers the truncation order to `order` (never raises it).
    pub fn truncate(&self, order: u32) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let mut s = self.clone();
        s.order = order;
        s.certified = s.certified.min(order as i32);
        let before = s.terms.len();
        s.terms.retain(|m, _| m.degree() <= order);
        s.exact &= s.terms.len() == before;
        s
    }

    /// Re-expresses `self` over `vars ⊇ self.vars()`.
    fn widen(&self, vars: &[Var]) -> Self {
        let mut s = self.clone();
        s.vars = vars.to_vec();
        s
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let vars = union_vars(&self.vars, &other.vars);
        let order = self.order.min(other.order);
        (
            self.widen(&vars).truncate(order),
            other.widen(&vars).truncate(order),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b) = self.align(other);
        for (m, c) in b.terms {
            let sum = a.coeff(&m).plus(&c);
            a.insert(m, sum);
        }
        a.certified = a.certified.min(b.certified);
        a.exact &= b.exact;
        a
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.terms.values_mut() {
            *c = c.negate();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.eq_zero() {
            let mut z = Self::zero(&self.vars, self.order);
            z.certified = self.certified;
            return z;
        }
        let mut s = self.clone();
        for v in s.terms.values_mut() {
            *v = v.times(c);
        }
        s
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let order = a.order;
        let mut out = Self::zero(&a.vars, order);
        let mut dropped = false;
        let split =
            F::common_denominator(a.terms.values()).zip(F::common_denominator(b.terms.values()));
        if let Some(((da, na), (db, nb))) = split {
            let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
            for ((ma, ca), x) in a.terms.keys().map(|m| (m, m.degree())).zip(&na) {
                for (mb, y) in b.terms.keys().zip(&nb) {
                    if ca + mb.degree() > order {
                        dropped = true;
                        continue;
                    }
                    *acc.entry(ma.mul(mb)).or_default() += x * y;
                }
            }
            let den = da * db;
            for (m, n) in acc {
                if !n.is_zero() {
                    out.terms
                        .insert(m, F::from_rational(&Rational::new(n, den.clone())));
                }
            }
            out.certified = a.certified.min(b.certified);
            out.exact = a.exact && b.exact && !dropped;
            return out;
        }
        for (ma, ca) in &a.terms {
            let da = ma.degree();
            for (mb, cb) in &b.terms {
                if da + mb.degree() > order {
                    dropped = true;
                    continue;
                }
                let m = ma.mul(mb);
                let sum = out.coeff(&m).plus(&ca.times(cb));
                out.insert(m, sum);
            }
        }
        out.certified = a.certified.min(b.certified);
        out.exact = a.exact && b.exact && !dropped;
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.vars, self.order);
        acc.certified = if k == 0 {
            self.order as i32
        } else {
            self.certified
        };
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `1/a` for a certified nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let c = self.constant_term();
        if self.certified < 0 || c.eq_zero() {
            return Err(Error::InverseOfZero);
        }
        let c_inv = c.inverse().expect("nonzero constant");
        // a = c(1 + u); 1/a = c⁻¹ Σ (−u)^k.
        let minus_u = self
            .scale(&c_inv)
            .sub(&Self::one(&self.vars, self.order))
            .neg();
        let mut acc = Self::one(&self.vars, self.order);
        let mut power = Self::one(&self.vars, self.order);
        for _ in 0..self.order {
            power = power.mul(&minus_u);
            if power.is_zero() {
                break;
            }
            acc = acc.add(&power);
        }
        let mut out = acc.scale(&c_inv);
        out.certified = self.certified;
        out.exact = minus_u.is_zero() && self.exact;
        Ok(out)
    }

    fn require_constant(&self, want: &F, what: &str) -> Result<()> {
        if self.certified < 0 || self.constant_term() != *want {
            return Err(Error::Domain(format!(
                "{what} needs constant term {want}, got {}",
                self.constant_term()
            )));
        }
        Ok(())
    }

    /// `Σ_{k ≤ T} a^k / k!` for `a` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        self.require_constant(&F::zero_el(), "exp")?;
        let mut acc = Self::one(&self.vars, self.order);
        let mut term = Self::one(&self.vars, self.order);
        for k in 1..=self.order {
            term = term
                .mul(self)
                .scale(&F::from_rational(&Rational::new(1.into(), k.into())));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        acc.certified = self.certified;
        acc.exact = self.is_zero() && self.exact;
        Ok(acc)
    }

    /// `Σ_{k ≥ 1} (−1)^{k+1} u^k / k` for `a = 1 + u`.
    pub fn log(&self) -> Result<Self> {
        self.require_constant(&F::one_el(), "log")?;
        let u = self.sub(&Self::one(&self.vars, self.order));
        let mut acc = Self::zero(&self.vars, self.order);
        let mut power = Self::one(&self.vars, self.order);
        for k in 1..=self.order as i64 {
            power = power.mul(&u);
            if power.is_zero() {
                break;
            }
            let c = Rational::new((if k % 2 == 1 { 1 } else { -1 }).into(), k.into());
            acc = acc.add(&power.scale(&F::from_rational(&c)));
        }
        acc.certified = self.certified;
        acc.exact = u.is_zero() && self.exact;
        Ok(acc)
    }

    /// `∂/∂v`; lowers the certified order by one.
    pub fn derive(&self, v: &Var) -> Result<Self> {
        if !self.vars.contains(v) {
            return Err(Error::UnknownVariable(v.name().to_string()));
        }
        let mut out = Self::zero(&self.vars, self.order);
        for (m, c) in &self.terms {
            let (e, rest) = m.remove(v);
            if e == 0 {
                continue;
            }
            let m = rest.mul(&Monomial::var_pow(v.clone(), e - 1));
            let sum = out
                .coeff(&m)
                .plus(&c.times(&F::from_rational(&int(e as i64))));
            out.insert(m, sum);
        }
        out.certified = self.certified - 1;
        out.exact = self.exact;
        Ok(out)
    }

    /// Derivative in the `i`-th series variable.
    pub fn derive_index(&self, i: usize) -> Result<Self> {
        let v = self
            .vars
            .get(i)
            .cloned()
            .ok_or_else(|| Error::UnknownVariable(format!("#{i}")))?;
        self.derive(&v)
    }

    /// The truncated value as a rational function (a polynomial in the
    /// series variables with coefficients in `F`).
    pub fn to_ratfunc(&self) -> RatFunc {
        self.terms.iter().fold(RatFunc::zero(), |acc, (m, c)| {
            acc.add(
                &c.to_ratfunc()
                    .mul(&RatFunc::poly(MultiPoly::term(int(1), m.clone()))),
            )
        })
    }

    /// Embeds a ℚ-series into a wider coefficient field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> TruncatedSeries<G> {
        TruncatedSeries {
            vars: self.vars.clone(),
            order: self.order,
            certified: self.certified,
            exact: self.exact,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f(c)))
                .filter(|(_, c)| !c.eq_zero())
                .collect(),
        }
    }
}

impl<F: Field> fmt::Display for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '+']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let needs_parens = body.contains(' ') && !m.is_one();
            let body = if needs_parens {
                format!("({body})")
            } else {
                body
            };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&body)?;
            } else if body == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{body}*{m}")?;
            }
        }
        if !self.exact && !f.alternate() {
            write!(f, " + O(deg {})", self.order + 1)?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for TruncatedSeries<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruncatedSeries[T={}, certified={}{}]({self})",
            self.order,
            self.certified,
            if self.exact { ", exact" } else { "" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    type S = TruncatedSeries<Rational>;

    fn t() -> Var {
        Var::series("t")
    }
    fn s() -> Var {
        Var::series("s")
    }
    fn tv(order: u32) -> S {
        S::var(&[t()], order, &t()).unwrap()
    }
    fn one(order: u32) -> S {
        S::one(&[t()], order)
    }
    fn mono(c: Rational, k: u32) -> (Monomial, Rational) {
        (Monomial::var_pow(t(), k), c)
    }

    #[test]
    fn difference_of_squares() {
        let a = one(8).add(&tv(8));
        let b = one(8).sub(&tv(8));
        let expect = S::from_terms(&[t()], 8, [mono(int(1), 0), mono(int(-1), 2)]).unwrap();
        assert_eq!(a.mul(&b), expect);
    }

    #[test]
    fn truncation_drops_high_products() {
        let t5 = tv(8).pow(5);
        let p = t5.mul(&t5);
        assert!(p.is_zero());
        assert_eq!(p.certified(), 8);
        assert!(!p.is_exact());
    }

    #[test]
    fn geometric_inverse() {
        let inv = one(6).sub(&tv(6)).inv().unwrap();
        let expect = S::from_terms(&[t()], 6, (0..=6).map(|k| mono(int(1), k))).unwrap();
        assert!(inv.eq_up_to(&expect, 6));
    }

    #[test]
    fn exp_of_t() {
        let e = tv(4).exp().unwrap();
        let expect = S::from_terms(
            &[t()],
            4,
            [
                mono(int(1), 0),
                mono(int(1), 1),
                mono(rat(1, 2), 2),
                mono(rat(1, 6), 3),
                mono(rat(1, 24), 4),
            ],
        )
        .unwrap();
        assert!(e.eq_up_to(&expect, 4));
        assert!(e.log().unwrap().eq_up_to(&tv(4), 4));
    }

    #[test]
    fn exp_domain() {
        assert!(matches!(one(4).add(&tv(4)).exp(), Err(Error::Domain(_))));
        assert!(matches!(tv(4).log(), Err(Error::Domain(_))));
        assert!(matches!(tv(4).inv(), Err(Error::InverseOfZero)));
    }

    #[test]
    fn partial_derivatives() {
        let vars = [t(), s()];
        let ts = S::var(&vars, 8, &t()).unwrap();
        let ss = S::var(&vars, 8, &s()).unwrap();
        let f = ts.mul(&ts).mul(&ss);
        let expect = ts.mul(&ss).scale(&int(2));
        let d = f.derive(&t()).unwrap();
        assert_eq!(d.certified(), 7);
        assert!(d.eq_up_to(&expect, 8));
        assert!(ts.derive(&s()).unwrap().is_zero());
        assert!(matches!(
            ts.derive(&Var::series("u")),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn chain_rule_for_exp() {
        let t2 = tv(8).pow(2);
        let e = t2.exp().unwrap();
        let lhs = e.derive(&t()).unwrap();
        let rhs = tv(8).scale(&int(2)).mul(&e);
        assert!(lhs.agrees_with(&rhs));
    }

    #[test]
    fn mixed_variables_align() {
        let a = S::var(&[t()], 6, &t()).unwrap();
        let b = S::var(&[s()], 6, &s()).unwrap();
        let c = a.add(&b);
        assert_eq!(c.vars(), &[s(), t()]);
        assert_eq!(c.num_terms(), 2);
    }

    #[test]
    fn display() {
        let e = tv(3).exp().unwrap();
        assert_eq!(e.to_string(), "1 + t + 1/2*t^2 + 1/6*t^3 + O(deg 4)");
        let a = one(3).sub(&tv(3).scale(&int(2)));
        assert_eq!(a.to_string(), "1 - 2*t");
        assert_eq!(format!("{e:#}"), "1 + t + 1/2*t^2 + 1/6*t^3");
    }
}
