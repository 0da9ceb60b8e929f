//! Canonical rational functions over ℚ.

use std::fmt;

use num_traits::{One, Zero};

use super::field::Field;
use super::gcd::poly_gcd;
use super::poly::MultiPoly;
use super::rational::{rat, Rational};
use super::var::Var;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic under graded-lex.
///
/// Because the representation is canonical, derived equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: MultiPoly, den: MultiPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: MultiPoly::zero(),
            den: MultiPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: MultiPoly::constant(c),
            den: MultiPoly::one(),
        }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(rat(n, 1))
    }

    pub fn var(v: Var) -> Self {
        Self::poly(MultiPoly::var(v))
    }

    pub fn poly(p: MultiPoly) -> Self {
        RatFunc {
            num: p,
            den: MultiPoly::one(),
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort();
        v.dedup();
        v
    }

    pub fn involves(&self, pred: impl Fn(&Var) -> bool + Copy) -> bool {
        self.num.involves(pred) || self.den.involves(pred)
    }

    pub fn add(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::normalize(&self.num + &rhs.num, self.den.clone());
        }
        Self::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &RatFunc) -> RatFunc {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: MultiPoly::one(),
            };
        }
        // Cross-cancel first so the products stay small.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading_coeff();
        RatFunc {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::InverseOfZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<RatFunc> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs() as u32;
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn eval(&self, value: &impl Fn(&Var) -> Option<Rational>) -> Result<Rational> {
        let d = self.den.eval(value)?;
        if d.is_zero() {
            return Err(Error::Pole(self.to_string()));
        }
        Ok(self.num.eval(value)? / d)
    }

    pub fn derivative(&self, v: &Var) -> RatFunc {
        let n = &(&self.num.derivative(v) * &self.den) - &(&self.num * &self.den.derivative(v));
        Self::normalize(n, &self.den * &self.den)
    }
}

/// Operation selector for [`ratfun_arith`].
#[derive(Debug, Clone)]
pub enum RatFuncOp<'a> {
    Add(&'a RatFunc),
    Mul(&'a RatFunc),
    Inv,
    /// Re-canonicalizes an arbitrary numerator/denominator pair.
    Normalize,
    Eval(&'a [(Var, Rational)]),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RatFuncResult {
    Value(RatFunc),
    Scalar(Rational),
}

pub fn ratfun_arith(a: &RatFunc, op: RatFuncOp<'_>) -> Result<RatFuncResult> {
    Ok(match op {
        RatFuncOp::Add(b) => RatFuncResult::Value(a.add(b)),
        RatFuncOp::Mul(b) => RatFuncResult::Value(a.mul(b)),
        RatFuncOp::Inv => RatFuncResult::Value(a.inv()?),
        RatFuncOp::Normalize => RatFuncResult::Value(RatFunc::new(a.num.clone(), a.den.clone())?),
        RatFuncOp::Eval(point) => RatFuncResult::Scalar(
            a.eval(&|v: &Var| point.iter().find(|(w, _)| w == v).map(|(_, x)| x.clone()))?,
        ),
    })
}

/// Deterministic specialization values: distinct, non-integral, and
/// shifted per point index so that a pole at one point is unlikely at the next.
pub(crate) fn special_value(var: &Var, k: usize) -> Rational {
    let h = var
        .name()
        .bytes()
        .fold(17u64, |acc, b| acc.wrapping_mul(31).wrapping_add(b as u64));
    let kind = var.kind() as u64;
    let n = ((h ^ (kind * 7919)) % 89) as i64 + 3 + 13 * k as i64;
    let d = [7i64, 11, 13, 17, 19][k % 5];
    rat(n * 2 + 1, d)
}

impl Field for RatFunc {
    const SYMBOLIC: bool = true;

    fn zero_el() -> Self {
        RatFunc::zero()
    }
    fn one_el() -> Self {
        RatFunc::one()
    }
    fn eq_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn eq_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
    fn plus(&self, rhs: &Self) -> Self {
        self.add(rhs)
    }
    fn minus(&self, rhs: &Self) -> Self {
        self.sub(rhs)
    }
    fn times(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &Rational) -> Self {
        RatFunc::constant(r.clone())
    }
    fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        Some(r.clone())
    }
    fn to_ratfunc(&self) -> RatFunc {
        self.clone()
    }
    fn term_count(&self) -> usize {
        if self.is_zero() {
            0
        } else {
            self.num.num_terms() + self.den.num_terms() - 1
        }
    }
    fn specialize(&self, k: usize) -> Option<Rational> {
        self.eval(&|v: &Var| Some(special_value(v, k))).ok()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.num_terms() == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        write!(f, "/({})", self.den)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::poly(p)
    }
}

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> MultiPoly {
        MultiPoly::var(Var::power("p"))
    }
    fn q() -> MultiPoly {
        MultiPoly::var(Var::generic("q"))
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let a = RatFunc {
            num: &p().pow(2) - &MultiPoly::one(),
            den: &p() - &MultiPoly::one(),
        };
        let r = ratfun_arith(&a, RatFuncOp::Normalize).unwrap();
        assert_eq!(
            r,
            RatFuncResult::Value(RatFunc::poly(&p() + &MultiPoly::one()))
        );
    }

    #[test]
    fn common_denominator() {
        let a = RatFunc::one().div(&RatFunc::poly(p())).unwrap();
        let b = RatFunc::one().div(&RatFunc::poly(q())).unwrap();
        let s = a.add(&b);
        assert_eq!(s.num(), &(&p() + &q()));
        assert_eq!(s.den(), &(&p() * &q()));
        assert_eq!(s.to_string(), "(p + q)/(p*q)");
    }

    #[test]
    fn inverse_of_zero() {
        assert_eq!(
            ratfun_arith(&RatFunc::zero(), RatFuncOp::Inv),
            Err(Error::InverseOfZero)
        );
    }

    #[test]
    fn monic_denominator() {
        let r = RatFunc::new(MultiPoly::one(), p().scale(&rat(3, 1))).unwrap();
        assert_eq!(r.den(), &p());
        assert_eq!(r.num(), &MultiPoly::constant(rat(1, 3)));
    }

    #[test]
    fn pole_is_reported() {
        let r = RatFunc::one()
            .div(&RatFunc::poly(&p() - &MultiPoly::one()))
            .unwrap();
        let e = r.eval(&|_: &Var| Some(rat(1, 1)));
        assert!(matches!(e, Err(Error::Pole(_))));
    }

    #[test]
    fn derivative_quotient_rule() {
        let v = Var::power("p");
        let r = RatFunc::one().div(&RatFunc::poly(p())).unwrap();
        let d = r.derivative(&v);
        assert_eq!(d, RatFunc::int(-1).div(&RatFunc::poly(p().pow(2))).unwrap());
    }
}
