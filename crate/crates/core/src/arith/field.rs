use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::ratfunc::RatFunc;
use super::rational::Rational;

/// Exact coefficient field shared by the matrix, subspace and series kernels.
///
/// Implemented for [`Rational`] (ℚ) and [`RatFunc`] (ℚ(p̄, q̄)).
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Whether elements carry variables, so that [`Field::specialize`] is a
    /// proper (and cheaper) image.
    const SYMBOLIC: bool = false;

    fn zero_el() -> Self;
    fn one_el() -> Self;
    fn eq_zero(&self) -> bool;
    fn eq_one(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negate(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(r: &Rational) -> Self;
    /// Embeds a rational function, when it lies in this field.
    fn from_ratfunc(r: &RatFunc) -> Option<Self>;
    fn to_ratfunc(&self) -> RatFunc;
    /// Size measure used for pivot selection (fewest terms wins).
    fn term_count(&self) -> usize;
    /// Value at the `k`-th deterministic specialization point of all
    /// variables, or `None` at a pole. Rationals are their own value.
    fn specialize(&self, k: usize) -> Option<Rational>;

    fn over(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self.times(&inv))
    }

    /// A common denominator with the matching integer numerators, for
    /// fields that have one. Lets sums of products skip normalizing every
    /// partial sum.
    fn common_denominator<'a>(
        _xs: impl Iterator<Item = &'a Self>,
    ) -> Option<(BigInt, Vec<BigInt>)> {
        None
    }
}

impl Field for Rational {
    fn zero_el() -> Self {
        Zero::zero()
    }
    fn one_el() -> Self {
        One::one()
    }
    fn eq_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn eq_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_ratfunc(r: &RatFunc) -> Option<Self> {
        r.as_constant()
    }
    fn to_ratfunc(&self) -> RatFunc {
        RatFunc::constant(self.clone())
    }
    fn term_count(&self) -> usize {
        usize::from(!Zero::is_zero(self))
    }
    fn specialize(&self, _k: usize) -> Option<Rational> {
        Some(self.clone())
    }
    fn common_denominator<'a>(xs: impl Iterator<Item = &'a Self>) -> Option<(BigInt, Vec<BigInt>)> {
        let xs: Vec<&Rational> = xs.collect();
        let l = xs.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums = xs.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        Some((l, nums))
    }
}
