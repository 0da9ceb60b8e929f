//! Arbitrary-precision rationals in lowest terms.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Canonical rational number: `gcd(|num|, den) = 1`, `den >= 1`, zero is `0/1`.
pub type Rational = BigRational;

/// Binary operations accepted by [`rational_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RationalOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Cmp,
}

/// Result of [`rational_arith`]: a value, or an ordering for `Cmp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalResult {
    Value(Rational),
    Ordering(Ordering),
}

/// Dispatches one exact rational operation. `Neg` ignores `b`.
pub fn rational_arith(op: RationalOp, a: &Rational, b: &Rational) -> Result<RationalResult> {
    Ok(match op {
        RationalOp::Add => RationalResult::Value(a + b),
        RationalOp::Sub => RationalResult::Value(a - b),
        RationalOp::Mul => RationalResult::Value(a * b),
        RationalOp::Div => RationalResult::Value(checked_div(a, b)?),
        RationalOp::Neg => RationalResult::Value(-a),
        RationalOp::Cmp => RationalResult::Ordering(a.cmp(b)),
    })
}

pub fn checked_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact integer power, negative exponents invert. `0^k` with `k < 0` is an error.
pub fn pow_i(base: &Rational, exp: i64) -> Result<Rational> {
    if exp < 0 && base.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut acc = Rational::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        b = &b * &b;
        e >>= 1;
    }
    Ok(acc)
}

/// Renders in the expression grammar: `3/2`, `-7`, `0`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn is_negative(r: &Rational) -> bool {
    r.is_negative()
}
