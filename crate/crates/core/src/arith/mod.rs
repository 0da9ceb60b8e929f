//! Exact scalars: rationals, sparse multivariate polynomials and canonical
//! rational functions over a variable alphabet split into power variables,
//! generic transcendentals and series variables.

mod field;
mod gcd;
mod monomial;
pub mod parse;
mod poly;
mod ratfunc;
mod rational;
mod var;

pub use field::Field;
pub use gcd::{poly_gcd, poly_lcm};
pub use monomial::Monomial;
pub use parse::{parse_expr, parse_ratfunc, Expr};
pub use poly::{poly_arith, MultiPoly, PolyOp, PolyResult};
pub use ratfunc::{ratfun_arith, RatFunc, RatFuncOp, RatFuncResult};
pub use rational::{
    checked_div, format_rational, int, pow_i, rat, rational_arith, Rational, RationalOp,
    RationalResult,
};
pub use var::{Var, VarKind};
