//! A computable exponential field: truncated multivariate power series
//! over ℚ or ℚ(p̄) with `exp`/`log` on the augmentation ideal, partial
//! derivations, exponential polynomials and Jacobian witnesses.

mod exppoly;
mod literal;
mod series;

pub use exppoly::{eval_exp_poly, expalg_witness, ExpAlgWitness, ExpPolynomial, JacobianMode};
pub use literal::{eval_series, parse_series, SeriesContext};
pub use series::TruncatedSeries;

use crate::arith::Field;
use crate::error::Result;

#[derive(Debug, Clone, Copy)]
pub enum SeriesOp<'a, F: Field> {
    Add(&'a TruncatedSeries<F>),
    Mul(&'a TruncatedSeries<F>),
    Inv,
}

pub fn series_arith<F: Field>(
    a: &TruncatedSeries<F>,
    op: SeriesOp<'_, F>,
) -> Result<TruncatedSeries<F>> {
    match op {
        SeriesOp::Add(b) => Ok(a.add(b)),
        SeriesOp::Mul(b) => Ok(a.mul(b)),
        SeriesOp::Inv => a.inv(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpLog {
    Exp,
    Log,
}

pub fn series_exp_log<F: Field>(op: ExpLog, a: &TruncatedSeries<F>) -> Result<TruncatedSeries<F>> {
    match op {
        ExpLog::Exp => a.exp(),
        ExpLog::Log => a.log(),
    }
}
