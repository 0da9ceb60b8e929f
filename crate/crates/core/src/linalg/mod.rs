//! Exact matrix algebra over ℚ and ℚ(p̄, q̄), and integer normal forms.

mod elim;
mod intmat;
mod matrix;

pub use elim::{
    rank, rank_any, rank_field, rank_fraction_free, rank_kernel, rref, rref_with_pivots, Domain,
    FractionField,
};
pub use intmat::{
    hermite, left_kernel, smith, smith_hermite, IntMatrix, NormalForm, NormalFormResult,
};
pub use matrix::ExactMatrix;
