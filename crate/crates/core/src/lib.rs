//! Exact computational algebra for Schanuel-type inequalities of raising to
//! a transcendental power.
//!
//! The crate is organized bottom-up:
//!
//! - [`arith`]: rationals, sparse multivariate polynomials, rational functions.
//! - [`linalg`]: rank, kernel and reduced echelon forms over ℚ and ℚ(p̄, q̄);
//!   Hermite and Smith normal forms of integer matrices.
//! - [`subspace`]: relative linear dimension `ldim_K(X/Y)` for `K = ℚ` or
//!   `K = ℚ(p̄)`, subspace sums and intersections, linear disjointness.
//! - [`chain`]: the descent `A_{i+1} = A_i ∩ p⁻¹A_i` with its telescoping
//!   identity and the power inequality it proves.
//! - [`mulind`]: multiplicative independence of positive rationals.
//! - [`expseries`]: truncated power series as a computable exponential field.
//! - [`verify`]: bounded-degree relation search, Ax checks and the
//!   assembled power inequalities.
//!
//! Every value is immutable after construction and every operation is a
//! pure function. [`exec`] runs independent instances sequentially or on
//! the rayon pool (feature `parallel`).

pub mod arith;
pub mod chain;
pub mod error;
pub mod exec;
pub mod expseries;
pub mod linalg;
pub mod mulind;
pub mod sample;
pub mod subspace;
pub mod verify;

pub use error::{Error, Result};
