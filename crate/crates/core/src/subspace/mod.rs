//! Relative linear dimension `ldim_K(X/Y)` over `K = ℚ` or a function
//! field `ℚ(S)`, subspace sums, intersections and membership, and
//! linear-disjointness utilities.
//!
//! All elements live in ℚ(p̄, q̄, t̄) as [`RatFunc`] values. Operations on two
//! subspaces always re-flatten the union of their generators into one
//! fresh coordinate system.

mod disjoint;
mod flatten;

pub use disjoint::{disjointness_check, Disjointness};
pub use flatten::{flatten, CoeffField, Coordinates, FlatteningContext};

use crate::arith::{Field, RatFunc};
use crate::error::Result;
use crate::linalg::{rref_with_pivots, ExactMatrix};

/// `ldim_K(X/Y) = dim ⟨X ∪ Y⟩_K − dim ⟨Y⟩_K`, computed in one shared
/// flattening of `X ∪ Y`.
pub fn ldim(field: &CoeffField, x: &[RatFunc], y: &[RatFunc]) -> Result<usize> {
    let mut all = y.to_vec();
    all.extend_from_slice(x);
    let (_, coords) = flatten(&all, field)?;
    let full = coords.rank();
    let base = if y.is_empty() {
        0
    } else {
        coords.rank_of_rows(0..y.len())
    };
    Ok(full - base)
}

/// `ldim_K(X/Y)` with `Y` extended by declared generators of the kernel of
/// the exponential map.
pub fn ldim_mod_kernel(
    field: &CoeffField,
    x: &[RatFunc],
    y: &[RatFunc],
    kernel: &[RatFunc],
) -> Result<usize> {
    let mut base = y.to_vec();
    base.extend_from_slice(kernel);
    ldim(field, x, &base)
}

/// A finite-dimensional `K`-subspace, stored as the reduced echelon basis
/// of its coordinate rows together with the elements those rows denote.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBasis {
    context: FlatteningContext,
    basis: Coordinates,
    elements: Vec<RatFunc>,
}

fn echelon_rows<F: Field>(m: &ExactMatrix<F>) -> ExactMatrix<F> {
    let (r, pivots) = rref_with_pivots(m);
    ExactMatrix::from_rows(
        (0..pivots.len()).map(|i| r.row(i).to_vec()).collect(),
        m.cols(),
    )
}

fn rows_to_elements<F: Field>(ctx: &FlatteningContext, m: &ExactMatrix<F>) -> Vec<RatFunc> {
    (0..m.rows()).map(|i| ctx.reconstruct(m.row(i))).collect()
}

impl SubspaceBasis {
    /// `⟨generators⟩_K`.
    pub fn span(field: &CoeffField, generators: &[RatFunc]) -> Result<Self> {
        let (context, coords) = flatten(generators, field)?;
        let (basis, elements) = match coords {
            Coordinates::Rational(m) => {
                let e = echelon_rows(&m);
                let els = rows_to_elements(&context, &e);
                (Coordinates::Rational(e), els)
            }
            Coordinates::Function(m) => {
                let e = echelon_rows(&m);
                let els = rows_to_elements(&context, &e);
                (Coordinates::Function(e), els)
            }
        };
        Ok(SubspaceBasis {
            context,
            basis,
            elements,
        })
    }

    pub fn zero(field: &CoeffField) -> Self {
        Self::span(field, &[]).expect("empty span flattens")
    }

    pub fn field(&self) -> &CoeffField {
        &self.context.field
    }

    pub fn context(&self) -> &FlatteningContext {
        &self.context
    }

    pub fn coordinates(&self) -> &Coordinates {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    /// The canonical basis elements.
    pub fn elements(&self) -> &[RatFunc] {
        &self.elements
    }

    /// `c · A` for a nonzero field element `c`.
    pub fn scale(&self, c: &RatFunc) -> Result<Self> {
        let scaled: Vec<RatFunc> = self.elements.iter().map(|e| e.mul(c)).collect();
        Self::span(self.field(), &scaled)
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<Self> {
        let mut all = self.elements.clone();
        all.extend_from_slice(&other.elements);
        Self::span(self.field(), &all)
    }

    pub fn contains(&self, x: &RatFunc) -> Result<bool> {
        Ok(ldim(self.field(), std::slice::from_ref(x), &self.elements)? == 0)
    }

    pub fn equals(&self, other: &SubspaceBasis) -> Result<bool> {
        if self.dim() != other.dim() {
            return Ok(false);
        }
        Ok(ldim(self.field(), &other.elements, &self.elements)? == 0)
    }

    /// `A ∩ B` by the Zassenhaus block elimination of `[A A; B 0]`.
    pub fn intersect(&self, other: &SubspaceBasis) -> Result<Self> {
        let field = self.field().clone();
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&field));
        }
        let mut all = self.elements.clone();
        all.extend_from_slice(&other.elements);
        let (ctx, coords) = flatten(&all, &field)?;
        let na = self.dim();
        let gens = match coords {
            Coordinates::Rational(m) => zassenhaus(&ctx, &m, na),
            Coordinates::Function(m) => zassenhaus(&ctx, &m, na),
        };
        Self::span(&field, &gens)
    }
}

fn zassenhaus<F: Field>(ctx: &FlatteningContext, m: &ExactMatrix<F>, na: usize) -> Vec<RatFunc> {
    let n = m.cols();
    let rows: Vec<Vec<F>> = (0..m.rows())
        .map(|i| {
            let mut r = m.row(i).to_vec();
            if i < na {
                r.extend_from_slice(m.row(i));
            } else {
                r.extend(std::iter::repeat(F::zero_el()).take(n));
            }
            r
        })
        .collect();
    let block = ExactMatrix::from_rows(rows, 2 * n);
    let (r, pivots) = rref_with_pivots(&block);
    (0..pivots.len())
        .filter(|&i| pivots[i] >= n)
        .map(|i| ctx.reconstruct(&r.row(i)[n..]))
        .collect()
}

/// Selector for [`span_ops`].
#[derive(Debug, Clone, Copy)]
pub enum SpanOp<'a> {
    Sum(&'a SubspaceBasis),
    Member(&'a RatFunc),
    Equal(&'a SubspaceBasis),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SpanResult {
    Subspace(SubspaceBasis),
    Bool(bool),
}

pub fn span_ops(a: &SubspaceBasis, op: SpanOp<'_>) -> Result<SpanResult> {
    Ok(match op {
        SpanOp::Sum(b) => SpanResult::Subspace(a.sum(b)?),
        SpanOp::Member(x) => SpanResult::Bool(a.contains(x)?),
        SpanOp::Equal(b) => SpanResult::Bool(a.equals(b)?),
    })
}

pub fn intersect(a: &SubspaceBasis, b: &SubspaceBasis) -> Result<SubspaceBasis> {
    a.intersect(b)
}
