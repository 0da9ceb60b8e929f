//! Gaussian elimination: field-division RREF and fraction-free Bareiss rank.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use crate::arith::{poly_lcm, Field, MultiPoly, RatFunc, Rational};

/// Integral domain with exact division, the ring side of fraction-free elimination.
pub trait Domain: Clone + PartialEq + Send + Sync {
    fn d_zero() -> Self;
    fn d_one() -> Self;
    fn d_is_zero(&self) -> bool;
    fn d_mul(&self, rhs: &Self) -> Self;
    fn d_sub(&self, rhs: &Self) -> Self;
    fn d_neg(&self) -> Self;
    /// Exact quotient; panics when the division is not exact, which would
    /// break the Bareiss invariant.
    fn d_div_exact(&self, rhs: &Self) -> Self;
    fn d_size(&self) -> usize;
}

impl Domain for BigInt {
    fn d_zero() -> Self {
        BigInt::zero()
    }
    fn d_one() -> Self {
        BigInt::one()
    }
    fn d_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn d_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn d_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn d_neg(&self) -> Self {
        -self
    }
    fn d_div_exact(&self, rhs: &Self) -> Self {
        debug_assert!((self % rhs).is_zero(), "inexact Bareiss division");
        self / rhs
    }
    fn d_size(&self) -> usize {
        self.bits() as usize
    }
}

impl Domain for MultiPoly {
    fn d_zero() -> Self {
        MultiPoly::zero()
    }
    fn d_one() -> Self {
        MultiPoly::one()
    }
    fn d_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn d_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn d_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn d_neg(&self) -> Self {
        -self
    }
    fn d_div_exact(&self, rhs: &Self) -> Self {
        self.div_exact(rhs).expect("inexact Bareiss division")
    }
    fn d_size(&self) -> usize {
        self.num_terms()
    }
}

/// A field whose rows can be scaled into its ring of integers
/// (ℚ → ℤ, ℚ(p̄, q̄) → ℚ[p̄, q̄]).
pub trait FractionField: Field {
    type Ring: Domain;
    /// Whether specialization gives a cheap rank lower bound (true for
    /// function fields, where entries carry variables).
    const SPECIALIZES: bool;
    /// Multiplies a row by the lcm of its denominators.
    fn clear_row(row: &[Self]) -> Vec<Self::Ring>;
}

impl FractionField for Rational {
    type Ring = BigInt;
    const SPECIALIZES: bool = false;
    fn clear_row(row: &[Self]) -> Vec<BigInt> {
        let l = row.iter().fold(BigInt::one(), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
    }
}

impl FractionField for RatFunc {
    type Ring = MultiPoly;
    const SPECIALIZES: bool = true;
    fn clear_row(row: &[Self]) -> Vec<MultiPoly> {
        let l = row
            .iter()
            .filter(|x| !x.is_zero())
            .fold(MultiPoly::one(), |acc, x| poly_lcm(&acc, x.den()));
        row.iter()
            .map(|x| {
                if x.is_zero() {
                    MultiPoly::zero()
                } else {
                    x.num() * &l.div_exact(x.den()).expect("lcm is a multiple")
                }
            })
            .collect()
    }
}

fn pick_pivot<T>(
    candidates: impl Iterator<Item = usize>,
    entry: impl Fn(usize) -> Option<T>,
    size: impl Fn(&T) -> usize,
) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for r in candidates {
        if let Some(e) = entry(r) {
            let s = size(&e);
            if best.map(|(_, bs)| s < bs).unwrap_or(true) {
                best = Some((r, s));
            }
        }
    }
    best.map(|(r, _)| r)
}

/// Reduced row-echelon form and pivot columns, by field division.
///
/// Pivot columns are taken left to right; within a column the candidate
/// with the fewest terms wins (first row on ties). The RREF itself does
/// not depend on that choice.
pub fn rref_with_pivots<F: Field>(m: &ExactMatrix<F>) -> (ExactMatrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = pick_pivot(
            r..rows,
            |i| (!a[(i, c)].eq_zero()).then(|| a[(i, c)].term_count()),
            |s| *s,
        ) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = a[(r, c)].inverse().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = a[(r, j)].times(&inv);
        }
        for i in 0..rows {
            if i == r || a[(i, c)].eq_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..cols {
                if a[(r, j)].eq_zero() {
                    continue;
                }
                let v = a[(i, j)].minus(&factor.times(&a[(r, j)]));
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rref<F: Field>(m: &ExactMatrix<F>) -> ExactMatrix<F> {
    rref_with_pivots(m).0
}

/// Rank by field-division elimination (no RREF back-substitution).
pub fn rank_field<F: Field>(m: &ExactMatrix<F>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = pick_pivot(
            r..rows,
            |i| (!a[(i, c)].eq_zero()).then(|| a[(i, c)].term_count()),
            |s| *s,
        ) else {
            continue;
        };
        a.swap_rows(r, pr);
        let inv = a[(r, c)].inverse().expect("nonzero pivot");
        for i in r + 1..rows {
            if a[(i, c)].eq_zero() {
                continue;
            }
            let factor = a[(i, c)].times(&inv);
            for j in c..cols {
                let v = a[(i, j)].minus(&factor.times(&a[(r, j)]));
                a[(i, j)] = v;
            }
        }
        r += 1;
    }
    r
}

/// Fraction-free rank over the ring (rows given already cleared).
pub(crate) fn bareiss_rank<R: Domain>(rows_in: Vec<Vec<R>>, cols: usize) -> usize {
    bareiss_echelon(rows_in, cols).1.len()
}

/// Fraction-free determinant of a square matrix over a domain.
pub(crate) fn bareiss_det<R: Domain>(rows_in: Vec<Vec<R>>) -> R {
    let mut a = rows_in;
    let n = a.len();
    let mut prev = R::d_one();
    let mut negate = false;
    for k in 0..n {
        let Some(pr) = (k..n).find(|&i| !a[i][k].d_is_zero()) else {
            return R::d_zero();
        };
        if pr != k {
            a.swap(k, pr);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].d_mul(&a[i][j]).d_sub(&a[i][k].d_mul(&a[k][j]));
                a[i][j] = v.d_div_exact(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    let d = if n == 0 {
        R::d_one()
    } else {
        a[n - 1][n - 1].clone()
    };
    if negate {
        d.d_neg()
    } else {
        d
    }
}

/// Rank by fraction-free Bareiss elimination after clearing row denominators.
pub fn rank_fraction_free<F: FractionField>(m: &ExactMatrix<F>) -> usize {
    let rows: Vec<Vec<F::Ring>> = (0..m.rows()).map(|i| F::clear_row(m.row(i))).collect();
    bareiss_rank(rows, m.cols())
}

/// Matrices at most this many entries go through field-division elimination.
const SMALL_ENTRIES: usize = 16;

/// Exact rank.
///
/// Small matrices use field division. Over function fields, a rank at a
/// specialization point is a lower bound, so a full-rank specialization
/// settles the question without symbolic elimination; otherwise the
/// fraction-free route decides.
pub fn rank<F: FractionField>(m: &ExactMatrix<F>) -> usize {
    let full = m.rows().min(m.cols());
    if full == 0 {
        return 0;
    }
    if m.rows() * m.cols() <= SMALL_ENTRIES {
        return rank_field(m);
    }
    if F::SPECIALIZES {
        for k in 0..2 {
            if let Some(s) = m.try_map(|x| x.specialize(k)) {
                if rank_field(&s) == full {
                    return full;
                }
            }
        }
    }
    rank_fraction_free(m)
}

/// Fraction-free echelon form: the first `r` rows with their pivot columns.
pub(crate) fn bareiss_echelon<R: Domain>(
    rows_in: Vec<Vec<R>>,
    cols: usize,
) -> (Vec<Vec<R>>, Vec<usize>) {
    let mut a = rows_in;
    let rows = a.len();
    let mut prev = R::d_one();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let r = pivots.len();
        if r == rows {
            break;
        }
        let Some(pr) = pick_pivot(
            r..rows,
            |i| (!a[i][c].d_is_zero()).then(|| a[i][c].d_size()),
            |s| *s,
        ) else {
            continue;
        };
        a.swap(r, pr);
        let piv = a[r][c].clone();
        for i in r + 1..rows {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let v = piv.d_mul(&a[i][j]).d_sub(&lead.d_mul(&a[r][j]));
                a[i][j] = v.d_div_exact(&prev);
            }
            a[i][c] = R::d_zero();
        }
        prev = piv;
        pivots.push(c);
    }
    a.truncate(pivots.len());
    (a, pivots)
}

/// Kernel over ℚ(p̄, q̄) by fraction-free elimination and a single back
/// substitution per free column, avoiding a gcd at every elimination step.
fn kernel_fraction_free(m: &ExactMatrix<RatFunc>) -> (usize, Vec<Vec<RatFunc>>) {
    let cols = m.cols();
    let rows: Vec<Vec<MultiPoly>> = (0..m.rows())
        .map(|i| RatFunc::clear_row(m.row(i)))
        .collect();
    let (u, pivots) = bareiss_echelon(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![RatFunc::zero(); cols];
        v[free] = RatFunc::one();
        for (i, &p) in pivots.iter().enumerate().rev() {
            let mut acc = RatFunc::zero();
            for j in p + 1..cols {
                if !v[j].is_zero() && !u[i][j].is_zero() {
                    acc = acc.add(&RatFunc::poly(u[i][j].clone()).mul(&v[j]));
                }
            }
            v[p] = acc
                .neg()
                .div(&RatFunc::poly(u[i][p].clone()))
                .expect("nonzero pivot");
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}

/// Exact rank over any [`Field`]: fraction-free over function fields,
/// field division over ℚ.
pub fn rank_any<F: Field>(m: &ExactMatrix<F>) -> usize {
    if F::SYMBOLIC {
        let rows = (0..m.rows())
            .map(|i| {
                let row: Vec<RatFunc> = m.row(i).iter().map(F::to_ratfunc).collect();
                RatFunc::clear_row(&row)
            })
            .collect();
        bareiss_rank(rows, m.cols())
    } else if m.rows() * m.cols() <= SMALL_ENTRIES {
        rank_field(m)
    } else {
        bareiss_rank(rational_rows(m), m.cols())
    }
}

/// Rows of a matrix over ℚ, cleared to integers.
fn rational_rows<F: Field>(m: &ExactMatrix<F>) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|i| {
            let row: Vec<Rational> = m
                .row(i)
                .iter()
                .map(|x| x.specialize(0).expect("rational entries"))
                .collect();
            Rational::clear_row(&row)
        })
        .collect()
}

/// Kernel over ℚ by integer Bareiss elimination and back substitution.
fn kernel_integer<F: Field>(m: &ExactMatrix<F>) -> (usize, Vec<Vec<F>>) {
    let cols = m.cols();
    let (u, pivots) = bareiss_echelon(rational_rows(m), cols);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate().rev() {
            let mut acc = Rational::zero();
            for j in p + 1..cols {
                if !v[j].is_zero() && !u[i][j].is_zero() {
                    acc += &v[j] * &u[i][j];
                }
            }
            v[p] = -acc / &u[i][p];
        }
        kernel.push(v.iter().map(F::from_rational).collect());
    }
    (pivots.len(), kernel)
}

/// Rank together with a kernel basis in reduced echelon shape: one vector
/// per free column, with a `1` there and zeros at the other free columns.
///
/// Over function fields, full column rank at a specialization point means
/// the kernel is trivial; otherwise elimination is fraction-free.
pub fn rank_kernel<F: Field>(m: &ExactMatrix<F>) -> (usize, Vec<Vec<F>>) {
    if F::SYMBOLIC {
        if m.cols() > 0 && m.rows() >= m.cols() {
            for k in 0..2 {
                if let Some(s) = m.try_map(|x| x.specialize(k)) {
                    if rank_field(&s) == m.cols() {
                        return (m.cols(), Vec::new());
                    }
                }
            }
        }
        let (r, kernel) = kernel_fraction_free(&m.map(F::to_ratfunc));
        let back = kernel
            .into_iter()
            .map(|v| {
                v.iter()
                    .map(|x| F::from_ratfunc(x).expect("entries stay in the field"))
                    .collect()
            })
            .collect();
        return (r, back);
    }
    if m.rows() * m.cols() > SMALL_ENTRIES {
        return kernel_integer(m);
    }
    let (r, pivots) = rref_with_pivots(m);
    let cols = m.cols();
    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero_el(); cols];
        v[free] = F::one_el();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = r[(i, free)].negate();
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}
