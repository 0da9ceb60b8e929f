//! Integer matrices and their Hermite / Smith normal forms, with the
//! unimodular transforms that reproduce them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::elim::bareiss_det;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map(Vec::len).unwrap_or(0);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix row");
            for (j, x) in r.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix row");
            data.extend(r);
        }
        IntMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        bareiss_det((0..self.rows).map(|i| self.row(i).to_vec()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[dst] -= q * row[src]`
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j] * q;
            self.data[dst * self.cols + j] -= s;
        }
    }

    /// `col[dst] -= q * col[src]`
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src] * q;
            self.data[i * self.cols + dst] -= s;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self.data[i * self.cols + j];
            self.data[i * self.cols + j] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalForm {
    Smith,
    Hermite,
}

/// `left * input * right = form`. For Hermite, `right` is the identity.
#[derive(Debug, Clone)]
pub struct NormalFormResult {
    pub form: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

pub fn smith_hermite(m: &IntMatrix, which: NormalForm) -> NormalFormResult {
    match which {
        NormalForm::Hermite => {
            let (h, u) = hermite(m);
            NormalFormResult {
                form: h,
                left: u,
                right: IntMatrix::identity(m.cols),
            }
        }
        NormalForm::Smith => {
            let (s, u, v) = smith(m);
            NormalFormResult {
                form: s,
                left: u,
                right: v,
            }
        }
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U * M = H`,
/// `H` in row echelon form with positive pivots and the entries above each
/// pivot reduced into `[0, pivot)`.
pub fn hermite(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        loop {
            let Some(best) = (r..m.rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()))
            else {
                break;
            };
            h.swap_rows(r, best);
            u.swap_rows(r, best);
            let mut done = true;
            for i in r + 1..m.rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(r, c)]);
                h.row_axpy(i, r, &q);
                u.row_axpy(i, r, &q);
                if !h[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.row_axpy(i, r, &q);
            u.row_axpy(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(S, U, V)` with `U * M * V = S`, `S`
/// diagonal with non-negative entries `d1 | d2 | ...`.
pub fn smith(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m.rows {
                for j in t..m.cols {
                    if s[(i, j)].is_zero() {
                        continue;
                    }
                    if best
                        .map(|(bi, bj)| s[(i, j)].abs() < s[(bi, bj)].abs())
                        .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return finish(s, u, v);
            };
            s.swap_rows(t, bi);
            u.swap_rows(t, bi);
            s.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for i in t + 1..m.rows {
                let q = s[(i, t)].div_floor(&s[(t, t)]);
                s.row_axpy(i, t, &q);
                u.row_axpy(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..m.cols {
                let q = s[(t, j)].div_floor(&s[(t, t)]);
                s.col_axpy(j, t, &q);
                v.col_axpy(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            let offender = (t + 1..m.rows)
                .find(|&i| (t + 1..m.cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)])));
            match offender {
                Some(i) => {
                    // row_t += row_i brings the offending entry into row t.
                    let minus_one = -BigInt::one();
                    s.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(s, u, v)
}

fn finish(s: IntMatrix, u: IntMatrix, v: IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    (s, u, v)
}

/// Left kernel basis `{w : w * M = 0}` read off the Hermite transform: the
/// rows of `U` that map to zero rows of `H`. Each is primitive since `U`
/// is unimodular.
pub fn left_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let (h, u) = hermite(m);
    (0..m.rows)
        .filter(|&i| h.row(i).iter().all(Zero::is_zero))
        .map(|i| u.row(i).to_vec())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_transforms(m: &IntMatrix, r: &NormalFormResult) {
        assert_eq!(r.left.mul(m).mul(&r.right), r.form);
        assert_eq!(r.left.det().abs(), BigInt::one());
        assert_eq!(r.right.det().abs(), BigInt::one());
    }

    #[test]
    fn smith_two_by_two() {
        let m = big(&[vec![2, 4], vec![6, 8]]);
        let r = smith_hermite(&m, NormalForm::Smith);
        assert_eq!(r.form, big(&[vec![2, 0], vec![0, 4]]));
        check_transforms(&m, &r);
    }

    #[test]
    fn smith_identity() {
        let m = IntMatrix::identity(3);
        let r = smith_hermite(&m, NormalForm::Smith);
        assert_eq!(r.form, m);
        check_transforms(&m, &r);
    }

    #[test]
    fn hermite_zero() {
        let m = IntMatrix::zeros(2, 2);
        let r = smith_hermite(&m, NormalForm::Hermite);
        assert!(r.form.is_zero());
        check_transforms(&m, &r);
    }

    #[test]
    fn hermite_shape() {
        let m = big(&[vec![3, 5, 1], vec![-6, 2, 7], vec![0, 4, 4]]);
        let r = smith_hermite(&m, NormalForm::Hermite);
        check_transforms(&m, &r);
        let h = &r.form;
        let mut last = None;
        for i in 0..3 {
            if let Some(c) = (0..3).find(|&j| !h[(i, j)].is_zero()) {
                assert!(h[(i, c)].is_positive());
                if let Some(l) = last {
                    assert!(c > l);
                }
                for k in 0..i {
                    assert!(!h[(k, c)].is_negative() && h[(k, c)] < h[(i, c)]);
                }
                last = Some(c);
            }
        }
    }

    #[test]
    fn smith_divisibility_chain() {
        let m = big(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
        let r = smith_hermite(&m, NormalForm::Smith);
        assert_eq!(r.form, big(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 30]]));
        check_transforms(&m, &r);
    }

    #[test]
    fn left_kernel_of_dependent_rows() {
        let m = big(&[vec![1, 0], vec![2, 0]]);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        let w = &k[0];
        assert_eq!(&w[0] * 1 + &w[1] * 2, BigInt::zero());
    }
}
