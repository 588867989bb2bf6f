//! Dense integer matrices with arbitrary-precision entries.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::IntAlgError;

/// A dense `rows x cols` matrix over the integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    /// Zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows; fails on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, IntAlgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != c {
                return Err(IntAlgError::RaggedRows);
            }
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        (0..self.rows)
            .all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[dst] -= q * row[src]`
    pub(crate) fn row_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) - q * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// `col[dst] -= q * col[src]`
    pub(crate) fn col_sub_mul(&mut self, dst: usize, src: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) - q * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    /// `row[dst] += row[src]`
    pub(crate) fn row_add(&mut self, dst: usize, src: usize) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + self.get(src, j);
            self.set(dst, j, v);
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for r in k + 1..n {
                for s in k + 1..n {
                    let v = (a.get(k, k) * a.get(r, s) - a.get(r, k) * a.get(k, s)) / &prev;
                    a.set(r, s, v);
                }
                a.set(r, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A symmetric `n x n` integer matrix, stored densely.
///
/// In the handle calculus the symmetric matrices are linking matrices: the
/// diagonal carries framings, the off-diagonal entries pairwise linking
/// numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymIntMatrix {
    inner: IntMatrix,
}

impl SymIntMatrix {
    pub fn zero(n: usize) -> Self {
        SymIntMatrix {
            inner: IntMatrix::zero(n, n),
        }
    }

    /// Builds from explicit rows, rejecting non-symmetric input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, IntAlgError> {
        let inner = IntMatrix::from_rows(rows)?;
        if !inner.is_square() {
            return Err(IntAlgError::RaggedRows);
        }
        for i in 0..inner.rows() {
            for j in i + 1..inner.cols() {
                if inner.get(i, j) != inner.get(j, i) {
                    return Err(IntAlgError::NotSymmetric { i, j });
                }
            }
        }
        Ok(SymIntMatrix { inner })
    }

    /// Diagonal matrix with the given entries.
    pub fn diag<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let mut m = Self::zero(entries.len());
        for (i, v) in entries.iter().enumerate() {
            m.inner.set(i, i, v.clone().into());
        }
        m
    }

    pub fn n(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        self.inner.get(i, j)
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, v: BigInt) {
        self.inner.set(i, j, v.clone());
        self.inner.set(j, i, v);
    }

    pub fn as_int_matrix(&self) -> &IntMatrix {
        &self.inner
    }

    pub fn into_int_matrix(self) -> IntMatrix {
        self.inner
    }

    /// The congruent form `E^T * A * E`.
    pub fn congruence(&self, e: &IntMatrix) -> SymIntMatrix {
        let prod = e.transpose().mul(&self.inner).mul(e);
        SymIntMatrix { inner: prod }
    }

    /// Principal submatrix on the given indices, in order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> SymIntMatrix {
        let mut m = Self::zero(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.inner.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

impl fmt::Display for SymIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_rows(&[vec![-5, 1], vec![1, -2]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(9));

        let chain = IntMatrix::from_rows(&[vec![-6, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]).unwrap();
        assert_eq!(chain.determinant(), BigInt::from(-16));
    }

    #[test]
    fn determinant_singular_and_empty() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.determinant(), BigInt::zero());
        assert_eq!(IntMatrix::zero(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn determinant_needs_row_swap() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(m.determinant(), BigInt::from(-1));
    }

    #[test]
    fn symmetric_rejects_asymmetry() {
        let err = SymIntMatrix::from_rows(&[vec![1, 2], vec![3, 1]]).unwrap_err();
        assert_eq!(err, IntAlgError::NotSymmetric { i: 0, j: 1 });
    }

    #[test]
    fn congruence_matches_product() {
        let a = SymIntMatrix::from_rows(&[vec![-1, 0], vec![0, -1]]).unwrap();
        // elementary column-add: e = I + E_{21}
        let e = IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap();
        let b = a.congruence(&e);
        assert_eq!(b.get(0, 0), &BigInt::from(-2));
        assert_eq!(b.get(0, 1), &BigInt::from(-1));
        assert_eq!(b.get(1, 1), &BigInt::from(-1));
    }
}
