//! Signature of a symmetric integer form by exact congruence pivoting.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::matrix::SymIntMatrix;

/// Inertia triple of a symmetric form over the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub plus: usize,
    pub zero: usize,
    pub minus: usize,
}

impl Inertia {
    pub fn new(plus: usize, zero: usize, minus: usize) -> Self {
        Inertia { plus, zero, minus }
    }

    /// Signature `n_plus - n_minus` as a single integer.
    pub fn excess(&self) -> i64 {
        self.plus as i64 - self.minus as i64
    }

    pub fn is_negative_definite(&self) -> bool {
        self.plus == 0 && self.zero == 0
    }
}

impl fmt::Display for Inertia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.plus, self.zero, self.minus)
    }
}

/// Exact determinant of a symmetric form.
pub fn determinant(a: &SymIntMatrix) -> BigInt {
    a.as_int_matrix().determinant()
}

/// Computes the inertia `(n_plus, n_zero, n_minus)` of `a` exactly.
///
/// Fraction-free symmetric pivoting: a nonzero diagonal pivot contributes its
/// sign and the trailing block becomes the (positively rescaled) Schur
/// complement; a trailing block with zero diagonal but a nonzero entry is
/// handled as a hyperbolic 2x2 block contributing `(+1, -1)`. Rescaling rows
/// and columns by the same positive factor never changes inertia, so every
/// intermediate matrix stays congruent to a positive rescaling of the input.
pub fn signature(a: &SymIntMatrix) -> Inertia {
    let n = a.n();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j).clone()).collect())
        .collect();

    let mut plus = 0;
    let mut minus = 0;
    let mut zero = 0;
    let mut k = 0;
    // Previous pivot magnitude; one-step Bareiss division keeps entries the
    // size of minors instead of doubling digits every step.
    let mut prev = BigInt::from(1);

    while k < n {
        let diag_pivot = (k..n)
            .filter(|&i| !m[i][i].is_zero())
            .min_by_key(|&i| m[i][i].abs());
        if let Some(i) = diag_pivot {
            sym_swap(&mut m, k, i);
            let p = m[k][k].clone();
            if p.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
            let negate = p.is_negative();
            for r in k + 1..n {
                for s in r..n {
                    let mut v = (&p * &m[r][s] - &m[r][k] * &m[k][s]) / &prev;
                    if negate {
                        v = -v;
                    }
                    m[r][s] = v.clone();
                    m[s][r] = v;
                }
            }
            prev = p.abs();
            k += 1;
        } else {
            // Whole trailing diagonal is zero; look for an off-diagonal entry.
            let off = (k..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .find(|&(i, j)| !m[i][j].is_zero());
            let Some((i, j)) = off else {
                zero += n - k;
                break;
            };
            // i < j and k <= i, so the two swaps cannot collide.
            sym_swap(&mut m, k, i);
            sym_swap(&mut m, k + 1, j);
            let b = m[k][k + 1].clone();
            plus += 1;
            minus += 1;
            let negate = b.is_negative();
            for r in k + 2..n {
                for s in r..n {
                    let mut v =
                        &b * &m[r][s] - &m[r][k + 1] * &m[k][s] - &m[r][k] * &m[k + 1][s];
                    if negate {
                        v = -v;
                    }
                    m[r][s] = v.clone();
                    m[s][r] = v;
                }
            }
            prev = BigInt::from(1);
            k += 2;
        }
    }

    Inertia { plus, zero, minus }
}

fn sym_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a == b {
        return;
    }
    m.swap(a, b);
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intalg::matrix::IntMatrix;

    #[test]
    fn single_negative() {
        let a = SymIntMatrix::diag(&[-4]);
        assert_eq!(signature(&a), Inertia::new(0, 0, 1));
        assert_eq!(determinant(&a), BigInt::from(-4));
    }

    #[test]
    fn c3_is_negative_definite() {
        let a = SymIntMatrix::from_rows(&[vec![-5, 1], vec![1, -2]]).unwrap();
        assert_eq!(signature(&a), Inertia::new(0, 0, 2));
    }

    #[test]
    fn hyperbolic_plane() {
        let a = SymIntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(signature(&a), Inertia::new(1, 0, 1));
    }

    #[test]
    fn degenerate_directions_counted() {
        let a = SymIntMatrix::from_rows(&[vec![0, 0, 0], vec![0, 3, 0], vec![0, 0, 0]]).unwrap();
        assert_eq!(signature(&a), Inertia::new(1, 2, 0));
        assert_eq!(signature(&SymIntMatrix::zero(4)), Inertia::new(0, 4, 0));
    }

    #[test]
    fn mixed_signs() {
        let a = SymIntMatrix::from_rows(&[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(signature(&a), Inertia::new(1, 0, 1));
        let b = SymIntMatrix::diag(&[-1, 5, 0, -2]);
        assert_eq!(signature(&b), Inertia::new(1, 1, 2));
    }

    #[test]
    fn hyperbolic_block_with_tail() {
        // [[0,2,1],[2,0,0],[1,0,3]]: eigen-structure has signature (2, 0, 1).
        let a = SymIntMatrix::from_rows(&[vec![0, 2, 1], vec![2, 0, 0], vec![1, 0, 3]]).unwrap();
        let s = signature(&a);
        assert_eq!(s.plus + s.zero + s.minus, 3);
        assert_eq!(determinant(&a).sign(), num_bigint::Sign::Minus);
        // det = -12 < 0 with n = 3 means an odd count of negative eigenvalues
        assert_eq!(s.minus % 2, 1);
        assert_eq!(s, Inertia::new(2, 0, 1));
    }

    #[test]
    fn congruence_invariance_spot() {
        let a = SymIntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]])
            .unwrap();
        let e = IntMatrix::from_rows(&[vec![1, 4, 0], vec![0, 1, 0], vec![-3, 2, 1]]).unwrap();
        assert_eq!(signature(&a), signature(&a.congruence(&e)));
    }
}
