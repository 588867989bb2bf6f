//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;

/// The decomposition `u * m * v = d` with `u`, `v` unimodular and `d`
/// diagonal, non-negative, satisfying `d[0] | d[1] | ...`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Non-zero diagonal entries (the invariant factors).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

/// Computes the Smith normal form of an arbitrary integer matrix.
///
/// Pivots are chosen by minimal absolute value, which keeps coefficient
/// growth tame on the matrices this engine produces.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let rows = m.rows();
    let cols = m.cols();
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let bound = rows.min(cols);
    let mut t = 0;
    while t < bound {
        let Some((pi, pj)) = min_abs_nonzero(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            clear_pivot_row_col(&mut d, &mut u, &mut v, t);
            // Divisibility: the pivot must divide every trailing entry.
            // Pulling an offending row into the pivot row strictly shrinks
            // the gcd reachable at (t, t), so this terminates.
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !(d.get(r, c) % d.get(t, t)).is_zero())
            });
            match offender {
                Some(r) => {
                    d.row_add(t, r);
                    u.row_add(t, r);
                }
                None => break,
            }
        }
        t += 1;
    }

    for i in 0..bound {
        if d.get(i, i).is_negative() {
            d.negate_row(i);
            u.negate_row(i);
        }
    }

    SmithDecomposition { u, d, v }
}

/// Position of a minimal-absolute-value nonzero entry in the trailing block,
/// or `None` if the block is zero.
fn min_abs_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if d.get(bi, bj).abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Reduces column `t` and row `t` to zero outside the pivot, swapping in any
/// strictly smaller remainder as the new pivot until both are clear.
fn clear_pivot_row_col(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    loop {
        let mut swapped = false;
        for r in t + 1..d.rows() {
            if d.get(r, t).is_zero() {
                continue;
            }
            let (q, rem) = d.get(r, t).div_mod_floor(d.get(t, t));
            if !q.is_zero() {
                d.row_sub_mul(r, t, &q);
                u.row_sub_mul(r, t, &q);
            }
            if !rem.is_zero() {
                d.swap_rows(t, r);
                u.swap_rows(t, r);
                swapped = true;
            }
        }
        for c in t + 1..d.cols() {
            if d.get(t, c).is_zero() {
                continue;
            }
            let (q, rem) = d.get(t, c).div_mod_floor(d.get(t, t));
            if !q.is_zero() {
                d.col_sub_mul(c, t, &q);
                v.col_sub_mul(c, t, &q);
            }
            if !rem.is_zero() {
                d.swap_cols(t, c);
                v.swap_cols(t, c);
                swapped = true;
            }
        }
        if !swapped {
            return;
        }
    }
}
