//! Finitely generated abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use super::IntAlgError;

/// `Z^free_rank + Z/d1 + Z/d2 + ...` with `d1 | d2 | ...` and every `di >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self, IntAlgError> {
        for w in torsion.windows(2) {
            if !(&w[1] % &w[0]).is_zero() {
                return Err(IntAlgError::BadTorsion);
            }
        }
        if torsion.iter().any(|d| *d < BigInt::from(2)) {
            return Err(IntAlgError::BadTorsion);
        }
        Ok(AbelianGroup { free_rank, torsion })
    }

    pub fn trivial() -> Self {
        AbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/n` for `n >= 2`.
    pub fn cyclic(n: impl Into<BigInt>) -> Result<Self, IntAlgError> {
        Self::new(0, vec![n.into()])
    }

    /// The cokernel `Z^rows / im(m)` of an integer matrix, via Smith normal
    /// form.
    pub fn cokernel_of(m: &IntMatrix) -> Self {
        let snf = smith_normal_form(m);
        let factors = snf.invariant_factors();
        let free_rank = m.rows() - factors.len();
        let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
        AbelianGroup { free_rank, torsion }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut terms: Vec<String> = (0..self.free_rank).map(|_| "Z".to_string()).collect();
        terms.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", terms.join(" + "))
    }
}
