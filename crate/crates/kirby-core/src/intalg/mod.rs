//! Exact integer linear algebra.
//!
//! Everything downstream (homology, boundary invariants, slide-invariance
//! checks) reduces to a handful of classical computations over the integers:
//!
//! - Smith normal form `U * M * V = D` with unimodular `U`, `V`
//! - inertia (signature) of a symmetric form by congruence diagonalization
//! - determinants by fraction-free elimination
//! - Hirzebruch-Jung continued fractions `p/q = a1 - 1/(a2 - 1/(...))`
//!
//! All arithmetic is arbitrary precision; no routine here is allowed to
//! overflow or to round.

mod group;
mod hj;
mod inertia;
mod matrix;
mod snf;

pub use group::AbelianGroup;
pub use hj::{evaluate_hj, hj_continued_fraction};
pub use inertia::{determinant, signature, Inertia};
pub use matrix::{IntMatrix, SymIntMatrix};
pub use snf::{smith_normal_form, SmithDecomposition};

use num_bigint::BigInt;

/// Errors from the integer-algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntAlgError {
    #[error("hirzebruch-jung expansion needs 0 < q < p with gcd(p, q) = 1, got p = {p}, q = {q}")]
    HjDomain { p: BigInt, q: BigInt },
    #[error("continued fraction tail evaluates to zero before coefficient {index}")]
    HjZeroTail { index: usize },
    #[error("continued fraction coefficient list is empty")]
    HjEmpty,
    #[error("matrix rows have inconsistent lengths")]
    RaggedRows,
    #[error("matrix entry ({i}, {j}) breaks symmetry")]
    NotSymmetric { i: usize, j: usize },
    #[error("torsion coefficients must form a divisibility chain of integers >= 2")]
    BadTorsion,
}
