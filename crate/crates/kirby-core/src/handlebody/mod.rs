//! Handle decompositions and the elementary Kirby moves.
//!
//! A 4-manifold handle decomposition is tracked by its algebraic shadow:
//! handle counts, labeled dotted circles (1-handles), and 2-handles with
//! framings, knot tags, a symmetric linking matrix and signed incidences over
//! the dotted circles. Handle slides, blow-ups/downs and 1-/2-handle
//! cancellation rewrite that data exactly; anything a move cannot certify is
//! recorded as [`ExtInt::Unknown`] instead of guessed, and no operation ever
//! turns an unknown back into a number.

mod decomp;
mod extint;
mod format;
mod moves;
mod types;

pub use decomp::{BoundaryOrder, HandleDecomposition};
pub use extint::{ExtInt, Sign};
pub use types::{HandleCounts, KnotTag, TwoHandle};

use num_bigint::BigInt;

/// Errors from construction, parsing and moves.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HandleError {
    #[error("no 2-handle labeled `{0}`")]
    NoTwoHandle(String),
    #[error("no 1-handle labeled `{0}`")]
    NoOneHandle(String),
    #[error("duplicate handle label `{0}`")]
    DuplicateLabel(String),
    #[error("a decomposition needs at least one 0-handle")]
    NoZeroHandle,
    #[error("linking matrix shape must match the 2-handle count")]
    LinkingShape,
    #[error("linking matrix is not symmetric at ({0}, {1})")]
    LinkingAsymmetric(usize, usize),
    #[error("linking diagonal for `{0}` disagrees with its framing")]
    DiagonalMismatch(String),
    #[error("incidence matrix shape must be (1-handles) x (2-handles)")]
    IncidenceShape,
    #[error("cannot slide `{0}` over itself")]
    SlideSameHandle(String),
    #[error("blow-down needs framing +1 or -1 on `{label}`, got {framing}")]
    FramingNotUnit { label: String, framing: ExtInt },
    #[error("strict blow-down needs a certified unknot tag on `{0}`")]
    StrictKnot(String),
    #[error("strict blow-down needs zero incidence over every dotted circle for `{0}`")]
    StrictIncidence(String),
    #[error("cannot clear unknown linking between `{a}` and `{b}`")]
    UnknownLinking { a: String, b: String },
    #[error("`{k}` is not a meridian of `{d}`: incidence {value}, need +1 or -1")]
    NonMeridian { d: String, k: String, value: BigInt },
    #[error("decomposition already has a 4-handle")]
    DuplicateFourHandle,
    #[error("boundary invariants need a decomposition without 1-handles")]
    BoundaryOneHandles,
    #[error("boundary invariants need a decomposition without 3- or 4-handles")]
    BoundaryUpperHandles,
    #[error("boundary invariants need fully known linking data")]
    BoundaryUnknownLinking,
    #[error("decomposition file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
