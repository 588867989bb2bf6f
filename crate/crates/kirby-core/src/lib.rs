//! An exact Kirby-calculus engine for 4-manifold handle decompositions.
//!
//! The engine represents a handle decomposition by its framed-link shadow:
//! handle counts, the symmetric linking matrix of the 2-handles (framings on
//! the diagonal), and the incidence of 2-handles over dotted circles. Kirby
//! moves (handle slides, blow-ups and blow-downs, 1-/2-handle cancellation)
//! are integer-matrix rewrites, and composite surgeries (rational blow-down,
//! logarithmic transform) emit machine-checkable certificates.
//!
//! Everything is exact: framings and linking numbers a construction cannot
//! certify are carried as an explicit `?` value rather than guessed, and all
//! integer arithmetic is arbitrary precision.

pub mod handlebody;
pub mod intalg;
pub mod plumbing;
pub mod script;
pub mod surgery;

pub use handlebody::{
    ExtInt, HandleCounts, HandleDecomposition, HandleError, KnotTag, Sign, TwoHandle,
};
pub use intalg::{AbelianGroup, Inertia, IntAlgError, IntMatrix, SymIntMatrix};
pub use plumbing::{LensSpace, PlumbingError, PlumbingGraph};
pub use script::{MoveScript, ParseError, ScriptError, Transcript};
pub use surgery::{Certificate, Figure6Shape, Figure8Shape, SurgeryError};
