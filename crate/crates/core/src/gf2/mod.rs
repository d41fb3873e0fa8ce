//! Dense linear algebra over the two-element field.
//!
//! Everything here is a pure function on immutable values. Rows are packed
//! into 64-bit words, so row XOR and AND-popcount parity are the hot kernels.

mod matrix;
mod subspace;
mod text;
mod vector;

pub use matrix::{Gf2Matrix, Orientation, StructuralFlags};
pub use subspace::{SubspaceBasis, SubspaceIter};
pub use vector::Gf2Vector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("matrix is not upper-triangular")]
    NotUpperTriangular,
    #[error("matrix is singular: diagonal entry {} is zero", index + 1)]
    Singular { index: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
}
