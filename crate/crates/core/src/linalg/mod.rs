//! Exact sparse linear algebra over Q(ζ_n).

mod echelon;
mod sparse;
mod subspace;

use thiserror::Error;

pub use echelon::{
    cokernel_projector, nullspace, rank, rank_with, rref, rref_with, solve, Cokernel, EliminationOptions, Rref,
};
pub use sparse::{axpy, dense_from_sparse, sparse_from_dense, SparseMatrix, SparseVec};
pub use subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("linear system has no solution")]
    NoSolution,
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },
}

/// `nullity(d_in) − rank(d_out)` for a composable pair with `d_in ∘ d_out = 0`.
///
/// `d_in` leaves the space, `d_out` enters it. Panics if the difference would
/// be negative, which can only happen if the pair is not a complex.
pub fn homology_dim(space_dim: usize, rank_in: usize, rank_out: usize) -> usize {
    let nullity = space_dim.checked_sub(rank_in).expect("rank exceeds dimension");
    nullity.checked_sub(rank_out).expect("negative homology: differentials do not compose to zero")
}
