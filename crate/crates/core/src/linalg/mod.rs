//! Dense complex linear algebra: Schur form, eigenvalues, numerical rank,
//! linear solves and the Jordan decomposition used by the matrix-function
//! engine.

mod cluster;
mod hessenberg;
mod jordan;
mod lu;
mod matrix;
mod schur;
mod svd;

use thiserror::Error;

pub use cluster::{
    cluster_eigenvalues, cluster_eigenvalues_adaptive, default_cluster_tol, EigenvalueCluster,
};
pub use hessenberg::hessenberg_reduce;
pub use jordan::{
    jordan_decompose, jordan_decompose_with, JordanBlock, JordanDecomposition, JordanOptions,
    ILL_CONDITIONED_THRESHOLD,
};
pub use lu::{inverse, solve_linear, LuDecomposition};
pub use matrix::{vec_norm, ComplexMatrix, ComplexScalar};
pub use schur::{eigenvalues, SchurDecomposition, DEFAULT_MAX_QR_ITER};
pub use svd::{default_rank_tol, rank_above, rank_with_tol, singular_values, SingularValues};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    DataLength { expected: usize, found: usize },
    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix is numerically singular (pivot {pivot})")]
    SingularMatrix { pivot: usize },
    #[error("QR iteration did not converge for eigenvalue {index} within {sweeps} sweeps")]
    NonConvergence { index: usize, sweeps: usize },
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("Jordan structure could not be determined: {0}")]
    DefectiveStructureUndetermined(String),
}
