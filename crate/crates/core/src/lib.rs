//! Matrix Mittag-Leffler functions computed from the Jordan canonical form,
//! and their use in closed-form solutions of linear fractional differential
//! systems.
//!
//! The crate is organized in four modules:
//!
//! * [`linalg`] -- dense complex linear algebra (Schur form, eigenvalues,
//!   numerical rank, Jordan decomposition)
//! * [`special`] -- reciprocal gamma, complementary error function and the
//!   three-parameter (Prabhakar) Mittag-Leffler function
//! * [`matfun`] -- `E_{α,β}(A)` assembled block by block, plus the
//!   interpolation-polynomial evaluation used as an independent check
//! * [`fde`] -- Caputo and Riemann–Liouville linear systems, the forcing
//!   convolution, and the Bagley–Torvik reduction with its closed-form
//!   reference matrices

pub mod fde;
pub mod linalg;
pub mod matfun;
pub mod special;

pub use fde::{
    bagley_torvik_reduce, bagley_torvik_solve, convolve_forcing, reference_h1, reference_h2, solve,
    solve_caputo, solve_rl, BagleyTorvikSpec, DerivativeKind, FdeProblem, Forcing, ForcingError,
    SampledForcing, SolverError, TimeGrid, Trajectory,
};
pub use linalg::{
    jordan_decompose, ComplexMatrix, ComplexScalar, JordanDecomposition, LinalgError,
};
pub use matfun::{
    alpha_exponential, fill_jordan_block, interpolation_oracle, ml_matrix, ml_matrix_scaled,
    spectrum_values, MatrixFunctionError, MatrixResult, SpectrumValues, Warning,
};
pub use special::{erfc, ml_derivative, ml_scalar, rgamma, EvalConfig, MLParams, SpecialError};
