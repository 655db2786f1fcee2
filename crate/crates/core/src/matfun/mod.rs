//! Matrix Mittag-Leffler functions.
//!
//! `E_{α,β}(A) = Z · diag(E_{α,β}(J_k)) · Z⁻¹`, where each block function is
//! the upper-triangular Toeplitz matrix whose `j`-th superdiagonal holds
//! `E^{j+1}_{α,β+jα}(λ_k) = f^{(j)}(λ_k) / j!`.

mod oracle;

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{jordan_decompose, ComplexMatrix, JordanDecomposition, LinalgError};
use crate::special::{ml_scalar, EvalConfig, MLParams, SpecialError};

pub use oracle::{interpolation_oracle, spectrum_values, SpectrumValues, MAX_ORACLE_DEGREE};

/// Imaginary residue below this fraction of the real part is discarded for
/// real input.
pub const REALIFICATION_TOL: f64 = 1e-8;

/// Largest eigenvalue magnitude accepted by [`ml_matrix`].
pub const EIGENVALUE_LIMIT: f64 = 100.0;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MatrixFunctionError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("alpha must be positive and finite, got {0}")]
    InvalidAlpha(f64),
    #[error("t must be positive and finite, got {0}")]
    InvalidTime(f64),
    #[error("eigenvalue {eigenvalue} exceeds the supported magnitude {limit}")]
    DomainLimit { eigenvalue: Complex64, limit: f64 },
    #[error("interpolation degree {degree} exceeds the limit {limit}")]
    DegreeOverflow { degree: usize, limit: usize },
    #[error("spectrum values inconsistent with the matrix: {0}")]
    InconsistentSpectrum(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

/// Diagnostics that do not prevent a result from being returned.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `Z` is poorly conditioned; the result may have lost accuracy.
    IllConditionedTransform { condition_estimate: f64 },
    /// Real input produced an imaginary part too large to be rounding residue.
    ImaginaryResidue { imag_norm: f64, real_norm: f64 },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::IllConditionedTransform { condition_estimate } => {
                write!(f, "Jordan transform is ill-conditioned (estimate {condition_estimate:.3e})")
            }
            Warning::ImaginaryResidue { imag_norm, real_norm } => write!(
                f,
                "imaginary part {imag_norm:.3e} of a real matrix function is not negligible against {real_norm:.3e}"
            ),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MatrixResult {
    pub value: ComplexMatrix,
    pub warnings: Vec<Warning>,
    pub condition_estimate: f64,
    /// Frobenius norm of the imaginary part before realification.
    pub imag_residue: f64,
}

impl MatrixResult {
    pub fn into_value(self) -> ComplexMatrix {
        self.value
    }
}

fn check_alpha(alpha: f64) -> Result<(), MatrixFunctionError> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(MatrixFunctionError::InvalidAlpha(alpha))
    }
}

/// First row of the block function: `E^{j+1}_{α,β+jα}(λ)` for `j < size`.
fn toeplitz_row(
    lambda: Complex64,
    size: usize,
    alpha: f64,
    beta: Complex64,
    cfg: &EvalConfig,
) -> Result<Vec<Complex64>, SpecialError> {
    (0..size)
        .map(|j| {
            let p = MLParams::with_rho(alpha, beta + alpha * j as f64, (j + 1) as f64);
            ml_scalar(lambda, &p, cfg)
        })
        .collect()
}

fn toeplitz(row: &[Complex64], size: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(size, size, |i, j| {
        if j >= i {
            row[j - i]
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `E_{α,β}` of a single Jordan block of the given size at `λ`.
pub fn fill_jordan_block(
    lambda: Complex64,
    size: usize,
    alpha: f64,
    beta: Complex64,
    cfg: &EvalConfig,
) -> Result<ComplexMatrix, MatrixFunctionError> {
    check_alpha(alpha)?;
    if size == 0 {
        return Err(MatrixFunctionError::InconsistentSpectrum(
            "block size must be at least 1".into(),
        ));
    }
    Ok(toeplitz(
        &toeplitz_row(lambda, size, alpha, beta, cfg)?,
        size,
    ))
}

/// `E_{α,β}(A)` from the Jordan decomposition of `A`.
pub fn ml_matrix(
    a: &ComplexMatrix,
    alpha: f64,
    beta: Complex64,
    cfg: &EvalConfig,
) -> Result<MatrixResult, MatrixFunctionError> {
    check_alpha(alpha)?;
    if !a.is_square() {
        return Err(MatrixFunctionError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    cfg.validate()?;
    let jd = jordan_decompose(a, None)?;
    ml_matrix_scaled(&jd, 1.0, alpha, beta, cfg, a.is_real() && beta.im == 0.0)
}

/// `E_{α,β}(s·A)` from a decomposition of `A`, for real `s >= 0`.
///
/// `s·(λI + N)` has the same chains as `λI + N`, so the block function only
/// needs its `j`-th superdiagonal rescaled by `sʲ`. This lets one
/// decomposition serve a whole family of time-scaled arguments. When
/// `real_input` is set the imaginary rounding residue is removed.
pub fn ml_matrix_scaled(
    jd: &JordanDecomposition,
    scale: f64,
    alpha: f64,
    beta: Complex64,
    cfg: &EvalConfig,
    real_input: bool,
) -> Result<MatrixResult, MatrixFunctionError> {
    check_alpha(alpha)?;
    if let Some(b) = jd
        .blocks
        .iter()
        .find(|b| (b.eigenvalue * scale).norm() > EIGENVALUE_LIMIT)
    {
        return Err(MatrixFunctionError::DomainLimit {
            eigenvalue: b.eigenvalue * scale,
            limit: EIGENVALUE_LIMIT,
        });
    }

    // One Toeplitz row per distinct eigenvalue, long enough for its largest
    // block; every block of that eigenvalue is a leading section of it.
    let index = jd.index_per_eigenvalue();
    let rows: Vec<Vec<Complex64>> = index
        .par_iter()
        .map(|&(lambda, size)| {
            let mut row = toeplitz_row(lambda * scale, size, alpha, beta, cfg)?;
            let mut sj = 1.0;
            for v in row.iter_mut().skip(1) {
                sj *= scale;
                *v *= sj;
            }
            Ok(row)
        })
        .collect::<Result<_, SpecialError>>()?;
    let blocks: Vec<ComplexMatrix> = jd
        .blocks
        .iter()
        .map(|b| {
            let k = index
                .iter()
                .position(|&(l, _)| l == b.eigenvalue)
                .expect("every block eigenvalue is a cluster representative");
            toeplitz(&rows[k], b.size)
        })
        .collect();
    let f_j = ComplexMatrix::block_diagonal(&blocks);
    let mut value = &(&jd.transform * &f_j) * &jd.transform_inverse;

    let mut warnings = Vec::new();
    if jd.is_ill_conditioned() {
        warnings.push(Warning::IllConditionedTransform {
            condition_estimate: jd.condition_estimate,
        });
    }
    let imag_residue = value.imag_part_norm();
    if real_input {
        let real_norm = value.real_part_norm();
        if imag_residue <= REALIFICATION_TOL * real_norm {
            value = value.realified();
        } else {
            warnings.push(Warning::ImaginaryResidue {
                imag_norm: imag_residue,
                real_norm,
            });
        }
    }
    Ok(MatrixResult {
        value,
        warnings,
        condition_estimate: jd.condition_estimate,
        imag_residue,
    })
}

/// Matrix α-exponential `t^{α−1} · E_{α,α}(A t^α)`.
pub fn alpha_exponential(
    a: &ComplexMatrix,
    t: f64,
    alpha: f64,
    cfg: &EvalConfig,
) -> Result<MatrixResult, MatrixFunctionError> {
    check_alpha(alpha)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(MatrixFunctionError::InvalidTime(t));
    }
    let mut r = ml_matrix(
        &a.scale_real(t.powf(alpha)),
        alpha,
        Complex64::new(alpha, 0.0),
        cfg,
    )?;
    r.value = r.value.scale_real(t.powf(alpha - 1.0));
    Ok(r)
}
