//! Scalar special functions: reciprocal gamma, complementary error function
//! and the three-parameter (Prabhakar) Mittag-Leffler function
//!
//! ```text
//! E^ρ_{α,β}(z) = Σ_k (ρ)_k z^k / (k! Γ(αk + β))
//! ```
//!
//! together with the derivative relation
//! `dᵐ/dzᵐ E_{α,β}(z) = m! E^{m+1}_{α,β+αm}(z)`.

mod dd;
mod erfc;
mod gamma;
mod mittag_leffler;

use num_complex::Complex64;
use thiserror::Error;

pub use erfc::erfc;
pub use gamma::rgamma;
pub use mittag_leffler::{ml_derivative, ml_evaluate, ml_scalar, MlEvaluation, Strategy};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecialError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    /// Best-effort value together with its estimated absolute error.
    #[error(
        "requested accuracy unreachable: best value {value} with estimated error {estimate:e}"
    )]
    RequestedAccuracyUnreachable { value: Complex64, estimate: f64 },
    #[error("result overflows double precision at z = {0}")]
    Overflow(Complex64),
}

/// Parameters `(α, β, ρ)` of `E^ρ_{α,β}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MLParams {
    pub alpha: f64,
    pub beta: Complex64,
    pub rho: Complex64,
}

impl MLParams {
    /// Two-parameter function `E_{α,β}` (ρ = 1).
    pub fn new(alpha: f64, beta: impl Into<Complex64>) -> Self {
        MLParams {
            alpha,
            beta: beta.into(),
            rho: Complex64::new(1.0, 0.0),
        }
    }

    pub fn with_rho(alpha: f64, beta: impl Into<Complex64>, rho: impl Into<Complex64>) -> Self {
        MLParams {
            alpha,
            beta: beta.into(),
            rho: rho.into(),
        }
    }

    pub fn validate(&self) -> Result<(), SpecialError> {
        if !(self.alpha > 0.0) || !self.alpha.is_finite() {
            return Err(SpecialError::InvalidParams(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if !self.beta.is_finite() || !self.rho.is_finite() {
            return Err(SpecialError::InvalidParams(
                "beta and rho must be finite".into(),
            ));
        }
        Ok(())
    }

    /// `Some(m)` when ρ is a positive integer.
    pub(crate) fn integer_rho(&self) -> Option<usize> {
        let r = self.rho;
        (r.im == 0.0 && r.re >= 1.0 && r.re == r.re.round() && r.re < 1e6).then_some(r.re as usize)
    }
}

/// Accuracy and strategy controls for scalar evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Accepted error, absolute for `|E| <= 1` and relative above.
    pub target_accuracy: f64,
    /// Inside this radius only the power series is used.
    pub series_radius: f64,
    pub max_series_terms: usize,
    /// Trapezoidal nodes per half contour; derived from the target when `None`.
    pub contour_nodes: Option<usize>,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            target_accuracy: 1e-13,
            series_radius: 1.0,
            max_series_terms: 500,
            contour_nodes: None,
        }
    }
}

impl EvalConfig {
    pub fn with_accuracy(target_accuracy: f64) -> Self {
        EvalConfig {
            target_accuracy,
            ..EvalConfig::default()
        }
    }

    pub fn validate(&self) -> Result<(), SpecialError> {
        if !(self.target_accuracy > 0.0) {
            return Err(SpecialError::InvalidParams(format!(
                "target accuracy must be positive, got {}",
                self.target_accuracy
            )));
        }
        if self.max_series_terms == 0 {
            return Err(SpecialError::InvalidParams(
                "max_series_terms must be at least 1".into(),
            ));
        }
        if !(self.series_radius >= 0.0) {
            return Err(SpecialError::InvalidParams(
                "series_radius must be non-negative".into(),
            ));
        }
        if self.contour_nodes == Some(0) {
            return Err(SpecialError::InvalidParams(
                "contour_nodes must be at least 1".into(),
            ));
        }
        Ok(())
    }
}
