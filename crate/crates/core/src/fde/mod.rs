//! Linear fractional systems `Dᵅz = Az + f(t)`, `0 < α <= 1`, solved in
//! closed form through matrix Mittag-Leffler functions.
//!
//! * Caputo: `z(t) = E_{α,1}(Atᵅ) z⁰ + ∫₀ᵗ (t−τ)^{α−1} E_{α,α}(A(t−τ)ᵅ) f(τ) dτ`
//! * Riemann–Liouville: the first term becomes `t^{α−1} E_{α,α}(Atᵅ) z⁰`.
//!
//! The convolution is discretized by product integration on a uniform grid.
//! The Bagley–Torvik equation `a y'' + b D^{3/2} y + c y = f` is reduced to a
//! four-dimensional system of order one half.

mod bagley_torvik;
mod forcing;
mod solver;

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::matfun::{MatrixFunctionError, Warning};

pub use bagley_torvik::{
    bagley_torvik_reduce, bagley_torvik_solve, reference_h1, reference_h2, BagleyTorvikSpec,
};
pub use forcing::{Forcing, ForcingError, SampledForcing};
pub use solver::{convolve_forcing, solve, solve_caputo, solve_rl};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SolverError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid Bagley-Torvik specification: {0}")]
    InvalidSpec(String),
    #[error("reference matrices are undefined at p = 0")]
    SingularReference,
    #[error("forcing evaluation failed at node {node} (t = {t}): {source}")]
    Forcing {
        node: usize,
        t: f64,
        #[source]
        source: ForcingError,
    },
    #[error(transparent)]
    MatrixFunction(#[from] MatrixFunctionError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeKind {
    RiemannLiouville,
    Caputo,
}

/// `Dᵅz = Az + f`, with `z⁰` read as `z(0)` (Caputo) or as the limit of the
/// fractional integral of order `1 − α` at zero (Riemann–Liouville).
pub struct FdeProblem {
    pub a: ComplexMatrix,
    pub alpha: f64,
    pub kind: DerivativeKind,
    pub z0: Vec<Complex64>,
    /// `None` means `f ≡ 0`.
    pub forcing: Option<Box<dyn Forcing>>,
}

impl FdeProblem {
    pub fn new(a: ComplexMatrix, alpha: f64, kind: DerivativeKind, z0: Vec<Complex64>) -> Self {
        FdeProblem {
            a,
            alpha,
            kind,
            z0,
            forcing: None,
        }
    }

    pub fn with_forcing(mut self, f: impl Forcing + 'static) -> Self {
        self.forcing = Some(Box::new(f));
        self
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !self.a.is_square() {
            return Err(SolverError::InvalidProblem(format!(
                "A must be square, got {}x{}",
                self.a.rows(),
                self.a.cols()
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(SolverError::InvalidProblem(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if self.z0.len() != self.dim() {
            return Err(SolverError::InvalidProblem(format!(
                "initial vector has length {}, expected {}",
                self.z0.len(),
                self.dim()
            )));
        }
        if self.z0.iter().any(|z| !z.is_finite()) {
            return Err(SolverError::InvalidProblem(
                "initial vector must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// Uniform grid `tᵢ = i·h`, `h = t_end / steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_end: f64,
    steps: usize,
}

impl TimeGrid {
    pub fn new(t_end: f64, steps: usize) -> Result<Self, SolverError> {
        if !(t_end > 0.0 && t_end.is_finite()) {
            return Err(SolverError::InvalidProblem(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        if steps == 0 {
            return Err(SolverError::InvalidProblem(
                "steps must be at least 1".into(),
            ));
        }
        Ok(TimeGrid { t_end, steps })
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn h(&self) -> f64 {
        self.t_end / self.steps as f64
    }

    /// Node `i`; the last node is exactly `t_end`.
    pub fn node(&self, i: usize) -> f64 {
        if i == self.steps {
            self.t_end
        } else {
            i as f64 * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.steps).map(|i| self.node(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Solution on a grid, split into its two closed-form terms.
///
/// A node where the homogeneous term is singular (the Riemann–Liouville
/// solution at `t = 0` for `α < 1`) holds `None` in `values` and
/// `homogeneous_part`.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub grid: TimeGrid,
    pub values: Vec<Option<Vec<Complex64>>>,
    pub homogeneous_part: Vec<Option<Vec<Complex64>>>,
    pub forced_part: Vec<Vec<Complex64>>,
    /// Diagnostics raised by the matrix-function evaluations.
    pub warnings: Vec<Warning>,
}

impl Trajectory {
    fn assemble(
        grid: TimeGrid,
        homogeneous_part: Vec<Option<Vec<Complex64>>>,
        forced_part: Vec<Vec<Complex64>>,
    ) -> Self {
        let values = homogeneous_part
            .iter()
            .zip(&forced_part)
            .map(|(h, f)| {
                h.as_ref()
                    .map(|h| h.iter().zip(f).map(|(a, b)| a + b).collect())
            })
            .collect();
        Trajectory {
            grid,
            values,
            homogeneous_part,
            forced_part,
            warnings: Vec::new(),
        }
    }

    pub fn is_singular(&self, node: usize) -> bool {
        self.values[node].is_none()
    }

    /// Component `k` at every node.
    pub fn component(&self, k: usize) -> Vec<Option<Complex64>> {
        self.values
            .iter()
            .map(|v| v.as_ref().map(|v| v[k]))
            .collect()
    }

    /// First component; for a Bagley–Torvik trajectory this is `y`.
    pub fn y(&self) -> Vec<Option<Complex64>> {
        self.component(0)
    }

    pub fn last(&self) -> Option<&[Complex64]> {
        self.values.last().and_then(|v| v.as_deref())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_nodes_are_uniform_and_end_exactly() {
        let g = TimeGrid::new(0.3, 7).unwrap();
        let n = g.nodes();
        assert_eq!(n.len(), 8);
        assert_eq!(n[0], 0.0);
        assert_eq!(n[7], 0.3);
        assert!(n.windows(2).all(|w| w[1] > w[0]));
        assert!(TimeGrid::new(0.0, 3).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
    }

    #[test]
    fn problem_validation() {
        let a = ComplexMatrix::identity(2);
        let z0 = vec![Complex64::new(1.0, 0.0); 2];
        assert!(
            FdeProblem::new(a.clone(), 0.5, DerivativeKind::Caputo, z0.clone())
                .validate()
                .is_ok()
        );
        assert!(
            FdeProblem::new(a.clone(), 1.5, DerivativeKind::Caputo, z0.clone())
                .validate()
                .is_err()
        );
        assert!(FdeProblem::new(a.clone(), 0.0, DerivativeKind::Caputo, z0)
            .validate()
            .is_err());
        assert!(FdeProblem::new(
            a,
            0.5,
            DerivativeKind::Caputo,
            vec![Complex64::new(1.0, 0.0)]
        )
        .validate()
        .is_err());
    }
}
