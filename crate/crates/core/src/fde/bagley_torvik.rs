//! The Bagley–Torvik equation `a y'' + b D^{3/2} y + c y = f(t)`,
//! `y(0) = y₀`, `y'(0) = y'₀`, rewritten for
//! `z = (y, D^{1/2}y, y', D^{3/2}y)` as `D^{1/2} z = B z + C f`.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::{solve_caputo, DerivativeKind, FdeProblem, SolverError, TimeGrid, Trajectory};
use crate::linalg::ComplexMatrix;
use crate::special::{erfc, EvalConfig};

type ScalarForcing = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
pub struct BagleyTorvikSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub y0: f64,
    pub yp0: f64,
    /// `None` means `f ≡ 0`.
    pub forcing: Option<ScalarForcing>,
}

impl std::fmt::Debug for BagleyTorvikSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BagleyTorvikSpec")
            .field("a", &self.a)
            .field("b", &self.b)
            .field("c", &self.c)
            .field("y0", &self.y0)
            .field("yp0", &self.yp0)
            .field("forced", &self.forcing.is_some())
            .finish()
    }
}

impl BagleyTorvikSpec {
    pub fn new(a: f64, b: f64, c: f64, y0: f64, yp0: f64) -> Self {
        BagleyTorvikSpec {
            a,
            b,
            c,
            y0,
            yp0,
            forcing: None,
        }
    }

    pub fn with_forcing(mut self, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        self.forcing = Some(Arc::new(f));
        self
    }

    fn validate(&self) -> Result<(), SolverError> {
        if self.a == 0.0 {
            return Err(SolverError::InvalidSpec(
                "the coefficient a must be non-zero".into(),
            ));
        }
        if ![self.a, self.b, self.c, self.y0, self.yp0]
            .iter()
            .all(|x| x.is_finite())
        {
            return Err(SolverError::InvalidSpec(
                "coefficients and initial data must be finite".into(),
            ));
        }
        Ok(())
    }
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `(B, C, z₀)` of the first-order system of order one half.
pub fn bagley_torvik_reduce(
    s: &BagleyTorvikSpec,
) -> Result<(ComplexMatrix, Vec<Complex64>, Vec<Complex64>), SolverError> {
    s.validate()?;
    let b = ComplexMatrix::from_real_rows(&[
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [-s.c / s.a, 0.0, 0.0, -s.b / s.a],
    ]);
    let c = vec![real(0.0), real(0.0), real(0.0), real(1.0 / s.a)];
    let z0 = vec![real(s.y0), real(0.0), real(s.yp0), real(0.0)];
    Ok((b, c, z0))
}

/// Full trajectory of `z`; [`Trajectory::y`] extracts `y`.
pub fn bagley_torvik_solve(
    s: &BagleyTorvikSpec,
    grid: &TimeGrid,
    cfg: &EvalConfig,
) -> Result<Trajectory, SolverError> {
    let (b, c, z0) = bagley_torvik_reduce(s)?;
    let mut problem = FdeProblem::new(b, 0.5, DerivativeKind::Caputo, z0);
    if let Some(f) = &s.forcing {
        let f = Arc::clone(f);
        problem = problem.with_forcing(move |t: f64| {
            let v = f(t);
            c.iter().map(|ci| ci * v).collect::<Vec<_>>()
        });
    }
    solve_caputo(&problem, grid, cfg)
}

/// `e^{p²} erfc(−p)`, the value of `E_{1/2,1}(p)`.
fn ep(p: f64) -> f64 {
    (p * p).exp() * erfc(real(-p)).re
}

/// Closed form of `E_{1/2,1}(B)` for `B` with last row `(0, 0, 0, p)`.
pub fn reference_h1(p: f64) -> Result<ComplexMatrix, SolverError> {
    if p == 0.0 {
        return Err(SolverError::SingularReference);
    }
    let e = ep(p);
    let r = (1.0 / PI).sqrt();
    let (p2, p3) = (p * p, p * p * p);
    Ok(ComplexMatrix::from_real_rows(&[
        [
            1.0,
            2.0 * r,
            1.0,
            e / p3 - 1.0 / p3 - 2.0 / p2 * r - 1.0 / p,
        ],
        [0.0, 1.0, 2.0 * r, e / p2 - 1.0 / p2 - 2.0 / p * r],
        [0.0, 0.0, 1.0, e / p - 1.0 / p],
        [0.0, 0.0, 0.0, e],
    ]))
}

/// Closed form of `E_{1/2,1/2}(B)` for `B` with last row `(0, 0, 0, p)`.
pub fn reference_h2(p: f64) -> Result<ComplexMatrix, SolverError> {
    if p == 0.0 {
        return Err(SolverError::SingularReference);
    }
    let e = ep(p);
    let sp = PI.sqrt();
    let p2 = p * p;
    Ok(ComplexMatrix::from_real_rows(&[
        [1.0 / sp, 1.0, 2.0 / sp, e / p2 - 1.0 / p2 - 2.0 / (p * sp)],
        [0.0, 1.0 / sp, 1.0, e / p - 1.0 / p],
        [0.0, 0.0, 1.0 / sp, e],
        [0.0, 0.0, 0.0, p * e + 1.0 / sp],
    ]))
}
