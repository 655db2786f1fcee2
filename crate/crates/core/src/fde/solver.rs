use num_complex::Complex64;
use rayon::prelude::*;

use super::{DerivativeKind, FdeProblem, Forcing, ForcingError, SolverError, TimeGrid, Trajectory};
use crate::linalg::{jordan_decompose, ComplexMatrix, JordanDecomposition};
use crate::matfun::{ml_matrix_scaled, MatrixFunctionError, Warning};
use crate::special::EvalConfig;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn decompose(a: &ComplexMatrix) -> Result<JordanDecomposition, SolverError> {
    jordan_decompose(a, None)
        .map_err(|e| SolverError::MatrixFunction(MatrixFunctionError::Linalg(e)))
}

fn merge_warnings(into: &mut Vec<Warning>, from: Vec<Warning>) {
    for w in from {
        let seen = into
            .iter()
            .any(|v| std::mem::discriminant(v) == std::mem::discriminant(&w));
        if !seen {
            into.push(w);
        }
    }
}

/// Dispatches on the derivative kind of the problem.
pub fn solve(p: &FdeProblem, grid: &TimeGrid, cfg: &EvalConfig) -> Result<Trajectory, SolverError> {
    match p.kind {
        DerivativeKind::Caputo => solve_caputo(p, grid, cfg),
        DerivativeKind::RiemannLiouville => solve_rl(p, grid, cfg),
    }
}

/// Caputo system: `z(t) = E_{α,1}(Atᵅ) z⁰ + (forcing convolution)`.
pub fn solve_caputo(
    p: &FdeProblem,
    grid: &TimeGrid,
    cfg: &EvalConfig,
) -> Result<Trajectory, SolverError> {
    if p.kind != DerivativeKind::Caputo {
        return Err(SolverError::InvalidProblem(
            "solve_caputo needs a Caputo problem".into(),
        ));
    }
    solve_kind(p, grid, cfg)
}

/// Riemann–Liouville system: `z(t) = t^{α−1} E_{α,α}(Atᵅ) z⁰ + (forcing
/// convolution)`. The node `t = 0` is singular for `α < 1`.
pub fn solve_rl(
    p: &FdeProblem,
    grid: &TimeGrid,
    cfg: &EvalConfig,
) -> Result<Trajectory, SolverError> {
    if p.kind != DerivativeKind::RiemannLiouville {
        return Err(SolverError::InvalidProblem(
            "solve_rl needs a Riemann-Liouville problem".into(),
        ));
    }
    solve_kind(p, grid, cfg)
}

fn solve_kind(
    p: &FdeProblem,
    grid: &TimeGrid,
    cfg: &EvalConfig,
) -> Result<Trajectory, SolverError> {
    p.validate()?;
    cfg.validate().map_err(MatrixFunctionError::from)?;
    let jd = decompose(&p.a)?;
    let real_input = p.a.is_real();
    let alpha = p.alpha;

    let homogeneous: Vec<(Option<Vec<Complex64>>, Vec<Warning>)> = grid
        .nodes()
        .into_par_iter()
        .map(|t| {
            if t == 0.0 {
                let v = match p.kind {
                    DerivativeKind::Caputo => Some(p.z0.clone()),
                    DerivativeKind::RiemannLiouville if alpha == 1.0 => Some(p.z0.clone()),
                    DerivativeKind::RiemannLiouville => None,
                };
                return Ok((v, Vec::new()));
            }
            let (beta, factor) = match p.kind {
                DerivativeKind::Caputo => (1.0, 1.0),
                DerivativeKind::RiemannLiouville => (alpha, t.powf(alpha - 1.0)),
            };
            let e = ml_matrix_scaled(&jd, t.powf(alpha), alpha, real(beta), cfg, real_input)?;
            let v = e
                .value
                .mul_vec(&p.z0)
                .into_iter()
                .map(|x| x * factor)
                .collect();
            Ok((Some(v), e.warnings))
        })
        .collect::<Result<_, SolverError>>()?;

    let mut warnings = Vec::new();
    let mut homogeneous_part = Vec::with_capacity(homogeneous.len());
    for (v, w) in homogeneous {
        homogeneous_part.push(v);
        merge_warnings(&mut warnings, w);
    }

    let forced_part = match &p.forcing {
        Some(f) => {
            let (forced, w) = convolve_with(&jd, real_input, alpha, f.as_ref(), grid, cfg)?;
            merge_warnings(&mut warnings, w);
            forced
        }
        None => vec![vec![real(0.0); p.dim()]; grid.len()],
    };

    let mut traj = Trajectory::assemble(*grid, homogeneous_part, forced_part);
    traj.warnings = warnings;
    Ok(traj)
}

/// `∫₀ᵗ (t−τ)^{α−1} E_{α,α}(A(t−τ)ᵅ) f(τ) dτ` at every grid node.
///
/// On each subinterval `f` is replaced by its linear interpolant, and the
/// whole kernel is integrated against it exactly through its moments
///
/// ```text
/// ∫₀^σ s^{α−1} E_{α,α}(Asᵅ) ds   = σᵅ E_{α,α+1}(Aσᵅ)
/// ∫₀^σ s^α E_{α,α}(Asᵅ) ds       = σ^{α+1} (E_{α,α+1}(Aσᵅ) − E_{α,α+2}(Aσᵅ))
/// ```
///
/// which follow from integrating the series term by term. The only
/// discretization error is the interpolation of `f`, giving order
/// `min(2, 2 − α + smoothness of f at 0)`; smooth `f` yields order 2. Lags
/// are multiples of `h`, so the weights are computed once per lag.
pub fn convolve_forcing(
    a: &ComplexMatrix,
    alpha: f64,
    f: &dyn Forcing,
    grid: &TimeGrid,
    cfg: &EvalConfig,
) -> Result<Vec<Vec<Complex64>>, SolverError> {
    if !a.is_square() {
        return Err(SolverError::InvalidProblem(format!(
            "A must be square, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(SolverError::InvalidProblem(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let jd = decompose(a)?;
    convolve_with(&jd, a.is_real(), alpha, f, grid, cfg).map(|(v, _)| v)
}

fn sample_forcing(
    f: &dyn Forcing,
    grid: &TimeGrid,
    n: usize,
) -> Result<Vec<Vec<Complex64>>, SolverError> {
    grid.nodes()
        .into_iter()
        .enumerate()
        .map(|(node, t)| {
            let v = f
                .eval(t)
                .map_err(|source| SolverError::Forcing { node, t, source })?;
            if v.len() != n {
                return Err(SolverError::Forcing {
                    node,
                    t,
                    source: ForcingError::Dimension {
                        expected: n,
                        found: v.len(),
                    },
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(SolverError::Forcing {
                    node,
                    t,
                    source: ForcingError::Other("non-finite value".into()),
                });
            }
            Ok(v)
        })
        .collect()
}

fn convolve_with(
    jd: &JordanDecomposition,
    real_input: bool,
    alpha: f64,
    f: &dyn Forcing,
    grid: &TimeGrid,
    cfg: &EvalConfig,
) -> Result<(Vec<Vec<Complex64>>, Vec<Warning>), SolverError> {
    let n = jd.dim();
    let steps = grid.steps();
    let h = grid.h();
    let samples = sample_forcing(f, grid, n)?;

    // Kernel moments at every lag σ = k·h.
    let moments: Vec<(ComplexMatrix, ComplexMatrix, Vec<Warning>)> = (1..=steps)
        .into_par_iter()
        .map(|k| {
            let s = k as f64 * h;
            let x = s.powf(alpha);
            let e1 = ml_matrix_scaled(jd, x, alpha, real(alpha + 1.0), cfg, real_input)?;
            let e2 = ml_matrix_scaled(jd, x, alpha, real(alpha + 2.0), cfg, real_input)?;
            let m0 = e1.value.scale_real(x);
            let m1 = (&e1.value - &e2.value).scale_real(x * s);
            let mut w = e1.warnings;
            merge_warnings(&mut w, e2.warnings);
            Ok((m0, m1, w))
        })
        .collect::<Result<_, SolverError>>()?;

    let mut warnings = Vec::new();
    let zero = ComplexMatrix::zeros(n, n);
    // P_k multiplies the sample at the older end of the k-th lag interval,
    // Q_k the newer one.
    let mut p_w = Vec::with_capacity(steps);
    let mut q_w = Vec::with_capacity(steps);
    for k in 0..steps {
        let (m0_lo, m1_lo) = if k == 0 {
            (&zero, &zero)
        } else {
            (&moments[k - 1].0, &moments[k - 1].1)
        };
        let (m0_hi, m1_hi) = (&moments[k].0, &moments[k].1);
        let d0 = m0_hi - m0_lo;
        let d1 = m1_hi - m1_lo;
        let kh = k as f64 * h;
        p_w.push((&d1 - &d0.scale_real(kh)).scale_real(1.0 / h));
        q_w.push((&d0.scale_real(kh + h) - &d1).scale_real(1.0 / h));
    }
    for (_, _, w) in moments {
        merge_warnings(&mut warnings, w);
    }

    let forced: Vec<Vec<Complex64>> = (0..=steps)
        .into_par_iter()
        .map(|m| {
            let mut acc = vec![real(0.0); n];
            for k in 0..m {
                let older = p_w[k].mul_vec(&samples[m - k - 1]);
                let newer = q_w[k].mul_vec(&samples[m - k]);
                for ((a, o), w) in acc.iter_mut().zip(older).zip(newer) {
                    *a += o + w;
                }
            }
            acc
        })
        .collect();
    Ok((forced, warnings))
}
