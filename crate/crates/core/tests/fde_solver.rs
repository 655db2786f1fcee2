//! Fractional system solutions against independent constructions.

mod common;

use common::{c, companion, expm_series};
use mittag_core::fde::{
    bagley_torvik_solve, reference_h1, reference_h2, solve, solve_caputo, solve_rl,
    BagleyTorvikSpec, DerivativeKind, FdeProblem, TimeGrid, Trajectory,
};
use mittag_core::linalg::ComplexMatrix;
use mittag_core::matfun::ml_matrix;
use mittag_core::special::{ml_scalar, rgamma, EvalConfig, MLParams};
use num_complex::Complex64;
use proptest::prelude::*;

fn vec_err(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn test_matrix() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[-1.0, 0.5], [-0.3, -0.8]])
}

/// Deviation from `z(t) = t·z¹` on the manufactured problem, at the final
/// time and the largest over all nodes.
pub fn manufactured_error(steps: usize, alpha: f64) -> (f64, f64) {
    let a = test_matrix();
    let z1 = [c(1.0, 0.0), c(-0.5, 0.0)];
    let az1 = a.mul_vec(&z1);
    let g = rgamma(c(2.0 - alpha, 0.0)).re;
    let f = move |t: f64| -> Vec<Complex64> {
        (0..2)
            .map(|i| z1[i] * (t.powf(1.0 - alpha) * g) - az1[i] * t)
            .collect()
    };
    let p = FdeProblem::new(a, alpha, DerivativeKind::Caputo, vec![c(0.0, 0.0); 2]).with_forcing(f);
    let grid = TimeGrid::new(1.0, steps).unwrap();
    let tr = solve_caputo(&p, &grid, &EvalConfig::default()).unwrap();
    let errs: Vec<f64> = (0..=steps)
        .map(|i| {
            let t = grid.node(i);
            let want: Vec<Complex64> = z1.iter().map(|z| z * t).collect();
            vec_err(tr.values[i].as_ref().unwrap(), &want)
        })
        .collect();
    (errs[steps], errs.iter().cloned().fold(0.0, f64::max))
}

#[test]
fn manufactured_solution_converges_at_one_plus_alpha() {
    let e: Vec<f64> = [64, 128, 256]
        .iter()
        .map(|&s| manufactured_error(s, 0.5).0)
        .collect();
    let orders = [(e[0] / e[1]).log2(), (e[1] / e[2]).log2()];
    assert!(
        orders.iter().all(|&o| o >= 1.4),
        "errors {e:?}, orders {orders:?}"
    );
}

#[test]
fn manufactured_solution_nodal_error_is_first_order() {
    // The forcing contains t^{1−α}, so the first interval limits the
    // uniform error to first order; it must still converge.
    let e: Vec<f64> = [64, 128]
        .iter()
        .map(|&s| manufactured_error(s, 0.5).1)
        .collect();
    assert!((e[0] / e[1]).log2() >= 0.85, "{e:?}");
}

/// 20-point Gauss–Legendre nodes and weights by Newton iteration.
fn gauss_legendre_20() -> Vec<(f64, f64)> {
    let n = 20;
    let legendre = |z: f64| {
        let (mut p0, mut p1) = (1.0, z);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
    };
    (0..n)
        .map(|i| {
            let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..50 {
                let (p, dp) = legendre(z);
                z -= p / dp;
            }
            let (_, dp) = legendre(z);
            (z, 2.0 / ((1.0 - z * z) * dp * dp))
        })
        .collect()
}

/// The scalar convolution with forcing `cos τ` by composite Gauss–Legendre
/// after the substitution `u = (t−τ)^α`, which removes the kernel
/// singularity: the integral becomes `(1/α) ∫₀^{tᵅ} E_{α,α}(λu) cos(t − u^{1/α}) du`.
fn convolution_oracle(lambda: f64, alpha: f64, t: f64) -> f64 {
    let rule = gauss_legendre_20();
    let cfg = EvalConfig::default();
    let p = MLParams::new(alpha, alpha);
    let upper = t.powf(alpha);
    let panels = 40;
    let mut sum = 0.0;
    for k in 0..panels {
        let (a, b) = (
            upper * k as f64 / panels as f64,
            upper * (k + 1) as f64 / panels as f64,
        );
        for &(x, w) in &rule {
            let u = 0.5 * (b - a) * x + 0.5 * (a + b);
            let tau = t - u.powf(1.0 / alpha);
            let kern = ml_scalar(c(lambda * u, 0.0), &p, &cfg).unwrap().re;
            sum += 0.5 * (b - a) * w * kern * tau.cos();
        }
    }
    sum / alpha
}

#[test]
fn smooth_forcing_matches_direct_quadrature_at_second_order() {
    let (lambda, alpha, t_end) = (-0.7, 0.6, 1.5);
    let want = convolution_oracle(lambda, alpha, t_end);
    let mut errs = Vec::new();
    for steps in [32, 64, 128] {
        let grid = TimeGrid::new(t_end, steps).unwrap();
        let mut forced = Vec::new();
        for kind in [DerivativeKind::Caputo, DerivativeKind::RiemannLiouville] {
            let p = FdeProblem::new(
                ComplexMatrix::from_real_rows(&[[lambda]]),
                alpha,
                kind,
                vec![c(0.0, 0.0)],
            )
            .with_forcing(|t: f64| vec![c(t.cos(), 0.0)]);
            forced.push(
                solve(&p, &grid, &EvalConfig::default())
                    .unwrap()
                    .forced_part[steps][0],
            );
        }
        // Both kinds share the convolution term.
        assert_eq!(forced[0], forced[1]);
        errs.push((forced[0].re - want).abs());
    }
    assert!(errs[2] < 2e-5, "{errs:?}");
    assert!(
        (errs[0] / errs[1]).log2() > 1.8 && (errs[1] / errs[2]).log2() > 1.8,
        "{errs:?}"
    );
}

#[test]
fn alpha_one_reduces_to_matrix_exponential() {
    let a = ComplexMatrix::from_real_rows(&[[-0.4, 1.1, 0.2], [-0.9, 0.1, 0.3], [0.5, -0.2, -1.0]]);
    let z0 = vec![c(1.0, 0.0), c(-2.0, 0.0), c(0.5, 0.0)];
    let grid = TimeGrid::new(2.0, 20).unwrap();
    let cfg = EvalConfig::default();
    let cap = solve_caputo(
        &FdeProblem::new(a.clone(), 1.0, DerivativeKind::Caputo, z0.clone()),
        &grid,
        &cfg,
    )
    .unwrap();
    let rl_problem = FdeProblem::new(a.clone(), 1.0, DerivativeKind::RiemannLiouville, z0.clone());
    let rl = solve_rl(&rl_problem, &grid, &cfg).unwrap();
    for i in 0..=20 {
        let want = expm_series(&a.scale_real(grid.node(i))).mul_vec(&z0);
        let got = cap.values[i].as_ref().unwrap();
        assert!(vec_err(got, &want) <= 1e-10, "node {i}");
        assert_eq!(Some(got), rl.values[i].as_ref());
    }
}

#[test]
fn diagonal_systems_decouple() {
    let d = [-2.0, -0.3, 0.8];
    let a = ComplexMatrix::from_diagonal(&d.map(|x| c(x, 0.0)));
    let z0 = vec![c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.0)];
    let grid = TimeGrid::new(2.0, 16).unwrap();
    let cfg = EvalConfig::default();
    let tr = solve_caputo(
        &FdeProblem::new(a, 0.65, DerivativeKind::Caputo, z0.clone()),
        &grid,
        &cfg,
    )
    .unwrap();
    for i in 0..=16 {
        let t = grid.node(i);
        for k in 0..3 {
            let want = ml_scalar(c(d[k] * t.powf(0.65), 0.0), &MLParams::new(0.65, 1.0), &cfg)
                .unwrap()
                * z0[k];
            assert!(
                (tr.values[i].as_ref().unwrap()[k] - want).norm() <= 1e-12,
                "node {i} component {k}"
            );
        }
    }
}

#[test]
fn bagley_torvik_homogeneous_matches_reference_matrix() {
    let cfg = EvalConfig::default();
    let grid = TimeGrid::new(1.0, 4).unwrap();
    let h1 = reference_h1(-1.0).unwrap();
    let tr =
        bagley_torvik_solve(&BagleyTorvikSpec::new(1.0, 1.0, 0.0, 1.0, 0.0), &grid, &cfg).unwrap();
    let want = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    assert!(vec_err(tr.last().unwrap(), &want) <= 1e-13);
    let tr = bagley_torvik_solve(
        &BagleyTorvikSpec::new(2.0, 2.0, 0.0, 0.7, -1.2),
        &grid,
        &cfg,
    )
    .unwrap();
    let z0 = [c(0.7, 0.0), c(0.0, 0.0), c(-1.2, 0.0), c(0.0, 0.0)];
    assert!(vec_err(tr.last().unwrap(), &h1.mul_vec(&z0)) <= 1e-13);
    assert_eq!(tr.y()[0], Some(c(0.7, 0.0)));
}

#[test]
fn bagley_torvik_forcing_reaches_the_solution() {
    // a = 1, b = c = 0 leaves y'' = f, so a constant f gives
    // y(t) = y0 + yp0·t + f·t²/2, a quadratic the scheme integrates exactly.
    let cfg = EvalConfig::default();
    let spec = BagleyTorvikSpec::new(1.0, 0.0, 0.0, 0.5, 1.0).with_forcing(|_| 3.0);
    let grid = TimeGrid::new(1.0, 8).unwrap();
    let tr = bagley_torvik_solve(&spec, &grid, &cfg).unwrap();
    for (i, y) in tr.y().into_iter().enumerate() {
        let t = grid.node(i);
        assert!(
            (y.unwrap().re - (0.5 + t + 1.5 * t * t)).abs() < 1e-12,
            "node {i}"
        );
    }
}

#[test]
fn reference_matrices_match_jordan_evaluation() {
    let cfg = EvalConfig::default();
    for (p, tol) in [(-1.0, 1e-13), (-0.5, 1e-12), (-2.0, 1e-12)] {
        let b = companion(p);
        let e1 = ml_matrix(&b, 0.5, c(1.0, 0.0), &cfg).unwrap().value;
        let e2 = ml_matrix(&b, 0.5, c(0.5, 0.0), &cfg).unwrap().value;
        assert!(
            (&e1 - &reference_h1(p).unwrap()).max_abs() <= tol,
            "H1 at p = {p}"
        );
        assert!(
            (&e2 - &reference_h2(p).unwrap()).max_abs() <= tol,
            "H2 at p = {p}"
        );
    }
}

fn solve_with(z0: [f64; 2], amp: [f64; 2]) -> Trajectory {
    let p = FdeProblem::new(
        test_matrix(),
        0.75,
        DerivativeKind::Caputo,
        z0.iter().map(|&x| c(x, 0.0)).collect(),
    )
    .with_forcing(move |t: f64| vec![c(amp[0] * (2.0 * t).sin(), 0.0), c(amp[1] * t, 0.0)]);
    solve_caputo(&p, &TimeGrid::new(1.0, 12).unwrap(), &EvalConfig::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn superposition(
        z1 in prop::array::uniform2(-2.0f64..2.0),
        z2 in prop::array::uniform2(-2.0f64..2.0),
        a1 in prop::array::uniform2(-2.0f64..2.0),
        a2 in prop::array::uniform2(-2.0f64..2.0),
    ) {
        // The forcing is linear in its amplitudes, so sums stay in the family.
        let s1 = solve_with(z1, a1);
        let s2 = solve_with(z2, a2);
        let s = solve_with([z1[0] + z2[0], z1[1] + z2[1]], [a1[0] + a2[0], a1[1] + a2[1]]);
        for i in 0..s.values.len() {
            let (x, y) = (s1.values[i].as_ref().unwrap(), s2.values[i].as_ref().unwrap());
            let sum: Vec<Complex64> = x.iter().zip(y).map(|(x, y)| x + y).collect();
            prop_assert!(vec_err(s.values[i].as_ref().unwrap(), &sum) <= 1e-12);
        }
    }

    #[test]
    fn caputo_initial_value_is_exact(
        z in prop::collection::vec(-5.0f64..5.0, 4),
        alpha in 0.1f64..=1.0,
        p in -3.0f64..-0.1,
    ) {
        let z0: Vec<Complex64> = z.iter().map(|&x| c(x, 0.0)).collect();
        let problem = FdeProblem::new(companion(p), alpha, DerivativeKind::Caputo, z0.clone());
        let tr = solve_caputo(&problem, &TimeGrid::new(1.0, 3).unwrap(), &EvalConfig::default()).unwrap();
        prop_assert_eq!(tr.values[0].as_ref().unwrap(), &z0);
    }

    #[test]
    fn parts_sum_to_values(amp in prop::array::uniform2(-2.0f64..2.0)) {
        let tr = solve_with([1.0, 0.5], amp);
        for i in 0..tr.values.len() {
            let h = tr.homogeneous_part[i].as_ref().unwrap();
            let want: Vec<Complex64> = h.iter().zip(&tr.forced_part[i]).map(|(x, y)| x + y).collect();
            prop_assert_eq!(tr.values[i].as_ref().unwrap(), &want);
        }
    }
}
