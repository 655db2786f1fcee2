//! Evaluation of `E^ρ_{α,β}(z)`.
//!
//! Two strategies are available. The power series is summed by Horner's
//! rule in double-double arithmetic and accepted when its a-priori error
//! estimate meets the target. Otherwise the Laplace transform
//! `s^{αρ−β}/(s^α − z)^ρ` is inverted on the parabola `s(u) = μ(1 + iu)²`
//! with the trapezoidal rule; poles of the transform lying to the right of
//! the parabola contribute residues. The contour path needs a positive
//! integer ρ, which covers every use in the matrix engine.

use super::dd::{cdiv, horner};
use super::gamma::rgamma;
use super::{EvalConfig, MLParams, SpecialError};
use num_complex::Complex64;
use std::f64::consts::PI;

const EPS: f64 = f64::EPSILON;
/// Relative error attributed to each series coefficient.
const COEFF_ERR: f64 = 8.0 * EPS;
/// Largest real part whose exponential is representable.
const EXP_LIMIT: f64 = 709.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Series when certified, contour otherwise.
    Auto,
    Series,
    Contour,
}

/// A value with its estimated absolute error and the method used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlEvaluation {
    pub value: Complex64,
    pub error_estimate: f64,
    pub strategy: Strategy,
}

impl MlEvaluation {
    fn meets(&self, cfg: &EvalConfig) -> bool {
        self.error_estimate <= cfg.target_accuracy * self.value.norm().max(1.0)
    }

    fn unreachable(self) -> SpecialError {
        SpecialError::RequestedAccuracyUnreachable {
            value: self.value,
            estimate: self.error_estimate,
        }
    }
}

/// `E^ρ_{α,β}(z)` to the accuracy requested in `cfg`.
pub fn ml_scalar(z: Complex64, p: &MLParams, cfg: &EvalConfig) -> Result<Complex64, SpecialError> {
    ml_evaluate(z, p, cfg, Strategy::Auto).map(|e| e.value)
}

/// `dᵐ/dzᵐ E_{α,β}(z) = m! · E^{m+1}_{α,β+αm}(z)`.
pub fn ml_derivative(
    z: Complex64,
    alpha: f64,
    beta: Complex64,
    m: usize,
    cfg: &EvalConfig,
) -> Result<Complex64, SpecialError> {
    let p = MLParams::with_rho(alpha, beta + alpha * m as f64, (m + 1) as f64);
    let factorial: f64 = (1..=m).map(|k| k as f64).product();
    Ok(ml_scalar(z, &p, cfg)? * factorial)
}

/// Evaluates with an explicit strategy and reports the error estimate.
///
/// With [`Strategy::Series`] or [`Strategy::Contour`] the chosen method's
/// result is returned whenever it could be computed, even if the estimate
/// misses the target; [`Strategy::Auto`] returns
/// [`SpecialError::RequestedAccuracyUnreachable`] in that case.
pub fn ml_evaluate(
    z: Complex64,
    p: &MLParams,
    cfg: &EvalConfig,
    strategy: Strategy,
) -> Result<MlEvaluation, SpecialError> {
    p.validate()?;
    cfg.validate()?;
    if !z.is_finite() {
        return Err(SpecialError::InvalidParams(format!(
            "argument must be finite, got {z}"
        )));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(MlEvaluation {
            value: rgamma(p.beta),
            error_estimate: COEFF_ERR * rgamma(p.beta).norm(),
            strategy: Strategy::Series,
        });
    }
    match strategy {
        Strategy::Series => series(z, p, cfg),
        Strategy::Contour => contour(z, p, cfg),
        Strategy::Auto => {
            let contour_ok = p.integer_rho().is_some();
            let s = if series_first(z, p, cfg) || !contour_ok {
                let s = series(z, p, cfg);
                match &s {
                    Ok(ev) if ev.meets(cfg) => return s,
                    _ if !contour_ok => {
                        return Err(match s {
                            Ok(ev) => ev.unreachable(),
                            Err(e) => e,
                        })
                    }
                    _ => s.ok(),
                }
            } else {
                None
            };
            let c = contour(z, p, cfg)?;
            if c.meets(cfg) {
                return Ok(c);
            }
            let best = match s {
                Some(ev) if ev.error_estimate < c.error_estimate => ev,
                _ => c,
            };
            Err(best.unreachable())
        }
    }
}

/// Whether the series is worth trying before the contour: always inside
/// `series_radius`, elsewhere when the asymptotic term ratio
/// `|z| / (αk)^α` has dropped below 1/2 by the last permitted term.
fn series_first(z: Complex64, p: &MLParams, cfg: &EvalConfig) -> bool {
    let az = z.norm();
    az <= cfg.series_radius || az <= 0.5 * (p.alpha * cfg.max_series_terms as f64).powf(p.alpha)
}

/// Power series with coefficients `(ρ)_k / (k! Γ(αk + β))`.
fn series(z: Complex64, p: &MLParams, cfg: &EvalConfig) -> Result<MlEvaluation, SpecialError> {
    let az = z.norm();
    let mut coeffs = Vec::with_capacity(64);
    let mut poch = Complex64::new(1.0, 0.0);
    let mut power = 1.0;
    let mut abs_sum = 0.0;
    let mut weighted = 0.0;
    let mut prev = 0.0;
    let mut tail = f64::INFINITY;
    for k in 0..cfg.max_series_terms {
        if k > 0 {
            poch *= (p.rho + (k - 1) as f64) / k as f64;
            power *= az;
        }
        let arg = p.beta + p.alpha * k as f64;
        let c = poch * rgamma(arg);
        coeffs.push(c);
        let mag = c.norm() * power;
        if !mag.is_finite() || !power.is_finite() {
            return Err(SpecialError::Overflow(z));
        }
        abs_sum += mag;
        // Rounding of the argument moves 1/Γ by about |x ψ(x)|·ε.
        let x = arg.norm();
        let arg_err = if argument_is_exact(p, k) {
            0.0
        } else {
            0.5 * EPS * x * (2.0 + x).ln()
        };
        weighted += mag * (COEFF_ERR + arg_err);
        if poch == Complex64::new(0.0, 0.0) {
            tail = 0.0;
            break;
        }
        // Geometric bound on the remainder once terms decay monotonically.
        let past_poles = p.alpha * k as f64 + p.beta.re >= 2.0;
        if k >= 2 && past_poles && prev > 0.0 && mag > 0.0 {
            let ratio = mag / prev;
            if ratio < 1.0 {
                let bound = 2.0 * mag * ratio / (1.0 - ratio);
                if bound <= 1e-3 * EPS * abs_sum {
                    tail = bound;
                    break;
                }
            }
        }
        prev = mag;
    }
    let value = horner(&coeffs, z);
    let error_estimate = if tail.is_finite() {
        weighted + tail
    } else {
        f64::INFINITY
    };
    Ok(MlEvaluation {
        value,
        error_estimate,
        strategy: Strategy::Series,
    })
}

/// True when `β + αk` is formed without rounding.
fn argument_is_exact(p: &MLParams, k: usize) -> bool {
    let kf = k as f64;
    let prod = p.alpha * kf;
    if p.alpha.mul_add(kf, -prod) != 0.0 {
        return false;
    }
    let sum = p.beta.re + prod;
    let back = sum - prod;
    back == p.beta.re && sum - back == prod
}

/// Solutions of `s^α = z` on the principal sheet `−π < arg s <= π`.
fn principal_poles(z: Complex64, alpha: f64) -> Vec<Complex64> {
    let r = z.norm().powf(1.0 / alpha);
    let theta = z.arg();
    let reach = (alpha / 2.0).ceil() as i64 + 1;
    (-reach..=reach)
        .map(|j| (theta + 2.0 * PI * j as f64) / alpha)
        .filter(|phi| *phi > -PI && *phi <= PI)
        .map(|phi| Complex64::from_polar(r, phi))
        .collect()
}

/// Residue of `e^s s^{αm−β} (s^α − z)^{−m}` at a pole `s*` of order `m`.
///
/// With `s = s*(1 + x)` the residue is
/// `e^{s*} s*^{1−β} α^{−m} [x^{m−1}] e^{s* x} (1+x)^{αm−β} Q(x)^{−m}` where
/// `Q(x) = Σ_k C(α, k+1) x^k / α`.
fn pole_residue(s: Complex64, alpha: f64, beta: Complex64, m: usize) -> Complex64 {
    let lead = s.exp() * (-(beta - 1.0) * s.ln()).exp() / alpha.powi(m as i32);
    if m == 1 {
        return lead;
    }
    let deg = m;
    // e^{s x}
    let mut ex = vec![Complex64::new(1.0, 0.0); deg];
    for k in 1..deg {
        ex[k] = ex[k - 1] * s / k as f64;
    }
    // (1 + x)^γ
    let gamma = alpha * m as f64 - beta;
    let mut bin = vec![Complex64::new(1.0, 0.0); deg];
    for k in 1..deg {
        bin[k] = bin[k - 1] * (gamma - (k - 1) as f64) / k as f64;
    }
    // Q(x) and Q(x)^{−m} by the power recurrence
    // k r_k = Σ_{j=1..k} ((p+1) j − k) q_j r_{k−j}.
    let mut choose = 1.0;
    let mut q = vec![0.0; deg];
    for k in 0..deg {
        let kk = (k + 1) as f64;
        choose *= (alpha - kk + 1.0) / kk;
        q[k] = choose / alpha;
    }
    let pw = -(m as f64);
    let mut rq = vec![0.0; deg];
    rq[0] = 1.0;
    for k in 1..deg {
        let mut acc = 0.0;
        for j in 1..=k {
            acc += ((pw + 1.0) * j as f64 - k as f64) * q[j] * rq[k - j];
        }
        rq[k] = acc / k as f64;
    }
    let mut prod1 = vec![Complex64::new(0.0, 0.0); deg];
    for i in 0..deg {
        for j in 0..deg - i {
            prod1[i + j] += ex[i] * bin[j];
        }
    }
    let mut coef = Complex64::new(0.0, 0.0);
    for i in 0..deg {
        coef += prod1[i] * rq[deg - 1 - i];
    }
    lead * coef
}

/// Contour parameters for the trapezoidal rule.
struct ContourPlan {
    mu: f64,
    step: f64,
    nodes: usize,
    outside: Vec<Complex64>,
}

fn plan_contour(poles: &[Complex64], cfg: &EvalConfig) -> ContourPlan {
    const SQRT_MU0: f64 = 1.0;
    let q: Vec<f64> = poles.iter().map(|s| s.sqrt().re).collect();
    let forbidden = |c: f64| q.iter().any(|&qj| c > qj / 4.0 && c < 10.0 * qj);
    // Pull the parabola inside any pole that would sit too close to it.
    let sqrt_mu = if !forbidden(SQRT_MU0) {
        SQRT_MU0
    } else {
        q.iter()
            .map(|&qj| qj / 4.0)
            .filter(|&c| c > 0.0 && c < SQRT_MU0 && !forbidden(c))
            .fold(0.0, f64::max)
    };
    let mu = sqrt_mu * sqrt_mu;

    let mut outside = Vec::new();
    let mut d_up: f64 = 1.0;
    let mut d_low_max: f64 = 8.0;
    for (s, &qj) in poles.iter().zip(&q) {
        let v = qj / sqrt_mu;
        if v >= 1.0 {
            outside.push(*s);
            d_low_max = d_low_max.min(v - 1.0);
        } else {
            d_up = d_up.min(1.0 - v);
        }
    }
    let d_up = 0.8 * d_up;
    let d_low_max = 0.8 * d_low_max;

    let log_eps = -(cfg.target_accuracy.min(1e-13) * 1e-3).ln();
    // Step balancing the discretization error on both sides of the strip.
    let h_up = 2.0 * PI * d_up / (mu + log_eps);
    let h_low = (1..=40)
        .map(|i| d_low_max * i as f64 / 40.0)
        .map(|d| 2.0 * PI * d / (mu * (1.0 + d) * (1.0 + d) + log_eps))
        .fold(0.0, f64::max);
    let truncation = (1.0 + (log_eps + 5.0) / mu).sqrt();
    let (step, nodes) = match cfg.contour_nodes {
        Some(n) => (truncation / n as f64, n),
        None => {
            let h = h_up.min(h_low);
            (h, (truncation / h).ceil() as usize)
        }
    };
    ContourPlan {
        mu,
        step,
        nodes,
        outside,
    }
}

fn contour(z: Complex64, p: &MLParams, cfg: &EvalConfig) -> Result<MlEvaluation, SpecialError> {
    let m = p.integer_rho().ok_or_else(|| {
        SpecialError::InvalidParams(format!(
            "contour inversion needs a positive integer rho, got {}",
            p.rho
        ))
    })?;
    let alpha = p.alpha;
    let poles = principal_poles(z, alpha);
    let plan = plan_contour(&poles, cfg);

    let mut residues = Complex64::new(0.0, 0.0);
    let mut residue_abs = 0.0;
    for &s in &plan.outside {
        if s.re > EXP_LIMIT {
            return Err(SpecialError::Overflow(z));
        }
        let r = pole_residue(s, alpha, p.beta, m);
        residues += r;
        residue_abs += r.norm();
    }

    let exponent = alpha * m as f64 - p.beta;
    let integrand = |u: f64| -> Complex64 {
        let w = Complex64::new(1.0, u);
        let s = plan.mu * w * w;
        let ln_s = s.ln();
        let denom = (alpha * ln_s).exp() - z;
        cdiv((s + exponent * ln_s).exp() * w, denom.powi(m as i32))
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut abs_sum = 0.0;
    for k in -(plan.nodes as i64)..=(plan.nodes as i64) {
        let f = integrand(k as f64 * plan.step);
        sum += f;
        abs_sum += f.norm();
    }
    let weight = plan.step * plan.mu / PI;
    let value = residues + sum * weight;
    if !value.is_finite() {
        return Err(SpecialError::Overflow(z));
    }
    let error_estimate = 16.0 * EPS * (abs_sum * weight + residue_abs * m as f64);
    Ok(MlEvaluation {
        value,
        error_estimate,
        strategy: Strategy::Contour,
    })
}

#[cfg(test)]
mod tests {
    use super::super::erfc;
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    #[test]
    fn exponential_special_case() {
        let v = ml_scalar(c(1.0, 0.0), &MLParams::new(1.0, 1.0), &cfg()).unwrap();
        assert!((v.re / std::f64::consts::E - 1.0).abs() < 1e-15);
    }

    #[test]
    fn value_at_zero_is_reciprocal_gamma() {
        for (a, b) in [(0.5, 1.0), (0.5, 0.5), (0.7, 1.3)] {
            let v = ml_scalar(c(0.0, 0.0), &MLParams::new(a, b), &cfg()).unwrap();
            assert_eq!(v, rgamma(c(b, 0.0)));
        }
    }

    #[test]
    fn half_order_erfc_identity_both_paths() {
        let p = MLParams::new(0.5, 1.0);
        for z in [c(-1.0, 0.0), c(0.7, 0.4), c(-1.5, 1.1)] {
            let want = super::super::dd::exp_signed_square(z, 1.0) * erfc(-z);
            for strat in [Strategy::Series, Strategy::Contour] {
                let v = ml_evaluate(z, &p, &cfg(), strat).unwrap().value;
                assert!(
                    (v - want).norm() < 1e-13 * want.norm().max(1.0),
                    "{strat:?} {z}: {v} vs {want}"
                );
            }
        }
    }

    #[test]
    fn exponential_with_pole_outside_contour() {
        // E_{1,1}(z) = e^z; the pole s* = z is picked up as a residue.
        for z in [c(3.0, 0.0), c(20.0, 5.0), c(-4.0, 3.0)] {
            let v = ml_evaluate(z, &MLParams::new(1.0, 1.0), &cfg(), Strategy::Contour)
                .unwrap()
                .value;
            assert!(
                (v - z.exp()).norm() < 1e-13 * z.exp().norm().max(1.0),
                "{z}: {v}"
            );
        }
    }

    #[test]
    fn higher_order_pole_residue() {
        // E^2_{1,1}(z) = (1 + z) e^z, E^3_{1,1}(z) = (1 + 2z + z²/2) e^z
        let z = c(6.0, -2.0);
        let v2 = ml_evaluate(
            z,
            &MLParams::with_rho(1.0, 1.0, 2.0),
            &cfg(),
            Strategy::Contour,
        )
        .unwrap()
        .value;
        let w2 = (1.0 + z) * z.exp();
        assert!((v2 - w2).norm() < 1e-13 * w2.norm());
        let v3 = ml_evaluate(
            z,
            &MLParams::with_rho(1.0, 1.0, 3.0),
            &cfg(),
            Strategy::Contour,
        )
        .unwrap()
        .value;
        let w3 = (1.0 + 2.0 * z + z * z / 2.0) * z.exp();
        assert!((v3 - w3).norm() < 1e-13 * w3.norm());
    }

    #[test]
    fn cosine_from_order_two() {
        // E_{2,1}(−x²) = cos x
        let x: f64 = 3.0;
        let v = ml_scalar(c(-x * x, 0.0), &MLParams::new(2.0, 1.0), &cfg()).unwrap();
        assert!((v.re - x.cos()).abs() < 1e-13, "{v}");
    }

    #[test]
    fn derivative_of_exponential() {
        let z = c(0.4, -0.2);
        for m in 0..4 {
            let d = ml_derivative(z, 1.0, c(1.0, 0.0), m, &cfg()).unwrap();
            assert!((d - z.exp()).norm() < 1e-14, "m = {m}");
        }
    }

    #[test]
    fn rejects_nonpositive_alpha() {
        assert!(matches!(
            ml_scalar(c(1.0, 0.0), &MLParams::new(0.0, 1.0), &cfg()),
            Err(SpecialError::InvalidParams(_))
        ));
    }

    #[test]
    fn terminating_series_for_zero_rho() {
        let p = MLParams::with_rho(0.5, 2.0, 0.0);
        let v = ml_scalar(c(50.0, 0.0), &p, &cfg()).unwrap();
        assert_eq!(v, rgamma(c(2.0, 0.0)));
    }

    #[test]
    fn overflow_is_reported() {
        let r = ml_scalar(c(100.0, 0.0), &MLParams::new(0.5, 1.0), &cfg());
        assert!(matches!(r, Err(SpecialError::Overflow(_))), "{r:?}");
    }

    #[test]
    fn fractional_rho_far_out_is_unreachable() {
        let r = ml_scalar(c(-60.0, 0.0), &MLParams::with_rho(0.5, 1.0, 0.5), &cfg());
        assert!(r.is_err());
    }
}
