//! Complementary error function on the complex plane.

use super::dd::exp_signed_square;
use num_complex::Complex64;
use std::f64::consts::PI;

const MAX_TERMS: usize = 5000;

/// Maclaurin series `erf z = (2/√π) Σ (−1)^n z^{2n+1} / (n!(2n+1))`.
fn erf_taylor(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut power = z;
    let mut sum = z;
    for n in 1..MAX_TERMS {
        power *= -z2 / n as f64;
        let term = power / (2 * n + 1) as f64;
        sum += term;
        if n as f64 > z2.norm() && term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * (2.0 / PI.sqrt())
}

/// Kummer form `erf z = (2z/√π) e^{−z²} Σ (2z²)^n / (2n+1)!!`, whose terms
/// do not alternate when `Re z² >= 0`.
fn erf_kummer(z: Complex64) -> Complex64 {
    let w = 2.0 * z * z;
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for n in 1..MAX_TERMS {
        term *= w / (2 * n + 1) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum * z * exp_signed_square(z, -1.0) * (2.0 / PI.sqrt())
}

/// Laplace continued fraction
/// `erfc z = e^{−z²}/√π · 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + …))))`
/// evaluated by the modified Lentz method.
fn erfc_continued_fraction(z: Complex64) -> Complex64 {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut f = z;
    let mut c = z;
    let mut d = Complex64::new(0.0, 0.0);
    for k in 1..MAX_TERMS {
        let a = k as f64 / 2.0;
        d = z + a * d;
        if d.norm() == 0.0 {
            d = tiny;
        }
        c = z + a / c;
        if c.norm() == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).norm() < 1e-16 {
            break;
        }
    }
    exp_signed_square(z, -1.0) / (PI.sqrt() * f)
}

fn erfc_right_half(z: Complex64) -> Complex64 {
    let r = z.norm();
    if z.re >= 1.0 && r >= 1.5 {
        erfc_continued_fraction(z)
    } else if r < 2.0 && z.re >= z.im.abs() {
        1.0 - erf_kummer(z)
    } else {
        1.0 - erf_taylor(z)
    }
}

/// Complementary error function `erfc z = (2/√π) ∫_z^∞ e^{−t²} dt`.
pub fn erfc(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        2.0 - erfc_right_half(-z)
    } else {
        erfc_right_half(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        assert_eq!(erfc(Complex64::new(0.0, 0.0)), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn symmetry() {
        for &(x, y) in &[(0.3, 0.1), (1.7, -0.4), (2.5, 2.5), (0.2, 4.0), (6.0, 1.0)] {
            let z = Complex64::new(x, y);
            let s = erfc(z) + erfc(-z);
            assert!(
                (s - 2.0).norm() < 1e-14 * (1.0 + erfc(z).norm()),
                "{z}: {s}"
            );
        }
    }

    #[test]
    fn regions_agree_at_seams() {
        // Each pair straddles a switch between evaluation methods.
        for &(x, y) in &[
            (1.0, 1.2),
            (0.999_999, 1.8),
            (1.5, 0.0),
            (1.4999, 0.0),
            (1.2, 1.0),
        ] {
            let z = Complex64::new(x, y);
            let a = erfc_continued_fraction(z);
            let b = 1.0 - erf_taylor(z);
            assert!((a - b).norm() < 1e-13 * a.norm(), "{z}: {a} vs {b}");
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let z = Complex64::new(0.8, 2.3);
        assert!((erfc(z.conj()) - erfc(z).conj()).norm() < 1e-15 * erfc(z).norm());
    }

    #[test]
    fn large_real_tail() {
        // erfc(10) ≈ 2.088487583762545e-45
        let v = erfc(Complex64::new(10.0, 0.0));
        assert!((v.re / 2.088_487_583_762_545e-45 - 1.0).abs() < 1e-14);
    }
}
