//! Reciprocal gamma function.

use super::dd::cdiv;
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Above this real part the upward product would overflow; 1/Γ is computed
/// in log form instead and underflows gracefully.
const PRODUCT_LIMIT: f64 = 160.0;

/// Γ(z) by Lanczos for `3 <= Re z < 4`, where the exponent stays small.
fn gamma_lanczos(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * ((zm + 0.5) * t.ln() - t).exp() * a
}

/// ln Γ(z) for `Re z >= 0.5` by Lanczos; used only where Γ overflows.
fn ln_gamma_lanczos(z: Complex64) -> Complex64 {
    let zm = z - 1.0;
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (zm + i as f64);
    }
    let t = zm + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (zm + 0.5) * t.ln() - t + a.ln()
}

/// 1/Γ(z) for `Re z >= 0.5`.
fn rgamma_right(z: Complex64) -> Complex64 {
    if z.re > PRODUCT_LIMIT {
        return (-ln_gamma_lanczos(z)).exp();
    }
    // Shift into [3, 4) so the Lanczos exponent is O(1); the product of
    // shift factors has error growing only like √n·ε.
    let shift = (z.re - 3.0).floor();
    if shift > 0.0 {
        let n = shift as usize;
        let base = z - shift;
        let mut prod = Complex64::new(1.0, 0.0);
        for k in 0..n {
            prod *= base + k as f64;
        }
        cdiv(Complex64::new(1.0, 0.0), gamma_lanczos(base) * prod)
    } else {
        let n = (-shift) as usize;
        // Γ(z) = Γ(z + n) / (z (z+1) … (z+n−1))
        let mut prod = Complex64::new(1.0, 0.0);
        for k in 0..n {
            prod *= z + k as f64;
        }
        cdiv(prod, gamma_lanczos(z + n as f64))
    }
}

/// `sin(πz)` with exact argument reduction of the real part.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let x = z.re - n;
    let sign = if n.rem_euclid(2.0) == 0.0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * x).sin_cos();
    let (s, c) = (sign * s, sign * c);
    let y = PI * z.im;
    Complex64::new(s * y.cosh(), c * y.sinh())
}

/// Reciprocal gamma function 1/Γ(z), an entire function.
///
/// Exact zero at the non-positive integers; reflection
/// `1/Γ(z) = Γ(1 − z)·sin(πz)/π` for `Re z < 1/2`.
pub fn rgamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Complex64::new(0.0, 0.0);
    }
    if z.re >= 0.5 {
        rgamma_right(z)
    } else {
        cdiv(sin_pi(z), PI * rgamma_right(1.0 - z))
    }
}
