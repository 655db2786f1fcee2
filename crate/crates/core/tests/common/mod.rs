#![allow(dead_code)]

use mittag_core::linalg::{inverse, singular_values, ComplexMatrix};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn companion(p: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 0.0, p],
    ])
}

pub fn jordan_matrix(blocks: &[(Complex64, usize)]) -> ComplexMatrix {
    let n: usize = blocks.iter().map(|b| b.1).sum();
    let mut j = ComplexMatrix::zeros(n, n);
    let mut o = 0;
    for &(lambda, size) in blocks {
        for i in 0..size {
            j[(o + i, o + i)] = lambda;
            if i + 1 < size {
                j[(o + i, o + i + 1)] = c(1.0, 0.0);
            }
        }
        o += size;
    }
    j
}

/// Random unitary (real orthogonal when `real`) via Gram–Schmidt.
pub fn random_unitary(n: usize, real: bool, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n)
            .map(|_| {
                c(
                    rng.gen_range(-1.0..1.0),
                    if real { 0.0 } else { rng.gen_range(-1.0..1.0) },
                )
            })
            .collect();
        for _ in 0..2 {
            for b in &cols {
                let coef: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= coef * bi;
                }
            }
        }
        let nv = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if nv > 1e-3 {
            cols.push(v.into_iter().map(|z| z / nv).collect());
        }
    }
    let mut q = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        q.set_column(j, col);
    }
    q
}

/// `U·diag(σ)·Vᴴ` with singular values spread over `[1, cond]`.
pub fn random_conditioned(n: usize, cond: f64, real: bool, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let u = random_unitary(n, real, rng);
    let v = random_unitary(n, real, rng);
    let sig: Vec<Complex64> = (0..n)
        .map(|k| {
            let t = if n == 1 {
                0.0
            } else {
                k as f64 / (n - 1) as f64
            };
            c(cond.powf(t), 0.0)
        })
        .collect();
    &(&u * &ComplexMatrix::from_diagonal(&sig)) * &v.adjoint()
}

pub fn cond2(a: &ComplexMatrix) -> f64 {
    let s = singular_values(a).singular_values;
    s[0] / s[s.len() - 1]
}

/// A test case with known Jordan structure `A = Z₀·J₀·Z₀⁻¹`.
pub struct PrescribedJordan {
    pub a: ComplexMatrix,
    pub blocks: Vec<(Complex64, usize)>,
    pub z0: ComplexMatrix,
}

/// Random prescribed structure: block sizes <= 4, total dimension <= `max_n`,
/// distinct eigenvalues pairwise at least `min_sep` apart inside a disk of
/// radius `radius`, and `cond(Z₀) <= max_cond`.
pub fn random_prescribed(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    min_sep: f64,
    radius: f64,
    max_cond: f64,
    real: bool,
) -> PrescribedJordan {
    let n = rng.gen_range(2..=max_n);
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(4));
        sizes.push(s);
        left -= s;
    }
    // Distinct eigenvalues, allowing a value to carry several blocks.
    let mut values: Vec<Complex64> = Vec::new();
    let mut blocks = Vec::new();
    for &s in &sizes {
        let reuse = !values.is_empty() && rng.gen_bool(0.25);
        let lambda = if reuse {
            values[rng.gen_range(0..values.len())]
        } else {
            loop {
                let cand = if real {
                    c(rng.gen_range(-radius..radius), 0.0)
                } else {
                    c(
                        rng.gen_range(-radius..radius),
                        rng.gen_range(-radius..radius),
                    )
                };
                if cand.norm() <= radius && values.iter().all(|v| (v - cand).norm() >= min_sep) {
                    values.push(cand);
                    break cand;
                }
            }
        };
        blocks.push((lambda, s));
    }
    let z0 = random_conditioned(n, max_cond.sqrt(), real, rng);
    let j0 = jordan_matrix(&blocks);
    let a = &(&z0 * &j0) * &inverse(&z0).unwrap();
    PrescribedJordan { a, blocks, z0 }
}

/// Sorted (re, im, size) triples rounded to a grid, for multiset comparison.
pub fn block_signature(blocks: &[(Complex64, usize)], grid: f64) -> Vec<(i64, i64, usize)> {
    let mut v: Vec<(i64, i64, usize)> = blocks
        .iter()
        .map(|(l, s)| {
            (
                (l.re / grid).round() as i64,
                (l.im / grid).round() as i64,
                *s,
            )
        })
        .collect();
    v.sort();
    v
}

/// Matrix exponential by Taylor series with scaling by powers of two and a
/// tail bound; independent of any eigen decomposition.
pub fn expm_series(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.norm_one();
    let mut squarings = 0;
    let mut scale = 1.0;
    while norm * scale > 0.5 {
        scale *= 0.5;
        squarings += 1;
    }
    let x = a.scale_real(scale);
    let xnorm = x.norm_one();
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..60 {
        term = (&term * &x).scale_real(1.0 / k as f64);
        sum = &sum + &term;
        // tail <= ‖term‖·Σ (‖X‖/(k+1))^j
        let tail = term.norm_one() * xnorm / (k as f64 + 1.0 - xnorm);
        if tail < 1e-18 * sum.norm_one() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn rel_frobenius(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm() / b.frobenius_norm().max(f64::MIN_POSITIVE)
}

/// `Σ_k Aᵏ/Γ(αk+β)` summed until the geometric tail bound of the remaining
/// terms drops below `1e-18` relative to the partial sum. Needs `‖A‖₁ < 1`.
pub fn ml_series_matrix(a: &ComplexMatrix, alpha: f64, beta: f64) -> ComplexMatrix {
    use mittag_core::special::rgamma;
    let n = a.rows();
    let norm = a.norm_one();
    assert!(norm < 1.0, "series oracle needs a contraction");
    let mut power = ComplexMatrix::identity(n);
    let mut sum = ComplexMatrix::zeros(n, n);
    for k in 0..400 {
        let g = rgamma(c(alpha * k as f64 + beta, 0.0));
        sum = &sum + &power.scale(g);
        power = &power * a;
        // 1/Γ is bounded by 1.13 on the positive axis beyond its maximum.
        let tail = 1.2 * norm.powi(k + 1) / (1.0 - norm);
        if k > 5 && tail < 1e-18 * sum.norm_one().max(1.0) {
            break;
        }
    }
    sum
}
