use num_complex::Complex64;

use super::ComplexMatrix;

const MAX_SWEEPS: usize = 80;

/// Singular values (descending) and right singular vectors.
///
/// Column `k` of `v` pairs with `singular_values[k]`.
#[derive(Debug, Clone)]
pub struct SingularValues {
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

impl SingularValues {
    /// Orthonormal basis (as columns) of the right singular vectors whose
    /// singular value is `<= abs_tol`.
    pub fn null_space(&self, abs_tol: f64) -> Vec<Vec<Complex64>> {
        self.singular_values
            .iter()
            .enumerate()
            .filter(|(_, &s)| s <= abs_tol)
            .map(|(k, _)| self.v.column(k))
            .collect()
    }

    /// The `count` right singular vectors with the smallest singular values.
    pub fn smallest(&self, count: usize) -> Vec<Vec<Complex64>> {
        let n = self.singular_values.len();
        (n - count..n).map(|k| self.v.column(k)).collect()
    }

    pub fn largest(&self) -> f64 {
        self.singular_values.first().copied().unwrap_or(0.0)
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn singular_values(a: &ComplexMatrix) -> SingularValues {
    let (m, n) = (a.rows(), a.cols());
    let mut u = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let zero = Complex64::new(0.0, 0.0);

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = zero;
                for i in 0..m {
                    let up = u[(i, p)];
                    let uq = u[(i, q)];
                    alpha += up.norm_sqr();
                    beta += uq.norm_sqr();
                    gamma += up.conj() * uq;
                }
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let sp = phase * s;
                let sm = phase.conj() * s;
                for mat in [&mut u, &mut v] {
                    for i in 0..mat.rows() {
                        let xp = mat[(i, p)];
                        let xq = mat[(i, q)];
                        mat[(i, p)] = xp * c - xq * sm;
                        mat[(i, q)] = xp * sp + xq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n)
        .map(|j| ((0..m).map(|i| u[(i, j)].norm_sqr()).sum::<f64>().sqrt(), j))
        .collect();
    pairs.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap_or(std::cmp::Ordering::Equal));
    let mut vs = ComplexMatrix::zeros(n, n);
    for (k, &(_, j)) in pairs.iter().enumerate() {
        vs.set_column(k, &v.column(j));
    }
    SingularValues {
        singular_values: pairs.into_iter().map(|p| p.0).collect(),
        v: vs,
    }
}

/// Default relative rank tolerance, `max(rows, cols) · ε`.
pub fn default_rank_tol(a: &ComplexMatrix) -> f64 {
    a.rows().max(a.cols()) as f64 * f64::EPSILON
}

/// Number of singular values strictly above `rank_tol · σ_max`.
pub fn rank_with_tol(a: &ComplexMatrix, rank_tol: f64) -> usize {
    let sv = singular_values(a);
    let smax = sv.largest();
    if smax == 0.0 {
        return 0;
    }
    sv.singular_values
        .iter()
        .filter(|&&s| s > rank_tol * smax)
        .count()
}

/// Number of singular values strictly above an absolute threshold.
pub fn rank_above(a: &ComplexMatrix, abs_tol: f64) -> usize {
    singular_values(a)
        .singular_values
        .iter()
        .filter(|&&s| s > abs_tol)
        .count()
}
