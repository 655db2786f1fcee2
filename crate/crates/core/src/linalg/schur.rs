//! Complex Schur form by Wilkinson-shifted QR on the Hessenberg form.

use num_complex::Complex64;

use super::hessenberg::hessenberg_reduce;
use super::{ComplexMatrix, LinalgError};

/// Default bound on QR sweeps spent on a single eigenvalue.
pub const DEFAULT_MAX_QR_ITER: usize = 100;

/// Plane rotation `G = [[c, s], [-conj(s), c]]` with `c` real.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    /// Rotation mapping `(a, b)` onto `(r, 0)`.
    pub(crate) fn zeroing(a: Complex64, b: Complex64) -> Self {
        let na = a.norm();
        let nb = b.norm();
        if nb == 0.0 {
            return Givens {
                c: 1.0,
                s: Complex64::new(0.0, 0.0),
            };
        }
        if na == 0.0 {
            return Givens {
                c: 0.0,
                s: b.conj() / nb,
            };
        }
        let rho = na.hypot(nb);
        Givens {
            c: na / rho,
            s: (a / na) * b.conj() / rho,
        }
    }

    /// Left application on rows `i`, `i+1` over the given column range.
    pub(crate) fn apply_left(&self, m: &mut ComplexMatrix, i: usize, cols: std::ops::Range<usize>) {
        for j in cols {
            let x = m[(i, j)];
            let y = m[(i + 1, j)];
            m[(i, j)] = x * self.c + self.s * y;
            m[(i + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }

    /// Right application of `Gᴴ` on columns `j`, `j+1` over the given row range.
    pub(crate) fn apply_right_adjoint(
        &self,
        m: &mut ComplexMatrix,
        j: usize,
        rows: std::ops::Range<usize>,
    ) {
        for i in rows {
            let x = m[(i, j)];
            let y = m[(i, j + 1)];
            m[(i, j)] = x * self.c + y * self.s.conj();
            m[(i, j + 1)] = -x * self.s + y * self.c;
        }
    }
}

/// `A = Q·T·Qᴴ` with `T` upper triangular and `Q` unitary.
#[derive(Debug, Clone)]
pub struct SchurDecomposition {
    pub t: ComplexMatrix,
    pub q: ComplexMatrix,
}

impl SchurDecomposition {
    pub fn new(a: &ComplexMatrix, max_iter: usize) -> Result<Self, LinalgError> {
        let (mut h, mut q) = hessenberg_reduce(a)?;
        let n = h.rows();
        let zero = Complex64::new(0.0, 0.0);
        let eps = f64::EPSILON;
        let anorm = a.frobenius_norm();

        let mut hi = n - 1;
        let mut iter = 0usize;
        while hi > 0 {
            // Locate the top of the active unreduced block.
            let mut l = hi;
            while l > 0 {
                let mut s = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
                if s == 0.0 {
                    s = anorm;
                }
                if h[(l, l - 1)].norm() <= eps * s {
                    h[(l, l - 1)] = zero;
                    break;
                }
                l -= 1;
            }
            if l == hi {
                hi -= 1;
                iter = 0;
                continue;
            }
            iter += 1;
            if iter > max_iter {
                return Err(LinalgError::NonConvergence {
                    index: hi,
                    sweeps: max_iter,
                });
            }

            let shift = if iter.is_multiple_of(10) {
                h[(hi, hi)] + 0.75 * h[(hi, hi - 1)].norm()
            } else {
                wilkinson_shift(
                    h[(hi - 1, hi - 1)],
                    h[(hi - 1, hi)],
                    h[(hi, hi - 1)],
                    h[(hi, hi)],
                )
            };

            // Implicit single-shift sweep over rows l..=hi.
            for k in l..hi {
                let (x, y) = if k == l {
                    (h[(l, l)] - shift, h[(l + 1, l)])
                } else {
                    (h[(k, k - 1)], h[(k + 1, k - 1)])
                };
                let g = Givens::zeroing(x, y);
                let c0 = if k == l { k } else { k - 1 };
                g.apply_left(&mut h, k, c0..n);
                if k > l {
                    h[(k + 1, k - 1)] = zero;
                }
                let r1 = (k + 3).min(hi + 1);
                g.apply_right_adjoint(&mut h, k, 0..r1);
                g.apply_right_adjoint(&mut q, k, 0..n);
            }
        }

        for i in 1..n {
            for j in 0..i {
                h[(i, j)] = zero;
            }
        }
        Ok(SchurDecomposition { t: h, q })
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.t.diagonal()
    }

    /// Swaps the diagonal entries at `k` and `k + 1` with a unitary rotation,
    /// keeping `A = Q·T·Qᴴ`.
    pub fn swap_adjacent(&mut self, k: usize) {
        let n = self.t.rows();
        let t11 = self.t[(k, k)];
        let t22 = self.t[(k + 1, k + 1)];
        if t11 == t22 {
            return;
        }
        let g = Givens::zeroing(self.t[(k, k + 1)], t22 - t11);
        g.apply_left(&mut self.t, k, k..n);
        g.apply_right_adjoint(&mut self.t, k, 0..k + 2);
        g.apply_right_adjoint(&mut self.q, k, 0..n);
        self.t[(k + 1, k)] = Complex64::new(0.0, 0.0);
        self.t[(k, k)] = t22;
        self.t[(k + 1, k + 1)] = t11;
    }

    /// Stable reordering so that diagonal entries appear grouped by `labels`
    /// in ascending label order. `labels[i]` belongs to diagonal entry `i`.
    pub fn reorder_by_label(&mut self, labels: &[usize]) -> Vec<usize> {
        let mut labels = labels.to_vec();
        let n = labels.len();
        // Bubble sort with adjacent swaps; n is small.
        for pass in 0..n {
            let mut swapped = false;
            for k in 0..n - 1 - pass.min(n - 1) {
                if labels[k] > labels[k + 1] {
                    self.swap_adjacent(k);
                    labels.swap(k, k + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        labels
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let mu1 = mean + disc;
    let mu2 = mean - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// All `n` eigenvalues of a square matrix, in the order they appear on the
/// diagonal of the Schur form.
pub fn eigenvalues(a: &ComplexMatrix, max_iter: usize) -> Result<Vec<Complex64>, LinalgError> {
    Ok(SchurDecomposition::new(a, max_iter)?.eigenvalues())
}
