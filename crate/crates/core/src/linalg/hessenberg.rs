use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError};

/// Householder reduction to upper Hessenberg form.
///
/// Returns `(H, Q)` with `Q` unitary and `A = Q·H·Qᴴ`.
pub fn hessenberg_reduce(a: &ComplexMatrix) -> Result<(ComplexMatrix, ComplexMatrix), LinalgError> {
    let n = a.ensure_square()?;
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    if n <= 2 {
        return Ok((h, q));
    }

    let zero = Complex64::new(0.0, 0.0);
    for k in 0..n - 2 {
        let mut v: Vec<Complex64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let tail = v[1..].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if xnorm == 0.0 || tail == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            v[0] / v[0].norm()
        };
        let alpha = -phase * xnorm;
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // Left: rows k+1..n, columns k..n.
        for j in k..n {
            let mut s = zero;
            for (idx, vi) in v.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + idx, j)];
            }
            s *= beta;
            for (idx, vi) in v.iter().enumerate() {
                h[(k + 1 + idx, j)] -= vi * s;
            }
        }
        // Right: all rows, columns k+1..n.
        for i in 0..n {
            let mut s = zero;
            for (idx, vi) in v.iter().enumerate() {
                s += h[(i, k + 1 + idx)] * vi;
            }
            s *= beta;
            for (idx, vi) in v.iter().enumerate() {
                h[(i, k + 1 + idx)] -= s * vi.conj();
            }
        }
        for i in 0..n {
            let mut s = zero;
            for (idx, vi) in v.iter().enumerate() {
                s += q[(i, k + 1 + idx)] * vi;
            }
            s *= beta;
            for (idx, vi) in v.iter().enumerate() {
                q[(i, k + 1 + idx)] -= s * vi.conj();
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = zero;
        }
    }
    Ok((h, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_by_one_is_identity_case() {
        let a = ComplexMatrix::new(1, 1, vec![Complex64::new(3.0, -1.0)]).unwrap();
        let (h, q) = hessenberg_reduce(&a).unwrap();
        assert_eq!(h, a);
        assert_eq!(q, ComplexMatrix::identity(1));
    }

    #[test]
    fn hessenberg_input_keeps_structure() {
        let a = ComplexMatrix::from_real_rows(&[
            [1.0, 2.0, 3.0, 4.0],
            [5.0, 6.0, 7.0, 8.0],
            [0.0, 9.0, 1.0, 2.0],
            [0.0, 0.0, 3.0, 4.0],
        ]);
        let (h, q) = hessenberg_reduce(&a).unwrap();
        assert!(h.is_upper_hessenberg(0.0));
        assert_eq!(h, a);
        assert_eq!(q, ComplexMatrix::identity(4));
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = ComplexMatrix::from_fn(6, 6, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let (h, q) = hessenberg_reduce(&a).unwrap();
        assert!(h.is_upper_hessenberg(0.0));
        let back = &(&q * &h) * &q.adjoint();
        assert!((&back - &a).frobenius_norm() <= 1e-13 * a.frobenius_norm());
        let qq = &q.adjoint() * &q;
        assert!((&qq - &ComplexMatrix::identity(6)).frobenius_norm() <= 1e-14);
    }

    #[test]
    fn non_square_rejected() {
        assert!(hessenberg_reduce(&ComplexMatrix::zeros(2, 3)).is_err());
    }
}
