//! Matrix functions through Hermite interpolation on the spectrum. Entirely
//! independent of the Jordan transform, so it serves as a cross-check.

use num_complex::Complex64;

use super::{check_alpha, MatrixFunctionError};
use crate::linalg::{ComplexMatrix, JordanDecomposition};
use crate::special::{ml_derivative, EvalConfig};

/// Confluent divided differences lose accuracy quickly; refuse beyond this.
pub const MAX_ORACLE_DEGREE: usize = 30;

/// `f, f′, …, f^{(m−1)}` at each distinct eigenvalue, `m` being the size of
/// the largest Jordan block for that eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumValues {
    pub entries: Vec<(Complex64, Vec<Complex64>)>,
}

impl SpectrumValues {
    /// Total number of interpolation conditions.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(|(_, d)| d.len()).sum()
    }

    /// Values of `z ↦ z` on a spectrum with the given indices.
    pub fn identity(index: &[(Complex64, usize)]) -> Self {
        let entries = index
            .iter()
            .map(|&(l, m)| {
                let d = (0..m)
                    .map(|j| match j {
                        0 => l,
                        1 => Complex64::new(1.0, 0.0),
                        _ => Complex64::new(0.0, 0.0),
                    })
                    .collect();
                (l, d)
            })
            .collect();
        SpectrumValues { entries }
    }
}

/// `E_{α,β}` and its derivatives on the spectrum recorded in `blocks`.
pub fn spectrum_values(
    blocks: &JordanDecomposition,
    alpha: f64,
    beta: Complex64,
    cfg: &EvalConfig,
) -> Result<SpectrumValues, MatrixFunctionError> {
    check_alpha(alpha)?;
    let entries = blocks
        .index_per_eigenvalue()
        .into_iter()
        .map(|(l, m)| {
            let d = (0..m)
                .map(|j| ml_derivative(l, alpha, beta, j, cfg))
                .collect::<Result<Vec<_>, _>>()?;
            Ok((l, d))
        })
        .collect::<Result<_, MatrixFunctionError>>()?;
    Ok(SpectrumValues { entries })
}

/// `r(A)` for the Hermite interpolant `r` of `vals`, built from confluent
/// divided differences and applied by Horner's scheme in Newton form.
pub fn interpolation_oracle(
    a: &ComplexMatrix,
    vals: &SpectrumValues,
) -> Result<ComplexMatrix, MatrixFunctionError> {
    if !a.is_square() {
        return Err(MatrixFunctionError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let degree = vals.degree();
    if degree > MAX_ORACLE_DEGREE {
        return Err(MatrixFunctionError::DegreeOverflow {
            degree,
            limit: MAX_ORACLE_DEGREE,
        });
    }
    if degree == 0 || degree > a.rows() {
        return Err(MatrixFunctionError::InconsistentSpectrum(format!(
            "{degree} interpolation conditions for a {n}x{n} matrix",
            n = a.rows()
        )));
    }

    // Nodes repeated by multiplicity, with the owning entry and local order.
    let mut nodes = Vec::with_capacity(degree);
    for (k, (l, d)) in vals.entries.iter().enumerate() {
        for _ in 0..d.len() {
            nodes.push((*l, k));
        }
    }
    let mut col: Vec<Complex64> = nodes.iter().map(|&(_, k)| vals.entries[k].1[0]).collect();
    let mut coeffs = vec![col[0]];
    let mut factorial = 1.0;
    for j in 1..degree {
        factorial *= j as f64;
        col = (0..degree - j)
            .map(|i| {
                let (xi, ki) = nodes[i];
                let (xj, kj) = nodes[i + j];
                if ki == kj {
                    vals.entries[ki].1[j] / factorial
                } else {
                    (col[i + 1] - col[i]) / (xj - xi)
                }
            })
            .collect();
        coeffs.push(col[0]);
    }

    let n = a.rows();
    let mut r = ComplexMatrix::identity(n).scale(coeffs[degree - 1]);
    for k in (0..degree - 1).rev() {
        r = r.matmul(&a.shifted(nodes[k].0));
        for i in 0..n {
            r[(i, i)] += coeffs[k];
        }
    }
    Ok(r)
}
