//! Right-hand sides `f(t)` of the fractional system.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ForcingError {
    #[error("t = {t} lies outside the sampled range [{start}, {end}]")]
    OutOfRange { t: f64, start: f64, end: f64 },
    #[error("forcing returned {found} components, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("{0}")]
    Other(String),
}

/// A vector-valued forcing term.
pub trait Forcing: Send + Sync {
    fn eval(&self, t: f64) -> Result<Vec<Complex64>, ForcingError>;
}

impl<F> Forcing for F
where
    F: Fn(f64) -> Vec<Complex64> + Send + Sync,
{
    fn eval(&self, t: f64) -> Result<Vec<Complex64>, ForcingError> {
        Ok(self(t))
    }
}

/// Forcing given by samples on increasing times, linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledForcing {
    times: Vec<f64>,
    values: Vec<Vec<Complex64>>,
}

impl SampledForcing {
    pub fn new(times: Vec<f64>, values: Vec<Vec<Complex64>>) -> Result<Self, ForcingError> {
        if times.is_empty() || times.len() != values.len() {
            return Err(ForcingError::Other(format!(
                "need matching non-empty samples, got {} times and {} values",
                times.len(),
                values.len()
            )));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ForcingError::Other(
                "sample times must be finite and strictly increasing".into(),
            ));
        }
        let dim = values[0].len();
        if let Some(v) = values.iter().find(|v| v.len() != dim) {
            return Err(ForcingError::Dimension {
                expected: dim,
                found: v.len(),
            });
        }
        Ok(SampledForcing { times, values })
    }

    pub fn dim(&self) -> usize {
        self.values[0].len()
    }
}

impl Forcing for SampledForcing {
    fn eval(&self, t: f64) -> Result<Vec<Complex64>, ForcingError> {
        let (start, end) = (self.times[0], *self.times.last().unwrap());
        // Allow rounding slack at the ends of the grid.
        let slack = 1e-12 * start.abs().max(end.abs()).max(1.0);
        if !(t >= start - slack && t <= end + slack) {
            return Err(ForcingError::OutOfRange { t, start, end });
        }
        let t = t.clamp(start, end);
        let k = self.times.partition_point(|&s| s <= t);
        if k == 0 || k == self.times.len() {
            let i = if k == 0 { 0 } else { self.times.len() - 1 };
            return Ok(self.values[i].clone());
        }
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let w = (t - t0) / (t1 - t0);
        Ok(self.values[k - 1]
            .iter()
            .zip(&self.values[k])
            .map(|(a, b)| a * (1.0 - w) + b * w)
            .collect())
    }
}
