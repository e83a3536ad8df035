use crate::{Error, Result};

/// Uniform frequency-deviation grid `Ω_k = k·step`, `k = −M..=M`.
///
/// Samples are generated from integer multiples of the step, so `Ω_{−k}`
/// is bit-for-bit `−Ω_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyGrid {
    step: f64,
    half_points: usize,
}

impl FrequencyGrid {
    /// Grid spanning `[−half_span, +half_span]` with `n_points` samples (odd, ≥ 3).
    pub fn new(half_span: f64, n_points: usize) -> Result<Self> {
        if !(half_span > 0.0) || !half_span.is_finite() {
            return Err(Error::Parameter(format!(
                "grid half-span must be positive, got {half_span}"
            )));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(Error::Parameter(format!(
                "grid point count must be odd and at least 3, got {n_points}"
            )));
        }
        let half_points = (n_points - 1) / 2;
        Ok(Self {
            step: half_span / half_points as f64,
            half_points,
        })
    }

    pub fn len(&self) -> usize {
        2 * self.half_points + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn half_points(&self) -> usize {
        self.half_points
    }

    pub fn half_span(&self) -> f64 {
        self.step * self.half_points as f64
    }

    /// Index of `Ω = 0`.
    pub fn center_index(&self) -> usize {
        self.half_points
    }

    pub fn value(&self, index: usize) -> f64 {
        (index as f64 - self.half_points as f64) * self.step
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.value(i)).collect()
    }

    /// Index of the sample at `−Ω_index`.
    pub fn mirror(&self, index: usize) -> usize {
        self.len() - 1 - index
    }

    /// Trapezoidal integral of samples on this grid.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.len());
        let n = samples.len();
        let interior: f64 = samples[1..n - 1].iter().sum();
        self.step * (interior + 0.5 * (samples[0] + samples[n - 1]))
    }

    /// Linear interpolation of grid samples at an arbitrary Ω; zero outside.
    pub fn interpolate(&self, samples: &[f64], omega: f64) -> f64 {
        let u = omega / self.step + self.half_points as f64;
        if !(u >= 0.0) || u > (self.len() - 1) as f64 {
            return 0.0;
        }
        let i = u.floor() as usize;
        if i >= self.len() - 1 {
            return samples[self.len() - 1];
        }
        let frac = u - i as f64;
        samples[i] + frac * (samples[i + 1] - samples[i])
    }
}

/// Grid sizing for the analytic spectrum constructors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// Half-span of the grid in units of the spectral width.
    pub span_factor: f64,
    pub n_points: usize,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            span_factor: 4.0,
            n_points: 4097,
        }
    }
}

impl GridSpec {
    pub fn with_points(n_points: usize) -> Self {
        Self {
            n_points,
            ..Self::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n_points < 257 || self.n_points % 2 == 0 {
            return Err(Error::Parameter(format!(
                "n_points must be odd and at least 257, got {}",
                self.n_points
            )));
        }
        if !(self.span_factor >= 4.0) || !self.span_factor.is_finite() {
            return Err(Error::Parameter(format!(
                "span_factor must be at least 4, got {}",
                self.span_factor
            )));
        }
        Ok(())
    }

    pub(crate) fn grid_for_width(&self, width: f64) -> Result<FrequencyGrid> {
        self.validate()?;
        FrequencyGrid::new(self.span_factor * width, self.n_points)
    }
}
