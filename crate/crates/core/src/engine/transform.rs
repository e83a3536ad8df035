use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::dispersion::MediumStack;
use crate::spectra::FrequencyGrid;
use crate::{Error, Result};

/// Samples below this fraction of the peak weight are ignored when checking
/// for time-domain aliasing.
const SIGNIFICANT_WEIGHT: f64 = 1e-10;

/// Media phases are only evaluated where the weight exceeds this fraction
/// of its peak, so negligible spectral tails cannot leave a material's
/// validity range.
const SUPPORT_WEIGHT: f64 = 1e-13;

/// Stack phase at `omegas[k]` wherever `support[k]` is significant, zero
/// elsewhere.
pub(crate) fn support_phases(
    stack: &MediumStack,
    omegas: &[f64],
    reference: f64,
    support: &[f64],
) -> Result<Vec<f64>> {
    let peak = support.iter().cloned().fold(0.0, f64::max);
    omegas
        .iter()
        .zip(support)
        .map(|(w, s)| {
            if *s > SUPPORT_WEIGHT * peak {
                stack.phase(*w, reference)
            } else {
                Ok(0.0)
            }
        })
        .collect()
}

pub(crate) fn plan(grid: &FrequencyGrid, padding: usize) -> Arc<dyn Fft<f64>> {
    let n_fft = (padding * grid.len()).next_power_of_two();
    FftPlanner::new().plan_fft_forward(n_fft)
}

/// `S(t) = Σ_k w_k e^{−iΩ_k t} dΩ` on the padded conjugate grid
/// `t_j = j·2π/(N·dΩ)`, periodic in `t` with period `2π/dΩ`.
pub(crate) struct PaddedTransform {
    values: Vec<Complex64>,
    dt: f64,
    period: f64,
}

impl PaddedTransform {
    pub(crate) fn new(grid: &FrequencyGrid, weights: &[Complex64], fft: &Arc<dyn Fft<f64>>) -> Self {
        let n_fft = fft.len();
        let mut values = vec![Complex64::new(0.0, 0.0); n_fft];
        let m = grid.half_points() as isize;
        for (i, w) in weights.iter().enumerate() {
            let k = i as isize - m;
            values[k.rem_euclid(n_fft as isize) as usize] = *w * grid.step();
        }
        fft.process(&mut values);
        let period = 2.0 * PI / grid.step();
        Self {
            values,
            dt: period / n_fft as f64,
            period,
        }
    }

    /// Value at `t`, taken from the period centered on `center`; zero
    /// outside it.
    pub(crate) fn sample(&self, t: f64, center: f64) -> Complex64 {
        if (t - center).abs() > 0.5 * self.period {
            return Complex64::new(0.0, 0.0);
        }
        let n = self.values.len();
        let u = t.rem_euclid(self.period) / self.dt;
        let j = u.floor();
        let f = u - j;
        let j = j as isize;
        let at = |o: isize| self.values[(j + o).rem_euclid(n as isize) as usize];
        // four-point Lagrange interpolation on nodes −1, 0, 1, 2
        let w0 = -f * (f - 1.0) * (f - 2.0) / 6.0;
        let w1 = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
        let w2 = -(f + 1.0) * f * (f - 2.0) / 2.0;
        let w3 = (f + 1.0) * f * (f - 1.0) / 6.0;
        at(-1) * w0 + at(0) * w1 + at(1) * w2 + at(2) * w3
    }
}

/// Group delay (in the transform's time variable) at `Ω = 0`, after
/// checking that the spread of group delays across the significant part of
/// the spectrum fits in half a transform period.
pub(crate) fn delay_center(grid: &FrequencyGrid, phase: &[f64], weight: &[f64]) -> Result<f64> {
    let step = grid.step();
    let c = grid.center_index();
    let center = (phase[c + 1] - phase[c - 1]) / (2.0 * step);
    let peak = weight.iter().cloned().fold(0.0, f64::max);
    let threshold = SIGNIFICANT_WEIGHT * peak;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for k in 0..phase.len() - 1 {
        if weight[k].min(weight[k + 1]) > threshold {
            let gd = (phase[k + 1] - phase[k]) / step;
            lo = lo.min(gd);
            hi = hi.max(gd);
        }
    }
    let half_period = PI / step;
    if hi - lo > half_period {
        return Err(Error::Numerical(format!(
            "frequency grid too coarse for this dispersion: group delays spread over {:.0} fs \
             but the transform period only allows {:.0} fs; use more spectral points",
            hi - lo,
            half_period
        )));
    }
    Ok(center)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transform_matches_direct_sum_between_nodes() {
        let grid = FrequencyGrid::new(1.0, 129).unwrap();
        let weights: Vec<Complex64> = grid
            .values()
            .iter()
            .map(|w| Complex64::from_polar((-8.0 * w * w).exp(), 3.0 * w * w))
            .collect();
        let fft = plan(&grid, 16);
        let t = PaddedTransform::new(&grid, &weights, &fft);
        for tau in [-7.3, -0.01, 0.0, 2.25, 11.9] {
            let direct: Complex64 = grid
                .values()
                .iter()
                .zip(&weights)
                .map(|(w, a)| a * Complex64::from_polar(grid.step(), -w * tau))
                .sum();
            assert!((t.sample(tau, 0.0) - direct).norm() < 1e-7, "τ = {tau}");
        }
    }

    #[test]
    fn outside_the_principal_period_is_zero() {
        let grid = FrequencyGrid::new(1.0, 129).unwrap();
        let weights = vec![Complex64::new(1.0, 0.0); 129];
        let t = PaddedTransform::new(&grid, &weights, &plan(&grid, 16));
        let period = 2.0 * PI / grid.step();
        assert_eq!(t.sample(0.6 * period, 0.0), Complex64::new(0.0, 0.0));
        assert!(t.sample(0.6 * period, 0.5 * period).norm() > 0.0);
    }

    #[test]
    fn coarse_grids_are_detected() {
        let grid = FrequencyGrid::new(1.0, 129).unwrap();
        let weights = vec![1.0; 129];
        let chirp: Vec<f64> = grid.values().iter().map(|w| 200.0 * w * w).collect();
        assert!(matches!(delay_center(&grid, &chirp, &weights), Err(Error::Numerical(_))));
        let mild: Vec<f64> = grid.values().iter().map(|w| 2.0 * w * w + 5.0 * w).collect();
        assert!((delay_center(&grid, &mild, &weights).unwrap() - 5.0).abs() < 1e-9);
    }
}
