use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::FrequencyGrid;
use crate::{Error, Result};

const MIN_PADDING: usize = 16;

/// FWHM (fs) of `|∫ density(Ω) e^{−iΩτ} dΩ|` as a function of τ.
///
/// The transform is evaluated with at least 16× zero padding to bracket the
/// half-maximum crossing, which is then refined by bisection on the direct
/// sum.
pub fn fourier_fwhm(grid: &FrequencyGrid, density: &[f64]) -> Result<f64> {
    if density.len() != grid.len() {
        return Err(Error::Input(format!(
            "density has {} samples but the grid has {}",
            density.len(),
            grid.len()
        )));
    }
    if density.iter().filter(|d| **d != 0.0).count() < 3 {
        return Err(Error::Input(
            "density needs at least 3 nonzero samples for a Fourier width".into(),
        ));
    }
    if density.iter().any(|d| !(*d >= 0.0)) {
        return Err(Error::Input("density must be non-negative".into()));
    }

    let n_fft = (MIN_PADDING * grid.len()).next_power_of_two();
    let mut buffer = vec![Complex64::new(0.0, 0.0); n_fft];
    let m = grid.half_points() as isize;
    for (i, d) in density.iter().enumerate() {
        let k = i as isize - m;
        buffer[k.rem_euclid(n_fft as isize) as usize] = Complex64::new(*d, 0.0);
    }
    FftPlanner::new().plan_fft_forward(n_fft).process(&mut buffer);

    let peak = buffer[0].norm();
    let dt = 2.0 * std::f64::consts::PI / (n_fft as f64 * grid.step());
    let j = (1..n_fft / 2)
        .find(|&j| buffer[j].norm() < 0.5 * peak)
        .ok_or_else(|| Error::Numerical("transform never falls below half maximum".into()))?;

    let omegas = grid.values();
    let excess = |tau: f64| -> f64 {
        let s: Complex64 = omegas
            .iter()
            .zip(density)
            .map(|(w, d)| Complex64::from_polar(*d, -w * tau))
            .sum();
        s.norm() - 0.5 * peak
    };
    let (mut lo, mut hi) = ((j - 1) as f64 * dt, j as f64 * dt);
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(lo + hi)
}
