//! Spectral amplitude models and biphoton spectra.
//!
//! Amplitudes are real and non-negative; only `|f(Ω)|²` enters the
//! interferograms, so spectral phase is not represented.

mod biphoton;
mod fourier;
mod grid;
mod shapes;
mod tabulated;

pub use biphoton::{biphoton_degenerate, biphoton_joint, BiphotonSpectrum, UniformAxis};
pub use fourier::fourier_fwhm;
pub use grid::{FrequencyGrid, GridSpec};
pub use shapes::{
    gaussian_spectrum, rectangular_spectrum, trapezoidal_spectrum, SpectralAmplitude,
};
pub use tabulated::{read_spectrum_csv, tabulated_spectrum, SPECTRUM_CSV_HEADER};

/// Full width at half maximum of sampled data on a uniform axis, from
/// linear interpolation of the two crossings nearest the maximum.
pub(crate) fn sampled_fwhm(step: f64, values: &[f64]) -> Option<f64> {
    let (peak, &max) = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))?;
    if !(max > 0.0) {
        return None;
    }
    let half = 0.5 * max;
    let right = (peak..values.len() - 1).find(|&i| values[i + 1] < half)?;
    let left = (1..=peak).rev().find(|&i| values[i - 1] < half)?;
    let xr = right as f64 + (values[right] - half) / (values[right] - values[right + 1]);
    let xl = left as f64 - (values[left] - half) / (values[left] - values[left - 1]);
    Some((xr - xl) * step)
}
