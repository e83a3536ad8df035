use std::f64::consts::LN_2;

use super::grid::{FrequencyGrid, GridSpec};
use crate::{Error, Result};

/// Normalized spectral probability amplitude `f(Ω)` about a center
/// frequency ω₀, with `∫|f(Ω)|² dΩ = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralAmplitude {
    center_frequency: f64,
    grid: FrequencyGrid,
    amplitude: Vec<f64>,
}

impl SpectralAmplitude {
    /// Builds an amplitude from unnormalized power-spectral-density samples.
    pub fn from_density(center_frequency: f64, grid: FrequencyGrid, density: &[f64]) -> Result<Self> {
        if !(center_frequency > 0.0) || !center_frequency.is_finite() {
            return Err(Error::Parameter(format!(
                "center frequency must be positive, got {center_frequency}"
            )));
        }
        if density.len() != grid.len() {
            return Err(Error::Input(format!(
                "density has {} samples but the grid has {}",
                density.len(),
                grid.len()
            )));
        }
        if let Some(bad) = density.iter().find(|d| !(**d >= 0.0) || !d.is_finite()) {
            return Err(Error::Input(format!(
                "spectral density must be finite and non-negative, found {bad}"
            )));
        }
        let norm = grid.integrate(density);
        if !(norm > 0.0) {
            return Err(Error::Input("spectral density has zero norm".into()));
        }
        let amplitude = density.iter().map(|d| (d / norm).sqrt()).collect();
        Ok(Self {
            center_frequency,
            grid,
            amplitude,
        })
    }

    pub fn center_frequency(&self) -> f64 {
        self.center_frequency
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn amplitude(&self) -> &[f64] {
        &self.amplitude
    }

    /// `|f(Ω)|²` at the grid samples.
    pub fn density(&self) -> Vec<f64> {
        self.amplitude.iter().map(|a| a * a).collect()
    }

    /// `|f(Ω)|²` at an arbitrary Ω by linear interpolation of the density.
    pub fn density_at(&self, omega: f64) -> f64 {
        let u = omega / self.grid.step() + self.grid.half_points() as f64;
        if !(u >= 0.0) || u > (self.grid.len() - 1) as f64 {
            return 0.0;
        }
        let i = (u.floor() as usize).min(self.grid.len() - 2);
        let frac = u - i as f64;
        let a = self.amplitude[i] * self.amplitude[i];
        let b = self.amplitude[i + 1] * self.amplitude[i + 1];
        a + frac * (b - a)
    }

    /// FWHM of `|f(Ω)|²` measured on the grid.
    pub fn density_fwhm(&self) -> Option<f64> {
        super::sampled_fwhm(self.grid.step(), &self.density())
    }
}

/// Gaussian spectrum whose density `|f(Ω)|²` has FWHM `fwhm`.
pub fn gaussian_spectrum(center_frequency: f64, fwhm: f64, spec: GridSpec) -> Result<SpectralAmplitude> {
    if !(fwhm > 0.0) || !fwhm.is_finite() {
        return Err(Error::Parameter(format!(
            "spectral FWHM must be positive, got {fwhm}"
        )));
    }
    let grid = spec.grid_for_width(fwhm)?;
    let density: Vec<f64> = grid
        .values()
        .iter()
        .map(|w| (-4.0 * LN_2 * w * w / (fwhm * fwhm)).exp())
        .collect();
    SpectralAmplitude::from_density(center_frequency, grid, &density)
}

/// Flat-top density of total width `full_width`.
pub fn rectangular_spectrum(
    center_frequency: f64,
    full_width: f64,
    spec: GridSpec,
) -> Result<SpectralAmplitude> {
    trapezoidal_spectrum(center_frequency, full_width, full_width, spec)
}

/// Isosceles-trapezoid density with a flat top of width `plateau_width`
/// falling linearly to zero at `±base_width/2`.
///
/// `plateau_width == base_width` gives the rectangle and
/// `plateau_width == 0` the triangle.
pub fn trapezoidal_spectrum(
    center_frequency: f64,
    plateau_width: f64,
    base_width: f64,
    spec: GridSpec,
) -> Result<SpectralAmplitude> {
    if !(base_width > 0.0) || !base_width.is_finite() {
        return Err(Error::Parameter(format!(
            "spectral width must be positive, got {base_width}"
        )));
    }
    if !(plateau_width >= 0.0) {
        return Err(Error::Parameter(format!(
            "plateau width must be non-negative, got {plateau_width}"
        )));
    }
    if plateau_width > base_width {
        return Err(Error::Parameter(format!(
            "plateau width {plateau_width} exceeds base width {base_width}"
        )));
    }
    let grid = spec.grid_for_width(base_width)?;
    let half_plateau = 0.5 * plateau_width;
    let half_base = 0.5 * base_width;
    let density: Vec<f64> = grid
        .values()
        .iter()
        .map(|w| {
            let a = w.abs();
            if a <= half_plateau {
                1.0
            } else if a < half_base {
                (half_base - a) / (half_base - half_plateau)
            } else {
                0.0
            }
        })
        .collect();
    SpectralAmplitude::from_density(center_frequency, grid, &density)
}
