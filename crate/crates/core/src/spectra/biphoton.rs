use std::f64::consts::LN_2;

use super::grid::FrequencyGrid;
use super::shapes::SpectralAmplitude;
use crate::{Error, Result};

/// Uniformly sampled axis `start + i·step`, `i < len`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformAxis {
    pub fn value(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len).map(|i| self.value(i)).collect()
    }

    /// Trapezoidal integral of samples on this axis.
    pub fn integrate(&self, samples: &[f64]) -> f64 {
        let n = samples.len();
        if n < 2 {
            return 0.0;
        }
        let interior: f64 = samples[1..n - 1].iter().sum();
        self.step * (interior + 0.5 * (samples[0] + samples[n - 1]))
    }
}

/// Two-photon spectral density.
#[derive(Clone, Debug, PartialEq)]
pub enum BiphotonSpectrum {
    /// Monochromatic pump: `|f_q(Ω)|²` for the pair `|ω_p/2 + Ω⟩|ω_p/2 − Ω⟩`.
    Degenerate1D {
        center_frequency: f64,
        grid: FrequencyGrid,
        density: Vec<f64>,
    },
    /// Finite pump linewidth: pump density `|ξ_p(ω₊)|²` over the detuning
    /// `ω₊ = Ω_s + Ω_i` from `2ω₀`, and the single-photon spectra.
    Joint2D {
        pump_axis: UniformAxis,
        pump_density: Vec<f64>,
        signal: SpectralAmplitude,
        idler: SpectralAmplitude,
    },
}

impl BiphotonSpectrum {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, BiphotonSpectrum::Degenerate1D { .. })
    }
}

/// `|f_q(Ω)|² ∝ |f_s(Ω)|²·|f_i(−Ω)|²`, renormalized to unit integral.
pub fn biphoton_degenerate(
    signal: &SpectralAmplitude,
    idler: &SpectralAmplitude,
) -> Result<BiphotonSpectrum> {
    if signal.grid() != idler.grid() {
        return Err(Error::Input(
            "signal and idler spectra must share the same frequency grid".into(),
        ));
    }
    let grid = signal.grid().clone();
    let s = signal.amplitude();
    let i = idler.amplitude();
    let mut density: Vec<f64> = (0..grid.len())
        .map(|k| {
            let a = s[k] * i[grid.mirror(k)];
            a * a
        })
        .collect();
    let norm = grid.integrate(&density);
    if !(norm > 0.0) {
        return Err(Error::Input(
            "signal and idler spectra do not overlap (biphoton density has zero norm)".into(),
        ));
    }
    density.iter_mut().for_each(|d| *d /= norm);
    Ok(BiphotonSpectrum::Degenerate1D {
        center_frequency: 0.5 * (signal.center_frequency() + idler.center_frequency()),
        grid,
        density,
    })
}

/// Joint spectrum for a Gaussian pump line of density FWHM `pump_fwhm`,
/// sampled with `n_samples` uniform points over `±span_sigmas·σ`.
pub fn biphoton_joint(
    signal: &SpectralAmplitude,
    idler: &SpectralAmplitude,
    pump_fwhm: f64,
    n_samples: usize,
    span_sigmas: f64,
) -> Result<BiphotonSpectrum> {
    if signal.grid() != idler.grid() {
        return Err(Error::Input(
            "signal and idler spectra must share the same frequency grid".into(),
        ));
    }
    if !(pump_fwhm > 0.0) || !pump_fwhm.is_finite() {
        return Err(Error::Parameter(format!(
            "pump linewidth must be positive, got {pump_fwhm}"
        )));
    }
    if n_samples < 3 || n_samples % 2 == 0 {
        return Err(Error::Parameter(format!(
            "pump sample count must be odd and at least 3, got {n_samples}"
        )));
    }
    if !(span_sigmas > 0.0) {
        return Err(Error::Parameter(format!(
            "pump span must be positive, got {span_sigmas} σ"
        )));
    }
    let sigma = pump_fwhm / (2.0 * (2.0 * LN_2).sqrt());
    let half = span_sigmas * sigma;
    let pump_axis = UniformAxis {
        start: -half,
        step: 2.0 * half / (n_samples - 1) as f64,
        len: n_samples,
    };
    let mut pump_density: Vec<f64> = pump_axis
        .values()
        .iter()
        .map(|w| (-0.5 * w * w / (sigma * sigma)).exp())
        .collect();
    let norm = pump_axis.integrate(&pump_density);
    pump_density.iter_mut().for_each(|d| *d /= norm);
    Ok(BiphotonSpectrum::Joint2D {
        pump_axis,
        pump_density,
        signal: signal.clone(),
        idler: idler.clone(),
    })
}
