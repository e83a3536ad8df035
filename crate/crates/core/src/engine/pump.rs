use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::interferogram::validate_delays;
use super::transform::{delay_center, plan, support_phases, PaddedTransform};
use super::{tpi_mono, Carrier, EngineOptions, Interferogram, InterferogramKind};
use crate::dispersion::MediumStack;
use crate::spectra::{biphoton_degenerate, biphoton_joint, BiphotonSpectrum, SpectralAmplitude};
use crate::units::delay_fs_from_um;
use crate::{Error, Result};

/// Fewest pump samples accepted for a finite linewidth.
const MIN_PUMP_SAMPLES: usize = 9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PumpModel {
    Monochromatic {
        frequency: f64,
    },
    /// Gaussian line; `fwhm` is the FWHM of the pump power spectrum in rad/fs.
    GaussianLine {
        frequency: f64,
        fwhm: f64,
        #[serde(default = "default_pump_samples")]
        samples: usize,
    },
}

fn default_pump_samples() -> usize {
    65
}

impl PumpModel {
    pub fn frequency(&self) -> f64 {
        match self {
            PumpModel::Monochromatic { frequency } | PumpModel::GaussianLine { frequency, .. } => *frequency,
        }
    }
}

/// Coincidence interferogram for either pump model.
pub fn tpi(
    signal: &SpectralAmplitude,
    idler: &SpectralAmplitude,
    pump: &PumpModel,
    stack: &MediumStack,
    delays_um: &[f64],
    options: &EngineOptions,
) -> Result<Interferogram> {
    match pump {
        PumpModel::Monochromatic { frequency } => {
            let pair = biphoton_degenerate(signal, idler)?;
            tpi_mono(&pair, stack, *frequency, delays_um, options)
        }
        PumpModel::GaussianLine { .. } => tpi_finite_pump(signal, idler, pump, stack, delays_um, options),
    }
}

/// Coincidence interferogram for a pump of finite linewidth.
///
/// With pump detuning `Σ = Ω_s + Ω_i` and `Ω = (Ω_s − Ω_i)/2`, each pump
/// slice contributes a monochromatic-like integral over Ω with density
/// `S_s(Ω + Σ/2)·S_i(−Ω + Σ/2)` and phase `p·[φ(Ω + Σ/2) − φ(−Ω + Σ/2)]`,
/// where the even part of φ no longer cancels exactly. Slices are weighted by
/// the pump density and the result is normalized so that `C → 1` far from
/// the dip.
///
/// The pump quadrature is checked by repeating with `2n − 1` samples; a
/// change above `options.pump_tolerance` anywhere on the delay grid is a
/// convergence error.
pub fn tpi_finite_pump(
    signal: &SpectralAmplitude,
    idler: &SpectralAmplitude,
    pump: &PumpModel,
    stack: &MediumStack,
    delays_um: &[f64],
    options: &EngineOptions,
) -> Result<Interferogram> {
    let PumpModel::GaussianLine {
        frequency,
        fwhm,
        samples,
    } = *pump
    else {
        return Err(Error::Parameter(
            "finite-pump evaluation needs a Gaussian pump line".into(),
        ));
    };
    options.validate()?;
    validate_delays(delays_um)?;
    if samples < MIN_PUMP_SAMPLES || samples % 2 == 0 {
        return Err(Error::Parameter(format!(
            "pump samples must be odd and at least {MIN_PUMP_SAMPLES}, got {samples}"
        )));
    }
    if !(frequency > 0.0) || !frequency.is_finite() {
        return Err(Error::Parameter(format!(
            "pump frequency must be positive, got {frequency}"
        )));
    }
    let coarse = pump_average(signal, idler, frequency, fwhm, samples, stack, delays_um, options)?;
    let fine = pump_average(signal, idler, frequency, fwhm, 2 * samples - 1, stack, delays_um, options)?;
    let change = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if change > options.pump_tolerance {
        return Err(Error::Convergence(format!(
            "pump quadrature not converged: refining from {samples} to {} samples changed C by {change:.2e}",
            2 * samples - 1
        )));
    }
    log::debug!("pump quadrature change {change:.2e} with {samples} samples");
    Ok(Interferogram {
        kind: InterferogramKind::Tpi,
        carrier: Carrier::EnvelopeOnly,
        delay_um: delays_um.to_vec(),
        values: coarse,
        metadata: json!({
            "kind": "tpi",
            "pump": "gaussian_line",
            "pump_frequency_rad_per_fs": frequency,
            "pump_fwhm_rad_per_fs": fwhm,
            "pump_samples": samples,
            "pump_quadrature_change": change,
            "pass_factor": options.pass_factor,
            "compensate_group_delay": options.compensate_group_delay,
            "spectral_points": signal.grid().len(),
        }),
    })
}

#[allow(clippy::too_many_arguments)]
fn pump_average(
    signal: &SpectralAmplitude,
    idler: &SpectralAmplitude,
    frequency: f64,
    fwhm: f64,
    samples: usize,
    stack: &MediumStack,
    delays_um: &[f64],
    options: &EngineOptions,
) -> Result<Vec<f64>> {
    let BiphotonSpectrum::Joint2D {
        pump_axis,
        pump_density,
        ..
    } = biphoton_joint(signal, idler, fwhm, samples, options.pump_span_sigmas)?
    else {
        unreachable!("biphoton_joint returns a joint spectrum");
    };
    let reference = 0.5 * frequency;
    let grid = signal.grid();
    let omegas = grid.values();
    let p = options.pass_factor;
    let slope = if options.compensate_group_delay && !stack.is_empty() {
        2.0 * p * stack.group_delay(reference)?
    } else {
        0.0
    };
    let fft = plan(grid, options.padding);
    let times: Vec<f64> = delays_um.iter().map(|x| 2.0 * delay_fs_from_um(*x)).collect();

    let slice = |sigma: f64| -> Result<(Vec<f64>, Vec<Complex64>, f64)> {
        let shifted: Vec<f64> = omegas.iter().map(|w| w + 0.5 * sigma).collect();
        let density: Vec<f64> = (0..grid.len())
            .map(|k| signal.density_at(shifted[k]) * idler.density_at(shifted[grid.mirror(k)]))
            .collect();
        let support: Vec<f64> = (0..grid.len()).map(|k| density[k].max(density[grid.mirror(k)])).collect();
        let psi = support_phases(stack, &shifted, reference, &support)?;
        let mut eta = Vec::with_capacity(grid.len());
        let mut weights = Vec::with_capacity(grid.len());
        for k in 0..grid.len() {
            let e = p * (psi[k] - psi[grid.mirror(k)]) - slope * omegas[k];
            eta.push(e);
            weights.push(Complex64::from_polar(density[k], e));
        }
        let norm = grid.integrate(&density);
        Ok((eta, weights, norm))
    };

    let (center_eta, _, _) = slice(0.0)?;
    let center_density: Vec<f64> = (0..grid.len())
        .map(|k| signal.density_at(omegas[k]) * idler.density_at(omegas[grid.mirror(k)]))
        .collect();
    let center = delay_center(grid, &center_eta, &center_density)?;

    let last = samples - 1;
    let per_slice: Vec<Result<(f64, Vec<Complex64>)>> = (0..samples)
        .into_par_iter()
        .map(|j| {
            let end = if j == 0 || j == last { 0.5 } else { 1.0 };
            let w = pump_density[j] * pump_axis.step * end;
            let (eta, weights, norm) = slice(pump_axis.value(j))?;
            let density: Vec<f64> = weights.iter().map(|c| c.norm()).collect();
            delay_center(grid, &eta, &density)?;
            let transform = PaddedTransform::new(grid, &weights, &fft);
            let sampled = times.iter().map(|t| transform.sample(*t, center) * w).collect();
            Ok((w * norm, sampled))
        })
        .collect();

    // ordered sum keeps the result independent of the thread count
    let mut total = vec![Complex64::new(0.0, 0.0); times.len()];
    let mut norm = 0.0;
    for item in per_slice {
        let (n, sampled) = item?;
        norm += n;
        for (acc, s) in total.iter_mut().zip(sampled) {
            *acc += s;
        }
    }
    if !(norm > 0.0) {
        return Err(Error::Input(
            "signal and idler spectra do not overlap for this pump".into(),
        ));
    }
    let scale = options.interference_scale;
    Ok(total.iter().map(|g| 1.0 - scale * g.re / norm).collect())
}
