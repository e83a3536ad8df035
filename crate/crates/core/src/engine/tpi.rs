use num_complex::Complex64;
use serde_json::json;

use super::interferogram::validate_delays;
use super::transform::{delay_center, plan, support_phases, PaddedTransform};
use super::{Carrier, EngineOptions, Interferogram, InterferogramKind};
use crate::dispersion::MediumStack;
use crate::spectra::BiphotonSpectrum;
use crate::units::delay_fs_from_um;
use crate::{Error, Result};

/// Relative mismatch between `ω_p/2` and the pair center that is tolerated
/// silently.
const CENTER_MISMATCH_WARN: f64 = 0.01;

/// Coincidence interferogram for a monochromatic pump.
///
/// `C(τ) = 1 − Re ∫ D(Ω) e^{−2iΩτ + iη(Ω)} dΩ` with
/// `η(Ω) = p·[φ(ω_p/2 + Ω) − φ(ω_p/2 − Ω)]`. Only odd orders of the stack
/// phase survive in η, so group-velocity dispersion cancels exactly.
pub fn tpi_mono(
    biphoton: &BiphotonSpectrum,
    stack: &MediumStack,
    pump_frequency: f64,
    delays_um: &[f64],
    options: &EngineOptions,
) -> Result<Interferogram> {
    let BiphotonSpectrum::Degenerate1D {
        center_frequency,
        grid,
        density,
    } = biphoton
    else {
        return Err(Error::Input(
            "monochromatic evaluation needs a degenerate biphoton spectrum".into(),
        ));
    };
    options.validate()?;
    validate_delays(delays_um)?;
    if !(pump_frequency > 0.0) || !pump_frequency.is_finite() {
        return Err(Error::Parameter(format!(
            "pump frequency must be positive, got {pump_frequency}"
        )));
    }
    let reference = 0.5 * pump_frequency;
    if ((reference - center_frequency) / center_frequency).abs() > CENTER_MISMATCH_WARN {
        log::warn!(
            "half the pump frequency ({reference:.5} rad/fs) is off the pair center ({center_frequency:.5} rad/fs)"
        );
    }
    let omegas = grid.values();
    let support: Vec<f64> = (0..grid.len()).map(|k| density[k].max(density[grid.mirror(k)])).collect();
    let phi = support_phases(stack, &omegas, reference, &support)?;
    let p = options.pass_factor;
    let slope = if options.compensate_group_delay && !stack.is_empty() {
        2.0 * p * stack.group_delay(reference)?
    } else {
        0.0
    };
    let eta: Vec<f64> = (0..grid.len())
        .map(|k| p * (phi[k] - phi[grid.mirror(k)]) - slope * omegas[k])
        .collect();
    let center = delay_center(grid, &eta, density)?;
    let weights: Vec<Complex64> = density
        .iter()
        .zip(&eta)
        .map(|(d, e)| Complex64::from_polar(*d, *e))
        .collect();
    let transform = PaddedTransform::new(grid, &weights, &plan(grid, options.padding));
    let scale = options.interference_scale;
    let values = delays_um
        .iter()
        .map(|x| 1.0 - scale * transform.sample(2.0 * delay_fs_from_um(*x), center).re)
        .collect();
    Ok(Interferogram {
        kind: InterferogramKind::Tpi,
        carrier: Carrier::EnvelopeOnly,
        delay_um: delays_um.to_vec(),
        values,
        metadata: json!({
            "kind": "tpi",
            "pump": "monochromatic",
            "pump_frequency_rad_per_fs": pump_frequency,
            "pass_factor": p,
            "compensate_group_delay": options.compensate_group_delay,
            "spectral_points": grid.len(),
        }),
    })
}
