use std::f64::consts::PI;

use num_complex::Complex64;
use serde_json::json;

use super::interferogram::validate_delays;
use super::transform::{delay_center, plan, support_phases, PaddedTransform};
use super::{Carrier, EngineOptions, Interferogram, InterferogramKind};
use crate::dispersion::MediumStack;
use crate::spectra::SpectralAmplitude;
use crate::units::{delay_fs_from_um, C_UM_PER_FS};
use crate::{Error, Result};

/// Linear (Michelson-type) interferogram of a sample stack against an empty
/// reference arm.
///
/// `γ(τ) = ∫ S(Ω) e^{−iΩτ + i·p·φ(ω₀+Ω)} dΩ`, with `p` the pass factor and
/// `φ` the stack phase relative to the spectrum center. The envelope is
/// `1 + |γ|`; with fringes the value is `1 + Re{e^{−iω₀τ} γ}`.
pub fn lci(
    spectrum: &SpectralAmplitude,
    stack: &MediumStack,
    delays_um: &[f64],
    carrier: Carrier,
    options: &EngineOptions,
) -> Result<Interferogram> {
    options.validate()?;
    let step_um = validate_delays(delays_um)?;
    let omega0 = spectrum.center_frequency();
    if carrier == Carrier::WithFringes {
        // Nyquist on the fringe period π c / ω₀ in optical delay
        let limit = PI * C_UM_PER_FS / (2.0 * omega0);
        if step_um >= limit {
            return Err(Error::Parameter(format!(
                "delay step {step_um:.4} µm does not resolve fringes; use a step below {limit:.4} µm \
                 or the envelope carrier"
            )));
        }
    }
    let grid = spectrum.grid();
    let omegas = grid.values();
    let p = options.pass_factor;
    let density = spectrum.density();
    let mut phase: Vec<f64> = support_phases(stack, &omegas, omega0, &density)?
        .into_iter()
        .map(|phi| p * phi)
        .collect();
    if options.compensate_group_delay && !stack.is_empty() {
        let offset = phase[grid.center_index()];
        let slope = p * stack.group_delay(omega0)?;
        for (ph, w) in phase.iter_mut().zip(&omegas) {
            *ph -= offset + slope * w;
        }
    }
    let center = delay_center(grid, &phase, &density)?;
    let weights: Vec<Complex64> = density
        .iter()
        .zip(&phase)
        .map(|(d, ph)| Complex64::from_polar(*d, *ph))
        .collect();
    let transform = PaddedTransform::new(grid, &weights, &plan(grid, options.padding));
    let scale = options.interference_scale;
    let values = delays_um
        .iter()
        .map(|x| {
            let tau = delay_fs_from_um(*x);
            let gamma = transform.sample(tau, center);
            match carrier {
                Carrier::EnvelopeOnly => 1.0 + scale * gamma.norm(),
                Carrier::WithFringes => {
                    1.0 + scale * (Complex64::from_polar(1.0, -omega0 * tau) * gamma).re
                }
            }
        })
        .collect();
    Ok(Interferogram {
        kind: InterferogramKind::Lci,
        carrier,
        delay_um: delays_um.to_vec(),
        values,
        metadata: json!({
            "kind": "lci",
            "center_frequency_rad_per_fs": omega0,
            "pass_factor": p,
            "compensate_group_delay": options.compensate_group_delay,
            "spectral_points": grid.len(),
        }),
    })
}
