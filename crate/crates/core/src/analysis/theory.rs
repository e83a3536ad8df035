use std::f64::consts::LN_2;

use crate::spectra::{biphoton_degenerate, fourier_fwhm, trapezoidal_spectrum, BiphotonSpectrum, GridSpec, SpectralAmplitude};
use crate::units::C_UM_PER_FS;
use crate::{Error, Result};

fn positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be positive, got {value}")))
    }
}

fn non_negative(name: &str, value: f64) -> Result<()> {
    if value >= 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be non-negative, got {value}")))
    }
}

/// Ratio of linear to two-photon FWHM.
pub fn enhancement_factor(lci_fwhm: f64, tpi_fwhm: f64) -> Result<f64> {
    positive("LCI FWHM", lci_fwhm)?;
    positive("TPI FWHM", tpi_fwhm)?;
    Ok(lci_fwhm / tpi_fwhm)
}

/// Expected enhancement for an empty stack and a monochromatic pump:
/// `2·W(FT{|f_o|²}) / W(FT{|f_s(Ω)|²|f_i(−Ω)|²})`.
///
/// The factor 2 appears because the coincidence dip is a function of `2τ`.
pub fn theoretical_enhancement(
    f_o: &SpectralAmplitude,
    f_s: &SpectralAmplitude,
    f_i: &SpectralAmplitude,
) -> Result<f64> {
    let linear = fourier_fwhm(f_o.grid(), &f_o.density())?;
    let BiphotonSpectrum::Degenerate1D { grid, density, .. } = biphoton_degenerate(f_s, f_i)? else {
        unreachable!("biphoton_degenerate returns a degenerate spectrum");
    };
    let pair = fourier_fwhm(&grid, &density)?;
    Ok(2.0 * linear / pair)
}

/// LCI envelope FWHM broadened by group-velocity dispersion `β₂d` (fs²),
/// for a Gaussian spectrum with undispersed FWHM `delta_l` (µm).
pub fn lci_degraded_closed_form(delta_l: f64, beta2_d: f64) -> Result<f64> {
    positive("resolution", delta_l)?;
    non_negative("β₂d", beta2_d)?;
    let r = 2.0 * LN_2.sqrt() * C_UM_PER_FS * beta2_d.sqrt() / delta_l;
    Ok(delta_l * (1.0 + r.powi(4)).sqrt())
}

/// Smallest broadened LCI FWHM reachable for a given `β₂d` (fs²), in µm.
pub fn lci_threshold(beta2_d: f64) -> Result<f64> {
    non_negative("β₂d", beta2_d)?;
    Ok(2.0 * (2.0 * LN_2).sqrt() * C_UM_PER_FS * beta2_d.sqrt())
}

/// Two-photon FWHM broadened by a pump line of density FWHM `delta_omega_p`
/// through residual `β₂d`, for a pair spectrum of density FWHM
/// `delta_omega_s`.
pub fn tpi_pump_degradation_closed_form(
    delta_l: f64,
    delta_omega_s: f64,
    delta_omega_p: f64,
    beta2_d: f64,
) -> Result<f64> {
    positive("resolution", delta_l)?;
    positive("signal bandwidth", delta_omega_s)?;
    non_negative("pump linewidth", delta_omega_p)?;
    non_negative("β₂d", beta2_d)?;
    let r = delta_omega_s * delta_omega_p * beta2_d / (8.0 * 2f64.sqrt() * LN_2);
    Ok(delta_l * (1.0 + r * r).sqrt())
}

/// Pump density FWHM giving a broadening `factor` in
/// [`tpi_pump_degradation_closed_form`].
pub fn pump_linewidth_for_degradation(factor: f64, delta_omega_s: f64, beta2_d: f64) -> Result<f64> {
    if !(factor >= 1.0) || !factor.is_finite() {
        return Err(Error::Parameter(format!(
            "broadening factor must be at least 1, got {factor}"
        )));
    }
    positive("signal bandwidth", delta_omega_s)?;
    positive("β₂d", beta2_d)?;
    Ok(8.0 * 2f64.sqrt() * LN_2 * (factor * factor - 1.0).sqrt() / (delta_omega_s * beta2_d))
}

/// Plateau width of a trapezoid with the given `base` whose theoretical
/// enhancement equals `target`, found by bisection on the plateau/base
/// ratio. The enhancement rises monotonically from the triangle (ratio 0)
/// to the rectangle (ratio 1). Returns `(plateau, enhancement)`.
pub fn trapezoid_for_enhancement(
    center_frequency: f64,
    base: f64,
    target: f64,
    spec: GridSpec,
) -> Result<(f64, f64)> {
    positive("base width", base)?;
    let at = |ratio: f64| -> Result<f64> {
        let f = trapezoidal_spectrum(center_frequency, ratio * base, base, spec)?;
        theoretical_enhancement(&f, &f, &f)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    let (r_lo, r_hi) = (at(lo)?, at(hi)?);
    if !(r_lo <= target && target <= r_hi) {
        return Err(Error::Parameter(format!(
            "target enhancement {target} outside the trapezoid range [{r_lo:.4}, {r_hi:.4}]"
        )));
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if at(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-6 {
            break;
        }
    }
    let ratio = 0.5 * (lo + hi);
    Ok((ratio * base, at(ratio)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{gaussian_spectrum, rectangular_spectrum};

    const W0: f64 = 2.331_25;

    #[test]
    fn closed_forms_by_direct_arithmetic() {
        assert!((lci_degraded_closed_form(4.2, 620.0).unwrap() - 37.0).abs() < 0.1);
        assert!((lci_degraded_closed_form(3.0, 5000.0).unwrap() - 415.0).abs() < 5.0);
        assert_eq!(lci_degraded_closed_form(2.5, 0.0).unwrap(), 2.5);
        assert!((lci_threshold(720.0).unwrap() - 18.94).abs() < 0.01);
        let t = lci_threshold(100.0).unwrap();
        assert!((lci_threshold(400.0).unwrap() - 2.0 * t).abs() < 1e-12);
        assert_eq!(tpi_pump_degradation_closed_form(3.0, 0.2, 0.0, 1700.0).unwrap(), 3.0);
    }

    #[test]
    fn pump_linewidth_inverts_degradation() {
        let dwp = pump_linewidth_for_degradation(1.17, 0.19790, 1700.0).unwrap();
        assert!((dwp - 0.01416).abs() < 1e-4);
        let f = tpi_pump_degradation_closed_form(1.0, 0.19790, dwp, 1700.0).unwrap();
        assert!((f - 1.17).abs() < 1e-12);
    }

    #[test]
    fn enhancement_limits() {
        assert!((enhancement_factor(4.2, 3.0).unwrap() - 1.4).abs() < 1e-12);
        assert!(enhancement_factor(0.0, 1.0).is_err());
        let g = gaussian_spectrum(W0, 0.2, GridSpec::default()).unwrap();
        assert!((theoretical_enhancement(&g, &g, &g).unwrap() - 2f64.sqrt()).abs() < 0.005 * 2f64.sqrt());
        let r = rectangular_spectrum(W0, 0.2, GridSpec::default()).unwrap();
        assert!((theoretical_enhancement(&r, &r, &r).unwrap() - 2.0).abs() < 0.01);
    }
}
