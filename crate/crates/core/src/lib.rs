//! Simulation of low-coherence interference (LCI) and two-photon
//! Hong-Ou-Mandel interference (TPI) through dispersive media.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectra`]: normalized spectral amplitudes (Gaussian, rectangular,
//!   trapezoidal, tabulated) and biphoton spectra built from them.
//! - [`dispersion`]: wavevector models β(ω) for dispersive media, built-in
//!   Sellmeier data for water, BK7 and ZnSe, and stacks of media.
//! - [`engine`]: FFT evaluation of LCI and TPI interferograms, including the
//!   finite pump-linewidth double integral.
//! - [`analysis`]: FWHM extraction (Gaussian fit and half-maximum crossings),
//!   enhancement factors and the closed-form broadening formulas.
//!
//! Units are fixed across the crate: angular frequency in rad/fs, time in fs,
//! optical delay `cτ/2` in µm, thickness in mm and dispersion coefficients in
//! fsⁿ/mm.
//!
//! ```
//! use homsim::prelude::*;
//!
//! let omega0 = units::angular_frequency_from_wavelength_nm(808.0);
//! let photon = gaussian_spectrum(omega0, 0.1979, GridSpec::default())?;
//! let pair = biphoton_degenerate(&photon, &photon)?;
//! let delays = DelayGrid::new(0.0, 40.0, 1025)?.values();
//! let dip = tpi_mono(&pair, &MediumStack::empty(), 2.0 * omega0, &delays, &EngineOptions::default())?;
//! let report = fwhm_gaussian_fit(&dip)?;
//! assert!((report.fwhm - 2.97).abs() < 0.01);
//! # Ok::<(), homsim::Error>(())
//! ```

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod dispersion;
pub mod engine;
mod error;
pub mod spectra;
pub mod units;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::analysis::{
        enhancement_factor, fwhm_gaussian_fit, fwhm_halfmax, lci_degraded_closed_form,
        lci_threshold, pump_linewidth_for_degradation, side_oscillations,
        theoretical_enhancement, tpi_pump_degradation_closed_form, trapezoid_for_enhancement,
        visibility, FwhmMethod, ResolutionReport, SideOscillations,
    };
    pub use crate::dispersion::{
        DispersiveMedium, GvdBudget, MaterialLibrary, MaterialModel, MediumStack, Sellmeier,
        TaylorCoefficients,
    };
    pub use crate::engine::{
        lci, tpi, tpi_finite_pump, tpi_mono, Carrier, DelayGrid, EngineOptions, Interferogram,
        InterferogramKind, PumpModel,
    };
    pub use crate::spectra::{
        biphoton_degenerate, biphoton_joint, fourier_fwhm, gaussian_spectrum, rectangular_spectrum,
        tabulated_spectrum, trapezoidal_spectrum, BiphotonSpectrum, FrequencyGrid, GridSpec,
        SpectralAmplitude,
    };
    pub use crate::units;
    pub use crate::{Error, Result};
}

// The guide in `book/` is compiled and run as doc-tests so its snippets
// cannot drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/spectra.md")]
    mod spectra {}
    #[doc = include_str!("../../../book/src/dispersion.md")]
    mod dispersion {}
    #[doc = include_str!("../../../book/src/interferograms.md")]
    mod interferograms {}
    #[doc = include_str!("../../../book/src/pump-linewidth.md")]
    mod pump_linewidth {}
    #[doc = include_str!("../../../book/src/analysis.md")]
    mod analysis {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
