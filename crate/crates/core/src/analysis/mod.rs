//! Resolution metrics extracted from interferograms, and closed-form
//! predictions to compare them against.

mod fit;
mod metrics;
mod theory;

pub use fit::fwhm_gaussian_fit;
pub use metrics::{fwhm_halfmax, side_oscillations, visibility, FwhmMethod, ResolutionReport, SideOscillations};
pub use theory::{
    enhancement_factor, lci_degraded_closed_form, lci_threshold, pump_linewidth_for_degradation,
    theoretical_enhancement, tpi_pump_degradation_closed_form, trapezoid_for_enhancement,
};
