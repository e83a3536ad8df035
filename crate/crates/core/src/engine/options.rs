use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineOptions {
    /// Zero-padding factor of the frequency grid before the FFT (≥ 16).
    pub padding: usize,
    /// Number of traversals of the media: 2 for a sample in front of a
    /// mirror, 1 for a transmission geometry.
    pub pass_factor: f64,
    /// Remove the constant and linear parts of the media phase at the
    /// reference frequency, so the feature stays centered at zero delay.
    pub compensate_group_delay: bool,
    /// Scale of the interference term; values below 1 model a
    /// distinguishable background.
    pub interference_scale: f64,
    /// Half-width of the pump quadrature in standard deviations.
    pub pump_span_sigmas: f64,
    /// Largest allowed change in any `C(τ)` sample when the pump sampling is
    /// refined.
    pub pump_tolerance: f64,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self {
            padding: 16,
            pass_factor: 2.0,
            compensate_group_delay: false,
            interference_scale: 1.0,
            pump_span_sigmas: 3.0,
            pump_tolerance: 1e-3,
        }
    }
}

impl EngineOptions {
    pub fn single_pass() -> Self {
        Self {
            pass_factor: 1.0,
            ..Self::default()
        }
    }

    pub fn compensated(mut self) -> Self {
        self.compensate_group_delay = true;
        self
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.padding < 16 {
            return Err(Error::Parameter(format!(
                "FFT padding must be at least 16, got {}",
                self.padding
            )));
        }
        if !(self.pass_factor > 0.0) || !self.pass_factor.is_finite() {
            return Err(Error::Parameter(format!(
                "pass factor must be positive, got {}",
                self.pass_factor
            )));
        }
        if !(0.0..=1.0).contains(&self.interference_scale) {
            return Err(Error::Parameter(format!(
                "interference scale must lie in [0, 1], got {}",
                self.interference_scale
            )));
        }
        if !(self.pump_span_sigmas > 0.0) || !(self.pump_tolerance > 0.0) {
            return Err(Error::Parameter(
                "pump span and tolerance must be positive".into(),
            ));
        }
        Ok(())
    }
}
