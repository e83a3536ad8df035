use serde::{Deserialize, Serialize};

use crate::units::wavelength_nm_from_angular_frequency;
use crate::{Error, Result};

/// Sellmeier dispersion formula
/// `n²(λ) = 1 + Σ_k B_k λ² / (λ² − C_k)` with λ in µm and `C_k` in µm².
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sellmeier {
    /// Where the coefficients come from; echoed in reports.
    pub source: String,
    pub b: Vec<f64>,
    pub c_um2: Vec<f64>,
    pub range_nm: (f64, f64),
}

impl Sellmeier {
    pub fn new(source: impl Into<String>, b: Vec<f64>, c_um2: Vec<f64>, range_nm: (f64, f64)) -> Result<Self> {
        let model = Self {
            source: source.into(),
            b,
            c_um2,
            range_nm,
        };
        model.validate()?;
        Ok(model)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.b.is_empty() || self.b.len() != self.c_um2.len() {
            return Err(Error::Input(format!(
                "Sellmeier model needs equally many B and C coefficients (got {} and {})",
                self.b.len(),
                self.c_um2.len()
            )));
        }
        if self.b.iter().chain(&self.c_um2).any(|v| !v.is_finite()) {
            return Err(Error::Input("Sellmeier coefficients must be finite".into()));
        }
        let (lo, hi) = self.range_nm;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::Input(format!(
                "Sellmeier validity range must satisfy 0 < min < max, got [{lo}, {hi}] nm"
            )));
        }
        for c in &self.c_um2 {
            let pole_nm = c.abs().sqrt() * 1000.0;
            if *c > 0.0 && pole_nm >= lo && pole_nm <= hi {
                return Err(Error::Input(format!(
                    "Sellmeier resonance at {pole_nm:.1} nm lies inside the validity range"
                )));
            }
        }
        for i in 0..=64 {
            let lambda_nm = lo + (hi - lo) * i as f64 / 64.0;
            let n2 = self.index_squared(lambda_nm * 1e-3);
            if !(n2 > 1.0) || !n2.is_finite() {
                return Err(Error::Input(format!(
                    "Sellmeier index is not real and above 1 at {lambda_nm:.1} nm (n² = {n2})"
                )));
            }
        }
        Ok(())
    }

    fn index_squared(&self, wavelength_um: f64) -> f64 {
        let l2 = wavelength_um * wavelength_um;
        1.0 + self
            .b
            .iter()
            .zip(&self.c_um2)
            .map(|(b, c)| b * l2 / (l2 - c))
            .sum::<f64>()
    }

    pub fn contains_nm(&self, wavelength_nm: f64) -> bool {
        wavelength_nm >= self.range_nm.0 && wavelength_nm <= self.range_nm.1
    }

    /// Refractive index at a vacuum wavelength in nm, without range checking.
    pub fn index_unchecked(&self, wavelength_nm: f64) -> f64 {
        self.index_squared(wavelength_nm * 1e-3).sqrt()
    }

    /// Refractive index at angular frequency ω (rad/fs).
    pub fn index_at(&self, medium: &str, omega: f64) -> Result<f64> {
        let wavelength_nm = wavelength_nm_from_angular_frequency(omega);
        if !self.contains_nm(wavelength_nm) {
            return Err(Error::Domain {
                medium: medium.to_string(),
                wavelength_nm,
                min_nm: self.range_nm.0,
                max_nm: self.range_nm.1,
            });
        }
        Ok(self.index_unchecked(wavelength_nm))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_pole_inside_range() {
        let r = Sellmeier::new("t", vec![1.0], vec![0.25], (300.0, 800.0));
        assert!(matches!(r, Err(Error::Input(_))));
    }

    #[test]
    fn rejects_mismatched_coefficients() {
        assert!(Sellmeier::new("t", vec![1.0, 0.2], vec![0.01], (300.0, 800.0)).is_err());
        assert!(Sellmeier::new("t", vec![], vec![], (300.0, 800.0)).is_err());
        assert!(Sellmeier::new("t", vec![1.0], vec![0.01], (800.0, 300.0)).is_err());
    }

    #[test]
    fn out_of_range_names_the_medium() {
        let s = Sellmeier::new("t", vec![1.0], vec![0.01], (300.0, 800.0)).unwrap();
        let omega = crate::units::angular_frequency_from_wavelength_nm(1500.0);
        let err = s.index_at("mystery glass", omega).unwrap_err();
        assert!(err.to_string().contains("mystery glass"));
    }
}
