use serde::{Deserialize, Serialize};

use super::derivative::richardson_derivative;
use super::sellmeier::Sellmeier;
use crate::units::{angular_frequency_from_wavelength_nm, C_MM_PER_FS, C_NM_PER_FS};
use crate::{Error, Result};

pub const MAX_TAYLOR_ORDER: usize = 5;

/// Initial finite-difference step (rad/fs) for Sellmeier derivatives; it
/// grows with the order because roundoff in an order-m stencil scales as
/// `ε/hᵐ`.
const DERIVATIVE_STEP: f64 = 0.05;

/// `β(ω) = Σ_n β⁽ⁿ⁾ (ω − ω_ref)ⁿ / n!`, with `β⁽ⁿ⁾` in fsⁿ/mm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoefficients {
    /// Expansion point in rad/fs.
    pub reference: f64,
    pub beta: Vec<f64>,
}

impl TaylorCoefficients {
    fn validate(&self) -> Result<()> {
        if self.beta.is_empty() || self.beta.len() > MAX_TAYLOR_ORDER + 1 {
            return Err(Error::Parameter(format!(
                "Taylor model needs 1 to {} coefficients, got {}",
                MAX_TAYLOR_ORDER + 1,
                self.beta.len()
            )));
        }
        if !self.reference.is_finite() || self.beta.iter().any(|b| !b.is_finite()) {
            return Err(Error::Parameter("Taylor coefficients must be finite".into()));
        }
        Ok(())
    }

    /// Evaluates `β` at detuning `delta = ω − ω_ref` by Horner's rule.
    pub fn eval(&self, delta: f64) -> f64 {
        let mut factorial = 1.0;
        let scaled: Vec<f64> = self
            .beta
            .iter()
            .enumerate()
            .map(|(n, b)| {
                if n > 0 {
                    factorial *= n as f64;
                }
                b / factorial
            })
            .collect();
        scaled.iter().rev().fold(0.0, |acc, c| acc * delta + c)
    }

    /// `β⁽ᵐ⁾` at detuning `delta`, `m = 0..=max_order`.
    pub fn derivatives(&self, delta: f64, max_order: usize) -> Vec<f64> {
        (0..=max_order)
            .map(|m| {
                let mut term = 1.0;
                let mut sum = 0.0;
                for (j, b) in self.beta.iter().skip(m).enumerate() {
                    if j > 0 {
                        term *= delta / j as f64;
                    }
                    sum += b * term;
                }
                sum
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum MaterialModel {
    Taylor(TaylorCoefficients),
    Sellmeier(Sellmeier),
}

/// A slab of material with thickness `d` in mm.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DispersiveMedium {
    name: String,
    thickness_mm: f64,
    model: MaterialModel,
}

impl DispersiveMedium {
    pub fn new(name: impl Into<String>, thickness_mm: f64, model: MaterialModel) -> Result<Self> {
        let name = name.into();
        if !(thickness_mm >= 0.0) || !thickness_mm.is_finite() {
            return Err(Error::Parameter(format!(
                "{name}: thickness must be non-negative, got {thickness_mm} mm"
            )));
        }
        match &model {
            MaterialModel::Taylor(t) => t.validate()?,
            MaterialModel::Sellmeier(s) => s.validate()?,
        }
        Ok(Self {
            name,
            thickness_mm,
            model,
        })
    }

    /// Taylor medium `β⁽ⁿ⁾ = beta[n]` about `reference`.
    pub fn taylor(name: impl Into<String>, thickness_mm: f64, reference: f64, beta: Vec<f64>) -> Result<Self> {
        Self::new(
            name,
            thickness_mm,
            MaterialModel::Taylor(TaylorCoefficients { reference, beta }),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn thickness_mm(&self) -> f64 {
        self.thickness_mm
    }

    pub fn model(&self) -> &MaterialModel {
        &self.model
    }

    /// Same material, different thickness.
    pub fn with_thickness(&self, thickness_mm: f64) -> Result<Self> {
        Self::new(self.name.clone(), thickness_mm, self.model.clone())
    }

    /// Wavevector `β(ω)` in rad/mm.
    pub fn wavevector(&self, omega: f64) -> Result<f64> {
        match &self.model {
            MaterialModel::Taylor(t) => Ok(t.eval(omega - t.reference)),
            MaterialModel::Sellmeier(s) => Ok(s.index_at(&self.name, omega)? * omega / C_MM_PER_FS),
        }
    }

    /// Accumulated phase `d·β(ω_ref + Ω)` in rad.
    pub fn phase(&self, omega: f64, reference: f64) -> Result<f64> {
        let beta = match &self.model {
            // (ω_ref − ω_t) + Ω keeps Ω exact when the references coincide
            MaterialModel::Taylor(t) => t.eval((reference - t.reference) + omega),
            MaterialModel::Sellmeier(s) => {
                let w = reference + omega;
                s.index_at(&self.name, w)? * w / C_MM_PER_FS
            }
        };
        Ok(self.thickness_mm * beta)
    }

    /// `β⁽ᵐ⁾(ω₀)` for `m = 0..=max_order`, in fsᵐ/mm.
    pub fn derivatives_at(&self, omega0: f64, max_order: usize) -> Result<Vec<f64>> {
        if max_order > MAX_TAYLOR_ORDER {
            return Err(Error::Parameter(format!(
                "expansion order must be at most {MAX_TAYLOR_ORDER}, got {max_order}"
            )));
        }
        match &self.model {
            MaterialModel::Taylor(t) => Ok(t.derivatives(omega0 - t.reference, max_order)),
            MaterialModel::Sellmeier(s) => self.sellmeier_derivatives(s, omega0, max_order),
        }
    }

    // Differentiates n(ω) rather than β(ω) = n(ω)ω/c: n is O(1), so the
    // stencils lose far fewer digits, and β⁽ᵐ⁾ = (ω n⁽ᵐ⁾ + m n⁽ᵐ⁻¹⁾)/c.
    fn sellmeier_derivatives(&self, s: &Sellmeier, omega0: f64, max_order: usize) -> Result<Vec<f64>> {
        let omega_max = 2.0 * std::f64::consts::PI * C_NM_PER_FS / s.range_nm.0;
        let omega_min = 2.0 * std::f64::consts::PI * C_NM_PER_FS / s.range_nm.1;
        let margin = (omega0 - omega_min).min(omega_max - omega0);
        s.index_at(&self.name, omega0)?;
        let index = |w: f64| s.index_at(&self.name, w);
        let mut n_derivs = Vec::with_capacity(max_order + 1);
        for order in 0..=max_order {
            let reach = (order as f64 / 2.0).max(0.5);
            let h0 = (DERIVATIVE_STEP * (1.0 + order as f64 / 2.0)).min(0.9 * margin / reach);
            if !(h0 > 1e-4) {
                return Err(Error::Parameter(format!(
                    "{}: {:.1} nm is too close to the edge of the validity range [{}, {}] nm for differentiation",
                    self.name,
                    crate::units::wavelength_nm_from_angular_frequency(omega0),
                    s.range_nm.0,
                    s.range_nm.1
                )));
            }
            let d = richardson_derivative(index, omega0, order, h0).map_err(|e| match e {
                Error::Convergence(msg) => Error::Convergence(format!("{}: {msg}", self.name)),
                other => other,
            })?;
            n_derivs.push(d);
        }
        Ok((0..=max_order)
            .map(|m| {
                let lower = if m > 0 { m as f64 * n_derivs[m - 1] } else { 0.0 };
                (omega0 * n_derivs[m] + lower) / C_MM_PER_FS
            })
            .collect())
    }

    /// Taylor expansion of this medium about the vacuum wavelength `lambda0_nm`.
    pub fn taylor_from_sellmeier(&self, lambda0_nm: f64, max_order: usize) -> Result<Self> {
        if !matches!(self.model, MaterialModel::Sellmeier(_)) {
            return Err(Error::Parameter(format!(
                "{} is not a Sellmeier medium",
                self.name
            )));
        }
        let omega0 = angular_frequency_from_wavelength_nm(lambda0_nm);
        let beta = self.derivatives_at(omega0, max_order)?;
        Self::taylor(self.name.clone(), self.thickness_mm, omega0, beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_gvd_phase_by_substitution() {
        let m = DispersiveMedium::taylor("gvd", 5.0, 2.33, vec![0.0, 0.0, 1000.0]).unwrap();
        assert!((m.phase(0.1, 2.33).unwrap() - 25.0).abs() < 1e-12);
    }

    #[test]
    fn taylor_derivatives_shift_the_expansion_point() {
        let t = TaylorCoefficients {
            reference: 0.0,
            beta: vec![1.0, 2.0, 3.0, 4.0],
        };
        // β = 1 + 2x + 1.5x² + (2/3)x³
        let x = 0.3;
        let d = t.derivatives(x, 3);
        assert!((d[0] - (1.0 + 2.0 * x + 1.5 * x * x + 2.0 / 3.0 * x.powi(3))).abs() < 1e-14);
        assert!((d[1] - (2.0 + 3.0 * x + 2.0 * x * x)).abs() < 1e-14);
        assert!((d[2] - (3.0 + 4.0 * x)).abs() < 1e-14);
        assert!((d[3] - 4.0).abs() < 1e-14);
    }

    #[test]
    fn invalid_media() {
        assert!(DispersiveMedium::taylor("x", -1.0, 2.3, vec![1.0]).is_err());
        assert!(DispersiveMedium::taylor("x", 1.0, 2.3, vec![]).is_err());
        assert!(DispersiveMedium::taylor("x", 1.0, 2.3, vec![0.0; 7]).is_err());
    }

    #[test]
    fn taylor_from_taylor_is_rejected() {
        let m = DispersiveMedium::taylor("x", 1.0, 2.3, vec![0.0, 0.0, 1.0]).unwrap();
        assert!(matches!(m.taylor_from_sellmeier(808.0, 3), Err(Error::Parameter(_))));
    }
}
