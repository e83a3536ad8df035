use serde::Serialize;

use super::derivative::richardson_derivative;
use super::medium::DispersiveMedium;
use crate::units::angular_frequency_from_wavelength_nm;
use crate::Result;

/// Ordered list of media traversed by one arm. Phases add.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MediumStack {
    media: Vec<DispersiveMedium>,
}

/// Total second- and third-order dispersion of a stack.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GvdBudget {
    /// `Σ d·β⁽²⁾` in fs².
    pub gdd_fs2: f64,
    /// `Σ d·β⁽³⁾` in fs³.
    pub tod_fs3: f64,
}

impl MediumStack {
    pub fn new(media: Vec<DispersiveMedium>) -> Self {
        Self { media }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn push(&mut self, medium: DispersiveMedium) {
        self.media.push(medium);
    }

    pub fn with(mut self, medium: DispersiveMedium) -> Self {
        self.media.push(medium);
        self
    }

    pub fn media(&self) -> &[DispersiveMedium] {
        &self.media
    }

    pub fn is_empty(&self) -> bool {
        self.media.is_empty()
    }

    /// `Σ_m d_m β_m(ω_ref + Ω)` in rad.
    pub fn phase(&self, omega: f64, reference: f64) -> Result<f64> {
        self.media
            .iter()
            .try_fold(0.0, |acc, m| Ok(acc + m.phase(omega, reference)?))
    }

    pub fn phases(&self, omegas: &[f64], reference: f64) -> Result<Vec<f64>> {
        omegas.iter().map(|w| self.phase(*w, reference)).collect()
    }

    /// `dφ/dΩ` at `Ω = 0`: the group delay of the stack in fs.
    pub fn group_delay(&self, reference: f64) -> Result<f64> {
        if self.media.is_empty() {
            return Ok(0.0);
        }
        richardson_derivative(|w| self.phase(w, reference), 0.0, 1, 0.02)
    }

    pub fn gvd_budget(&self, lambda0_nm: f64) -> Result<GvdBudget> {
        let omega0 = angular_frequency_from_wavelength_nm(lambda0_nm);
        let mut budget = GvdBudget {
            gdd_fs2: 0.0,
            tod_fs3: 0.0,
        };
        for medium in &self.media {
            let d = medium.derivatives_at(omega0, 3)?;
            budget.gdd_fs2 += medium.thickness_mm() * d[2];
            budget.tod_fs3 += medium.thickness_mm() * d[3];
        }
        Ok(budget)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::MaterialLibrary;

    #[test]
    fn empty_stack_has_no_phase() {
        let s = MediumStack::empty();
        for w in [-0.3, 0.0, 0.17] {
            assert_eq!(s.phase(w, 2.33).unwrap(), 0.0);
        }
        let b = s.gvd_budget(808.0).unwrap();
        assert_eq!((b.gdd_fs2, b.tod_fs3), (0.0, 0.0));
        assert_eq!(s.group_delay(2.33).unwrap(), 0.0);
    }

    #[test]
    fn group_delay_of_a_linear_medium() {
        let s = MediumStack::empty()
            .with(DispersiveMedium::taylor("gd", 2.0, 2.33, vec![0.0, 5.0, 100.0]).unwrap());
        assert!((s.group_delay(2.33).unwrap() - 10.0).abs() < 1e-9);
    }

    #[test]
    fn out_of_range_error_names_the_medium() {
        let lib = MaterialLibrary::builtin();
        let s = MediumStack::empty().with(lib.medium("znse", 5.0).unwrap());
        // ZnSe data starts at 540 nm; 2.33 + 1.5 rad/fs is ~490 nm
        let err = s.phase(1.5, 2.33).unwrap_err();
        assert!(err.to_string().contains("znse"), "{err}");
    }
}
