//! Dispersive media as wavevector models `β(ω)` with a thickness.
//!
//! A medium contributes the phase `d·β(ω_ref + Ω)`; the engines apply the
//! pass factor (2 for a double pass) themselves.

mod derivative;
mod materials;
mod medium;
mod sellmeier;
mod stack;

pub use derivative::richardson_derivative;
pub use materials::{MaterialFile, MaterialLibrary};
pub use medium::{DispersiveMedium, MaterialModel, TaylorCoefficients, MAX_TAYLOR_ORDER};
pub use sellmeier::Sellmeier;
pub use stack::{GvdBudget, MediumStack};
