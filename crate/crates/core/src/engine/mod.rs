//! Interferogram evaluation.
//!
//! Every integral here has the form `∫ w(Ω) e^{iψ(Ω)} e^{−iΩt} dΩ` where the
//! media phase ψ does not depend on the delay, so one zero-padded FFT over
//! the frequency grid serves all delays. Values at the requested delays are
//! read off the transform by cubic interpolation.

mod interferogram;
mod lci;
mod options;
mod pump;
mod tpi;
mod transform;

pub use interferogram::{Carrier, DelayGrid, Interferogram, InterferogramKind};
pub use lci::lci;
pub use options::EngineOptions;
pub use pump::{tpi, tpi_finite_pump, PumpModel};
pub use tpi::tpi_mono;
