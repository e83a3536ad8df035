//! Scenario files: strict JSON describing one interferogram computation.

use std::fs;
use std::path::{Path, PathBuf};

use homsim::prelude::*;
use homsim::spectra::read_spectrum_csv;
use homsim::units::{angular_frequency_from_wavelength_nm, bandwidth_rad_per_fs};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;
pub const MIN_DELAY_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Lci,
    Tpi,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub label: String,
    pub mode: Mode,
    pub spectrum: SpectrumSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridConfig>,
    #[serde(default)]
    pub stack: Vec<LayerSpec>,
    #[serde(default)]
    pub pump: PumpSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delays: Option<DelayGrid>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub carrier: Option<Carrier>,
    #[serde(default = "default_method")]
    pub fwhm_method: FwhmMethod,
    #[serde(default)]
    pub engine: EngineConfig,
    /// Extra material files, relative to the scenario file.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub materials: Vec<PathBuf>,
    #[serde(default)]
    pub output: OutputSpec,
}

fn default_method() -> FwhmMethod {
    FwhmMethod::GaussianFit
}

/// Widths may be given in nm around the center or directly in rad/fs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumSpec {
    Gaussian {
        center_nm: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fwhm_nm: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fwhm_rad_per_fs: Option<f64>,
    },
    Rectangular {
        center_nm: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width_nm: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width_rad_per_fs: Option<f64>,
    },
    Trapezoidal {
        center_nm: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        plateau_nm: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        plateau_rad_per_fs: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_nm: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base_rad_per_fs: Option<f64>,
    },
    /// CSV with header `omega_rad_per_fs,density`, Ω relative to the center.
    Tabulated {
        center_nm: f64,
        csv: PathBuf,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<usize>,
    },
}

impl SpectrumSpec {
    pub fn center_nm(&self) -> f64 {
        match self {
            SpectrumSpec::Gaussian { center_nm, .. }
            | SpectrumSpec::Rectangular { center_nm, .. }
            | SpectrumSpec::Trapezoidal { center_nm, .. }
            | SpectrumSpec::Tabulated { center_nm, .. } => *center_nm,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub span_factor: Option<f64>,
}

/// A built-in or user-supplied material, or explicit Taylor coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayerSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub material: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub taylor: Option<TaylorSpec>,
    pub thickness_mm: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaylorSpec {
    /// Expansion wavelength; the spectrum center when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_nm: Option<f64>,
    /// `β⁽ⁿ⁾` in fsⁿ/mm, starting at n = 0.
    pub beta: Vec<f64>,
}

/// Pump wavelength defaults to half the spectrum center wavelength.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PumpSpec {
    Monochromatic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        wavelength_nm: Option<f64>,
    },
    /// A zero linewidth falls back to the monochromatic evaluation.
    GaussianLine {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        wavelength_nm: Option<f64>,
        fwhm_rad_per_fs: f64,
        #[serde(default = "default_pump_samples")]
        samples: usize,
    },
}

fn default_pump_samples() -> usize {
    65
}

impl Default for PumpSpec {
    fn default() -> Self {
        PumpSpec::Monochromatic { wavelength_nm: None }
    }
}

/// Overrides of the engine defaults. Scenarios default to group-delay
/// compensation, a double pass for LCI and a single pass for TPI.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass_factor: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compensate_group_delay: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub padding: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interference_scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump_span_sigmas: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pump_tolerance: Option<f64>,
}

/// Output paths, relative to the output directory.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

/// A scenario with every reference resolved, ready to evaluate.
pub struct Prepared {
    pub label: String,
    pub mode: Mode,
    pub spectrum: SpectralAmplitude,
    pub stack: MediumStack,
    pub pump: PumpModel,
    pub delays: Vec<f64>,
    pub carrier: Carrier,
    pub method: FwhmMethod,
    pub options: EngineOptions,
    pub metadata: serde_json::Value,
}

fn one_width(field: &str, center_nm: f64, nm: Option<f64>, rad: Option<f64>) -> CliResult<f64> {
    match (nm, rad) {
        (Some(w), None) => {
            if !(w > 0.0) || w >= 2.0 * center_nm {
                return Err(CliError::validation(format!(
                    "spectrum.{field}_nm must be positive and below twice the center, got {w}"
                )));
            }
            Ok(bandwidth_rad_per_fs(center_nm, w))
        }
        (None, Some(w)) => Ok(w),
        _ => Err(CliError::validation(format!(
            "spectrum: give exactly one of {field}_nm and {field}_rad_per_fs"
        ))),
    }
}

impl Scenario {
    pub fn from_path(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
        Self::from_value(value).map_err(|e| e.context(path.display()))
    }

    pub fn from_value(value: serde_json::Value) -> CliResult<Self> {
        let scenario: Scenario =
            serde_json::from_value(value).map_err(|e| CliError::validation(e.to_string()))?;
        scenario.validate()?;
        Ok(scenario)
    }

    fn validate(&self) -> CliResult<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::validation(format!(
                "schema_version: unsupported version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let label_ok = !self.label.is_empty()
            && self
                .label
                .chars()
                .all(|c| c.is_ascii_alphanumeric() || "_-.".contains(c));
        if !label_ok {
            return Err(CliError::validation(format!(
                "label: '{}' must be non-empty and use only letters, digits, '_', '-' or '.'",
                self.label
            )));
        }
        if let Some(d) = &self.delays {
            if d.points < MIN_DELAY_POINTS {
                return Err(CliError::validation(format!(
                    "delays.points must be at least {MIN_DELAY_POINTS}, got {}",
                    d.points
                )));
            }
            d.validate().map_err(|e| CliError::from(e).context("delays"))?;
        }
        if self.mode == Mode::Lci && !matches!(self.pump, PumpSpec::Monochromatic { .. }) {
            return Err(CliError::validation(
                "pump: a pump linewidth only applies to mode \"tpi\"",
            ));
        }
        if self.mode == Mode::Tpi && self.carrier == Some(Carrier::WithFringes) {
            return Err(CliError::validation(
                "carrier: fringes only apply to mode \"lci\"",
            ));
        }
        Ok(())
    }

    pub fn prepare(&self, base_dir: &Path) -> CliResult<Prepared> {
        self.prepare_inner(base_dir)
            .map_err(|e| e.context(format!("scenario '{}'", self.label)))
    }

    fn prepare_inner(&self, base_dir: &Path) -> CliResult<Prepared> {
        let center_nm = self.spectrum.center_nm();
        if !(center_nm > 0.0) {
            return Err(CliError::validation(format!(
                "spectrum.center_nm must be positive, got {center_nm}"
            )));
        }
        let omega0 = angular_frequency_from_wavelength_nm(center_nm);
        let mut grid = GridSpec::default();
        if let Some(g) = &self.grid {
            grid.n_points = g.n_points.unwrap_or(grid.n_points);
            grid.span_factor = g.span_factor.unwrap_or(grid.span_factor);
        }
        let spectrum = self.build_spectrum(omega0, grid, base_dir).map_err(|e| e.context("spectrum"))?;

        let mut library = MaterialLibrary::builtin();
        for path in &self.materials {
            library
                .load_json(base_dir.join(path))
                .map_err(|e| CliError::from(e).context(format!("materials: {}", path.display())))?;
        }
        let mut stack = MediumStack::empty();
        for (i, layer) in self.stack.iter().enumerate() {
            let medium = build_layer(layer, &library, omega0).map_err(|e| e.context(format!("stack[{i}]")))?;
            stack.push(medium);
        }

        let pump = match &self.pump {
            PumpSpec::Monochromatic { wavelength_nm } => PumpModel::Monochromatic {
                frequency: pump_frequency(*wavelength_nm, omega0)?,
            },
            PumpSpec::GaussianLine { wavelength_nm, fwhm_rad_per_fs, samples } => {
                let frequency = pump_frequency(*wavelength_nm, omega0)?;
                if *fwhm_rad_per_fs == 0.0 {
                    PumpModel::Monochromatic { frequency }
                } else {
                    PumpModel::GaussianLine {
                        frequency,
                        fwhm: *fwhm_rad_per_fs,
                        samples: *samples,
                    }
                }
            }
        };

        let delays = self.delays.unwrap_or_else(|| default_delays(self.mode, stack.is_empty()));
        let e = &self.engine;
        let defaults = EngineOptions::default();
        let options = EngineOptions {
            padding: e.padding.unwrap_or(defaults.padding),
            pass_factor: e.pass_factor.unwrap_or(match self.mode {
                Mode::Lci => 2.0,
                Mode::Tpi => 1.0,
            }),
            compensate_group_delay: e.compensate_group_delay.unwrap_or(true),
            interference_scale: e.interference_scale.unwrap_or(defaults.interference_scale),
            pump_span_sigmas: e.pump_span_sigmas.unwrap_or(defaults.pump_span_sigmas),
            pump_tolerance: e.pump_tolerance.unwrap_or(defaults.pump_tolerance),
        };
        let layers: Vec<serde_json::Value> = stack
            .media()
            .iter()
            .map(|m| match m.model() {
                MaterialModel::Sellmeier(sm) => {
                    json!({"name": m.name(), "thickness_mm": m.thickness_mm(), "source": sm.source})
                }
                MaterialModel::Taylor(_) => json!({"name": m.name(), "thickness_mm": m.thickness_mm()}),
            })
            .collect();
        let config = serde_json::to_value(self).map_err(|e| CliError::numerical(e.to_string()))?;
        Ok(Prepared {
            label: self.label.clone(),
            mode: self.mode,
            spectrum,
            stack,
            pump,
            delays: delays.values(),
            carrier: self.carrier.unwrap_or(Carrier::EnvelopeOnly),
            method: self.fwhm_method,
            options,
            metadata: json!({"scenario": self.label, "stack": layers, "config": config}),
        })
    }

    fn build_spectrum(&self, omega0: f64, grid: GridSpec, base_dir: &Path) -> CliResult<SpectralAmplitude> {
        let spectrum = match &self.spectrum {
            SpectrumSpec::Gaussian { center_nm, fwhm_nm, fwhm_rad_per_fs } => {
                gaussian_spectrum(omega0, one_width("fwhm", *center_nm, *fwhm_nm, *fwhm_rad_per_fs)?, grid)?
            }
            SpectrumSpec::Rectangular { center_nm, width_nm, width_rad_per_fs } => {
                rectangular_spectrum(omega0, one_width("width", *center_nm, *width_nm, *width_rad_per_fs)?, grid)?
            }
            SpectrumSpec::Trapezoidal {
                center_nm,
                plateau_nm,
                plateau_rad_per_fs,
                base_nm,
                base_rad_per_fs,
            } => {
                let plateau = if *plateau_nm == Some(0.0) {
                    0.0
                } else {
                    one_width("plateau", *center_nm, *plateau_nm, *plateau_rad_per_fs)?
                };
                let base = one_width("base", *center_nm, *base_nm, *base_rad_per_fs)?;
                trapezoidal_spectrum(omega0, plateau, base, grid)?
            }
            SpectrumSpec::Tabulated { csv, points, .. } => {
                let samples = read_spectrum_csv(base_dir.join(csv))?;
                tabulated_spectrum(omega0, &samples, points.unwrap_or(grid.n_points))?
            }
        };
        Ok(spectrum)
    }
}

fn pump_frequency(wavelength_nm: Option<f64>, omega0: f64) -> CliResult<f64> {
    match wavelength_nm {
        None => Ok(2.0 * omega0),
        Some(w) if w > 0.0 => Ok(angular_frequency_from_wavelength_nm(w)),
        Some(w) => Err(CliError::validation(format!(
            "pump.wavelength_nm must be positive, got {w}"
        ))),
    }
}

fn build_layer(layer: &LayerSpec, library: &MaterialLibrary, omega0: f64) -> CliResult<DispersiveMedium> {
    match (&layer.material, &layer.taylor) {
        (Some(material), None) => {
            let mut medium = library
                .medium(material, layer.thickness_mm)
                .map_err(|e| CliError::from(e).context("material"))?;
            if let Some(name) = &layer.name {
                medium = DispersiveMedium::new(name.clone(), layer.thickness_mm, medium.model().clone())?;
            }
            Ok(medium)
        }
        (None, Some(t)) => {
            let reference = match t.reference_nm {
                Some(nm) => angular_frequency_from_wavelength_nm(nm),
                None => omega0,
            };
            let name = layer.name.clone().unwrap_or_else(|| "taylor".into());
            Ok(DispersiveMedium::taylor(name, layer.thickness_mm, reference, t.beta.clone())?)
        }
        _ => Err(CliError::validation("give exactly one of material and taylor")),
    }
}

/// TPI: ±20 µm. LCI: ±20 µm without media, ±150 µm with.
pub fn default_delays(mode: Mode, empty_stack: bool) -> DelayGrid {
    match (mode, empty_stack) {
        (Mode::Lci, false) => DelayGrid { center_um: 0.0, span_um: 300.0, points: 2049 },
        _ => DelayGrid { center_um: 0.0, span_um: 40.0, points: 1025 },
    }
}

pub struct Outcome {
    pub interferogram: Interferogram,
    pub report: ResolutionReport,
}

pub fn evaluate(p: &Prepared) -> CliResult<Outcome> {
    evaluate_inner(p).map_err(|e| CliError::from(e).context(format!("scenario '{}'", p.label)))
}

fn evaluate_inner(p: &Prepared) -> homsim::Result<Outcome> {
    let mut interferogram = match p.mode {
        Mode::Lci => lci(&p.spectrum, &p.stack, &p.delays, p.carrier, &p.options)?,
        Mode::Tpi => tpi(&p.spectrum, &p.spectrum, &p.pump, &p.stack, &p.delays, &p.options)?,
    };
    if let (serde_json::Value::Object(meta), serde_json::Value::Object(extra)) =
        (&mut interferogram.metadata, &p.metadata)
    {
        meta.extend(extra.clone());
    }
    let report = match p.method {
        FwhmMethod::GaussianFit => fwhm_gaussian_fit(&interferogram)?,
        FwhmMethod::HalfMax => fwhm_halfmax(&interferogram)?,
    };
    Ok(Outcome { interferogram, report })
}
