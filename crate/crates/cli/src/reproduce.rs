//! Reproduction presets: fixed scenario sets whose results are compared with
//! the bands in `presets/targets.toml`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use clap::ValueEnum;
use homsim::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};
use crate::output::{write_file, write_outcome};
use crate::scenario::{evaluate, Outcome, Scenario, SpectrumSpec};

const TARGETS: &str = include_str!("../presets/targets.toml");

/// Deviation from the baseline counted as a visible side oscillation.
const OSCILLATION_THRESHOLD: f64 = 0.01;

/// Nominal group-delay dispersion of the highly dispersive plate, fs².
const NOMINAL_PLATE_GDD: f64 = 5000.0;
/// Resolution the plate comparison starts from, µm.
const NOMINAL_RESOLUTION: f64 = 3.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Enhancement for Gaussian and trapezoidal spectra, no media.
    #[value(name = "fig2")]
    Fig2,
    /// 25 mm of water: broadened LCI, unchanged TPI.
    #[value(name = "fig3")]
    Fig3,
    /// Residual GVD with a narrow and a broad pump line.
    #[value(name = "fig3_2")]
    Fig3_2,
    /// 5 mm ZnSe: third-order asymmetry.
    #[value(name = "fig4")]
    Fig4,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
            Preset::Fig3_2 => "fig3_2",
            Preset::Fig4 => "fig4",
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TargetFile {
    version: u32,
    target: Vec<Target>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Target {
    pub preset: String,
    pub key: String,
    pub quantity: String,
    #[serde(default)]
    pub unit: Option<String>,
    #[serde(default)]
    pub value: Option<f64>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub relative: Option<f64>,
    #[serde(default)]
    pub min: Option<f64>,
    #[serde(default)]
    pub max: Option<f64>,
    pub source: String,
}

impl Target {
    pub fn passes(&self, x: f64) -> bool {
        let mut ok = x.is_finite();
        if let (Some(v), Some(t)) = (self.value, self.tolerance) {
            ok &= (x - v).abs() <= t;
        }
        if let (Some(v), Some(r)) = (self.value, self.relative) {
            ok &= (x - v).abs() <= r * v.abs();
        }
        if let Some(m) = self.min {
            ok &= x >= m;
        }
        if let Some(m) = self.max {
            ok &= x <= m;
        }
        ok
    }

    pub fn band(&self) -> String {
        let mut parts = Vec::new();
        if let (Some(v), Some(t)) = (self.value, self.tolerance) {
            parts.push(format!("{v} ± {t}"));
        }
        if let (Some(v), Some(r)) = (self.value, self.relative) {
            parts.push(format!("{v} ± {}%", 100.0 * r));
        }
        match (self.min, self.max) {
            (Some(a), Some(b)) => parts.push(format!("[{a}, {b}]")),
            (Some(a), None) => parts.push(format!("≥ {a}")),
            (None, Some(b)) => parts.push(format!("≤ {b}")),
            (None, None) => {}
        }
        parts.join(", ")
    }

    fn check(&self) -> std::result::Result<(), String> {
        let banded = (self.value.is_some() && (self.tolerance.is_some() || self.relative.is_some()))
            || self.min.is_some()
            || self.max.is_some();
        if banded {
            Ok(())
        } else {
            Err(format!("target '{}' has no pass band", self.key))
        }
    }
}

pub struct Targets {
    pub version: u32,
    rows: Vec<Target>,
}

impl Targets {
    pub fn load() -> CliResult<Self> {
        Self::parse(TARGETS)
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let file: TargetFile =
            toml::from_str(text).map_err(|e| CliError::validation(format!("targets table: {e}")))?;
        for t in &file.target {
            t.check().map_err(|e| CliError::validation(format!("targets table: {e}")))?;
        }
        Ok(Self {
            version: file.version,
            rows: file.target,
        })
    }

    pub fn for_preset(&self, preset: Preset) -> Vec<&Target> {
        self.rows.iter().filter(|t| t.preset == preset.name()).collect()
    }

    fn value(&self, preset: Preset, key: &str) -> CliResult<f64> {
        self.for_preset(preset)
            .into_iter()
            .find(|t| t.key == key)
            .and_then(|t| t.value)
            .ok_or_else(|| CliError::validation(format!("targets table: no value for {}.{key}", preset.name())))
    }
}

#[derive(Debug, Serialize)]
pub struct Row {
    pub key: String,
    pub quantity: String,
    pub unit: Option<String>,
    pub value: f64,
    pub target: String,
    pub pass: bool,
    pub source: String,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub preset: String,
    pub targets_version: u32,
    pub rows: Vec<Row>,
}

impl Summary {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let width = self.rows.iter().map(|r| label(r).chars().count()).max().unwrap_or(0);
        for r in &self.rows {
            let name = label(r);
            let pad = width - name.chars().count();
            writeln!(
                out,
                "{name}{:pad$}  {:>12}  {:<18}  {:<4}  {}",
                "",
                format_value(r.value),
                r.target,
                if r.pass { "pass" } else { "FAIL" },
                r.source,
            )
            .expect("writing to a String cannot fail");
        }
        out
    }
}

fn label(r: &Row) -> String {
    match &r.unit {
        Some(u) => format!("{} ({u})", r.quantity),
        None => r.quantity.clone(),
    }
}

fn format_value(v: f64) -> String {
    if v.abs() >= 1000.0 {
        format!("{v:.0}")
    } else if v.abs() >= 100.0 {
        format!("{v:.1}")
    } else {
        format!("{v:.3}")
    }
}

fn preset_scenario(name: &str) -> CliResult<Scenario> {
    let text = match name {
        "fig2_gaussian_lci" => include_str!("../presets/fig2_gaussian_lci.json"),
        "fig2_gaussian_tpi" => include_str!("../presets/fig2_gaussian_tpi.json"),
        "fig2_trapezoid_lci" => include_str!("../presets/fig2_trapezoid_lci.json"),
        "fig2_trapezoid_tpi" => include_str!("../presets/fig2_trapezoid_tpi.json"),
        "fig3_water_lci" => include_str!("../presets/fig3_water_lci.json"),
        "fig3_water_tpi" => include_str!("../presets/fig3_water_tpi.json"),
        "fig3_2_narrow_pump" => include_str!("../presets/fig3_2_narrow_pump.json"),
        "fig3_2_broad_pump" => include_str!("../presets/fig3_2_broad_pump.json"),
        "fig4_znse_tpi" => include_str!("../presets/fig4_znse_tpi.json"),
        other => unreachable!("no preset scenario {other}"),
    };
    let value = serde_json::from_str(text).map_err(|e| CliError::validation(format!("{name}: {e}")))?;
    Scenario::from_value(value).map_err(|e| e.context(name))
}

struct Runner<'a> {
    out_dir: &'a Path,
    values: BTreeMap<&'static str, f64>,
}

impl Runner<'_> {
    fn run(&self, scenario: &Scenario) -> CliResult<Outcome> {
        let outcome = evaluate(&scenario.prepare(Path::new("."))?)?;
        write_outcome(scenario, &outcome, self.out_dir)?;
        Ok(outcome)
    }

    fn set(&mut self, key: &'static str, value: f64) {
        self.values.insert(key, value);
    }
}

fn fig2(r: &mut Runner, targets: &Targets) -> CliResult<()> {
    let lci_g = r.run(&preset_scenario("fig2_gaussian_lci")?)?.report.fwhm;
    let tpi_g = r.run(&preset_scenario("fig2_gaussian_tpi")?)?.report.fwhm;
    r.set("gaussian_lci_fwhm", lci_g);
    r.set("gaussian_tpi_fwhm", tpi_g);
    r.set("gaussian_enhancement", enhancement_factor(lci_g, tpi_g)?);

    // plateau chosen so the trapezoid's theoretical enhancement hits the target
    let mut lci_t = preset_scenario("fig2_trapezoid_lci")?;
    let mut tpi_t = preset_scenario("fig2_trapezoid_tpi")?;
    let prepared = lci_t.prepare(Path::new("."))?;
    let omega0 = prepared.spectrum.center_frequency();
    let base = match &lci_t.spectrum {
        SpectrumSpec::Trapezoidal { base_nm: Some(b), center_nm, .. } => {
            homsim::units::bandwidth_rad_per_fs(*center_nm, *b)
        }
        _ => unreachable!("trapezoid preset gives its base in nm"),
    };
    let target = targets.value(Preset::Fig2, "trapezoid_theory_enhancement")?;
    let (plateau, theory) = trapezoid_for_enhancement(omega0, base, target, GridSpec::default())?;
    for s in [&mut lci_t, &mut tpi_t] {
        if let SpectrumSpec::Trapezoidal { plateau_rad_per_fs, plateau_nm, .. } = &mut s.spectrum {
            *plateau_rad_per_fs = Some(plateau);
            *plateau_nm = None;
        }
    }
    let lci_w = r.run(&lci_t)?.report.fwhm;
    let tpi_w = r.run(&tpi_t)?.report.fwhm;
    r.set("trapezoid_theory_enhancement", theory);
    r.set("trapezoid_enhancement", enhancement_factor(lci_w, tpi_w)?);
    Ok(())
}

fn fig3(r: &mut Runner) -> CliResult<()> {
    let mut empty_lci = preset_scenario("fig2_gaussian_lci")?;
    empty_lci.label = "fig3_empty_lci".into();
    let mut empty_tpi = preset_scenario("fig2_gaussian_tpi")?;
    empty_tpi.label = "fig3_empty_tpi".into();
    let water_lci = preset_scenario("fig3_water_lci")?;
    let lci0 = r.run(&empty_lci)?.report.fwhm;
    let lci1 = r.run(&water_lci)?.report.fwhm;
    let gdd = water_lci.prepare(Path::new("."))?.stack.gvd_budget(808.0)?.gdd_fs2;
    let tpi0 = r.run(&empty_tpi)?.report.fwhm;
    let tpi1 = r.run(&preset_scenario("fig3_water_tpi")?)?.report.fwhm;
    r.set("empty_lci_fwhm", lci0);
    r.set("water_lci_fwhm", lci1);
    r.set("water_lci_closed_form", lci_degraded_closed_form(lci0, gdd)?);
    r.set("empty_tpi_fwhm", tpi0);
    r.set("water_tpi_fwhm", tpi1);
    r.set("water_tpi_change", 100.0 * (tpi1 - tpi0).abs() / tpi0);
    Ok(())
}

fn fig3_2(r: &mut Runner, targets: &Targets) -> CliResult<()> {
    let lib = MaterialLibrary::builtin();
    let stack = MediumStack::empty()
        .with(lib.medium("bk7", 1.0)?)
        .with(lib.medium("water", 25.0)?)
        .with(lib.medium("bk7", 1.0)?)
        .with(lib.medium("bk7", 20.0)?);
    r.set("stack_gdd", stack.gvd_budget(808.0)?.gdd_fs2);

    let narrow = preset_scenario("fig3_2_narrow_pump")?;
    let prepared = narrow.prepare(Path::new("."))?;
    let beta2_d = prepared.stack.gvd_budget(808.0)?.gdd_fs2;
    let signal_fwhm = prepared
        .spectrum
        .density_fwhm()
        .ok_or_else(|| CliError::numerical("spectrum has no measurable FWHM"))?;
    let factor = targets.value(Preset::Fig3_2, "pump_degradation")?;
    let pump_fwhm = pump_linewidth_for_degradation(factor, signal_fwhm, beta2_d)?;
    let mut broad = preset_scenario("fig3_2_broad_pump")?;
    if let crate::scenario::PumpSpec::GaussianLine { fwhm_rad_per_fs, .. } = &mut broad.pump {
        *fwhm_rad_per_fs = pump_fwhm;
    }
    let w0 = r.run(&narrow)?.report.fwhm;
    let w1 = r.run(&broad)?.report.fwhm;
    r.set("narrow_tpi_fwhm", w0);
    r.set("broad_tpi_fwhm", w1);
    r.set("pump_degradation", w1 / w0);
    Ok(())
}

fn fig4(r: &mut Runner) -> CliResult<()> {
    let scenario = preset_scenario("fig4_znse_tpi")?;
    let prepared = scenario.prepare(Path::new("."))?;
    let budget = prepared.stack.gvd_budget(808.0)?;
    let outcome = r.run(&scenario)?;
    let osc = side_oscillations(&outcome.interferogram, OSCILLATION_THRESHOLD)?;

    // same plate as a Taylor series with the third-order term reversed
    let taylor = prepared.stack.media()[0].taylor_from_sellmeier(808.0, 5)?;
    let MaterialModel::Taylor(t) = taylor.model() else {
        unreachable!("taylor_from_sellmeier returns a Taylor medium");
    };
    let mut beta = t.beta.clone();
    beta[3] = -beta[3];
    let mut flipped = scenario.clone();
    flipped.label = "fig4_znse_tpi_tod_negated".into();
    flipped.stack = vec![crate::scenario::LayerSpec {
        name: Some("znse_tod_negated".into()),
        material: None,
        taylor: Some(crate::scenario::TaylorSpec { reference_nm: Some(808.0), beta }),
        thickness_mm: taylor.thickness_mm(),
    }];
    let flipped_asym = r.run(&flipped)?.report.asymmetry;

    let lci_w = lci_degraded_closed_form(NOMINAL_RESOLUTION, NOMINAL_PLATE_GDD)?;
    r.set("znse_gdd", budget.gdd_fs2);
    r.set("znse_tod", budget.tod_fs3);
    r.set("lci_closed_form", lci_w);
    r.set("znse_tpi_fwhm", outcome.report.fwhm);
    r.set("improvement", lci_w / outcome.report.fwhm);
    r.set("asymmetry", outcome.report.asymmetry.abs());
    r.set("asymmetry_flip", flipped_asym / outcome.report.asymmetry);
    r.set("quiet_side_extrema", osc.left.min(osc.right) as f64);
    r.set("oscillating_side_extrema", osc.left.max(osc.right) as f64);
    Ok(())
}

/// Runs a preset, writes its files and summary, and compares against the
/// targets table.
pub fn reproduce(preset: Preset, out_dir: &Path) -> CliResult<Summary> {
    let targets = Targets::load()?;
    let mut runner = Runner {
        out_dir,
        values: BTreeMap::new(),
    };
    match preset {
        Preset::Fig2 => fig2(&mut runner, &targets),
        Preset::Fig3 => fig3(&mut runner),
        Preset::Fig3_2 => fig3_2(&mut runner, &targets),
        Preset::Fig4 => fig4(&mut runner),
    }
    .map_err(|e| e.context(format!("preset {}", preset.name())))?;

    let mut rows = Vec::new();
    for t in targets.for_preset(preset) {
        let value = *runner.values.get(t.key.as_str()).ok_or_else(|| {
            CliError::validation(format!("targets table: preset {} computes no '{}'", preset.name(), t.key))
        })?;
        rows.push(Row {
            key: t.key.clone(),
            quantity: t.quantity.clone(),
            unit: t.unit.clone(),
            value,
            target: t.band(),
            pass: t.passes(value),
            source: t.source.clone(),
        });
    }
    let summary = Summary {
        preset: preset.name().into(),
        targets_version: targets.version,
        rows,
    };
    let mut json = serde_json::to_string_pretty(&summary).map_err(|e| CliError::numerical(e.to_string()))?;
    json.push('\n');
    write_file(&out_dir.join(format!("{}.summary.json", preset.name())), json.as_bytes())?;
    Ok(summary)
}
