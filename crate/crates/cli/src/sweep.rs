//! One-parameter sweeps over a scenario.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::output::write_file;
use crate::scenario::{evaluate, Scenario};

pub const SWEEP_HEADER: &str = "param_value,fwhm_um,visibility,asymmetry";

pub struct SweepAxis {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps).map(|i| self.min + i as f64 * step).collect()
    }
}

/// Numeric leaf at a dotted path; array elements are addressed by index,
/// e.g. `stack.0.taylor.beta.2`.
fn leaf<'a>(root: &'a mut Value, path: &str) -> CliResult<&'a mut Value> {
    let pointer = format!("/{}", path.replace('.', "/"));
    match root.pointer_mut(&pointer) {
        Some(v) if v.is_number() => Ok(v),
        Some(_) => Err(CliError::validation(format!(
            "--param {path}: not a numeric scenario parameter"
        ))),
        None => Err(CliError::validation(format!(
            "--param {path}: no such parameter in the scenario"
        ))),
    }
}

/// Evaluates every step in parallel and writes rows in axis order.
pub fn run_sweep(config: &Path, axis: &SweepAxis, out_dir: &Path) -> CliResult<(PathBuf, String)> {
    if axis.steps == 0 || !axis.min.is_finite() || !axis.max.is_finite() {
        return Err(CliError::validation(
            "sweep needs finite --min and --max and at least one step",
        ));
    }
    let text = std::fs::read_to_string(config)
        .map_err(|e| CliError::validation(format!("{}: {e}", config.display())))?;
    let mut template: Value = serde_json::from_str(&text)
        .map_err(|e| CliError::validation(format!("{}: {e}", config.display())))?;
    leaf(&mut template, &axis.param)?;
    let scenario = Scenario::from_value(template.clone()).map_err(|e| e.context(config.display()))?;
    let base_dir = config.parent().unwrap_or(Path::new(".")).to_path_buf();

    let rows: Vec<CliResult<String>> = axis
        .values()
        .into_par_iter()
        .map(|value| {
            let mut v = template.clone();
            *leaf(&mut v, &axis.param)? = serde_json::json!(value);
            let step = Scenario::from_value(v)?;
            let outcome = evaluate(&step.prepare(&base_dir)?)?;
            let r = &outcome.report;
            Ok(format!(
                "{value:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.fwhm, r.visibility, r.asymmetry
            ))
        })
        .collect();
    let mut csv = String::new();
    writeln!(csv, "{SWEEP_HEADER}").expect("writing to a String cannot fail");
    for (row, value) in rows.into_iter().zip(axis.values()) {
        csv.push_str(&row.map_err(|e| e.context(format!("{} = {value}", axis.param)))?);
    }
    let path = out_dir.join(format!("{}.sweep.csv", scenario.label));
    write_file(&path, csv.as_bytes())?;
    Ok((path, csv))
}
