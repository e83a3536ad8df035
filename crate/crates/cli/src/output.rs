use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};
use crate::scenario::{Outcome, Scenario};

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::validation(format!("--out-dir {}: {e}", dir.display())))
}

pub fn write_file(path: &Path, contents: &[u8]) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .map_err(|e| CliError::validation(format!("{}: {e}", parent.display())))?;
    }
    let mut file = fs::File::create(path)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))?;
    file.write_all(contents)
        .map_err(|e| CliError::validation(format!("{}: {e}", path.display())))
}

/// Writes the interferogram CSV and the report JSON; returns both paths.
pub fn write_outcome(scenario: &Scenario, outcome: &Outcome, out_dir: &Path) -> CliResult<(PathBuf, PathBuf)> {
    let csv = out_dir.join(
        scenario
            .output
            .csv
            .clone()
            .unwrap_or_else(|| format!("{}.csv", scenario.label).into()),
    );
    let report = out_dir.join(
        scenario
            .output
            .report
            .clone()
            .unwrap_or_else(|| format!("{}.report.json", scenario.label).into()),
    );
    write_file(&csv, outcome.interferogram.to_csv_string().as_bytes())?;
    let mut json = serde_json::to_string_pretty(&outcome.report)
        .map_err(|e| CliError::numerical(e.to_string()))?;
    json.push('\n');
    write_file(&report, json.as_bytes())?;
    Ok((csv, report))
}
