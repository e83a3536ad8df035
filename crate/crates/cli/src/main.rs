// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod error;
mod output;
mod reproduce;
mod scenario;
mod sweep;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::error::{CliError, CliResult, EXIT_TARGET};
use crate::reproduce::Preset;
use crate::scenario::{evaluate, Scenario};
use crate::sweep::SweepAxis;

/// Simulate low-coherence and two-photon interferograms through dispersive media.
#[derive(Parser)]
#[command(name = "homsim", version)]
struct Cli {
    /// Directory for CSV and JSON outputs.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// Print nothing but errors.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one scenario file.
    Run { config: PathBuf },
    /// Run a built-in scenario set and compare it with its targets.
    Reproduce {
        #[arg(value_enum)]
        preset: Preset,
    },
    /// Evaluate a scenario over a range of one numeric parameter.
    Sweep {
        config: PathBuf,
        /// Dotted path of the parameter, e.g. `stack.0.thickness_mm`.
        #[arg(long)]
        param: String,
        #[arg(long, allow_hyphen_values = true)]
        min: f64,
        #[arg(long, allow_hyphen_values = true)]
        max: f64,
        #[arg(long)]
        steps: usize,
    },
}

fn run(config: &Path, out_dir: &Path, quiet: bool) -> CliResult<()> {
    let scenario = Scenario::from_path(config)?;
    let base_dir = config.parent().unwrap_or(Path::new("."));
    let outcome = evaluate(&scenario.prepare(base_dir)?)?;
    output::ensure_dir(out_dir)?;
    let (csv, report) = output::write_outcome(&scenario, &outcome, out_dir)?;
    if !quiet {
        let r = &outcome.report;
        println!(
            "{}: FWHM {:.4} µm, visibility {:.4}, asymmetry {:+.4}",
            scenario.label, r.fwhm, r.visibility, r.asymmetry
        );
        println!("wrote {} and {}", csv.display(), report.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = if cli.quiet { "error" } else { "warn" };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();

    let result = match &cli.command {
        Command::Run { config } => run(config, &cli.out_dir, cli.quiet),
        Command::Reproduce { preset } => output::ensure_dir(&cli.out_dir)
            .and_then(|_| reproduce::reproduce(*preset, &cli.out_dir))
            .and_then(|summary| {
                if !cli.quiet {
                    println!("{} (targets v{})", summary.preset, summary.targets_version);
                    print!("{}", summary.table());
                }
                if summary.all_pass() {
                    Ok(())
                } else {
                    let failed: Vec<&str> = summary.rows.iter().filter(|r| !r.pass).map(|r| r.key.as_str()).collect();
                    Err(CliError {
                        code: EXIT_TARGET,
                        message: format!("preset {}: targets missed: {}", summary.preset, failed.join(", ")),
                    })
                }
            }),
        Command::Sweep { config, param, min, max, steps } => {
            let axis = SweepAxis { param: param.clone(), min: *min, max: *max, steps: *steps };
            output::ensure_dir(&cli.out_dir)
                .and_then(|_| sweep::run_sweep(config, &axis, &cli.out_dir))
                .map(|(path, _)| {
                    if !cli.quiet {
                        println!("wrote {}", path.display());
                    }
                })
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
