use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homsim(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homsim"))
        .arg("--out-dir")
        .arg(out)
        .arg("--quiet")
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_config(dir: &Path, name: &str, value: &Value) -> String {
    let path = dir.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn gaussian_tpi(label: &str) -> Value {
    serde_json::json!({
        "schema_version": 1,
        "label": label,
        "mode": "tpi",
        "spectrum": {"family": "gaussian", "center_nm": 808.0, "fwhm_nm": 75.0},
        "grid": {"n_points": 1025},
        "stack": [{"material": "bk7", "thickness_mm": 10.0}],
        "delays": {"center_um": 0.0, "span_um": 30.0, "points": 257}
    })
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn sweep_rows(csv: &str) -> Vec<Vec<f64>> {
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("param_value,fwhm_um,visibility,asymmetry"));
    lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn run_writes_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.json", &gaussian_tpi("bk7_tpi"));
    let out = dir.path().join("out");
    let o = homsim(&["run", &cfg], &out);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("bk7_tpi.report.json")).unwrap()).unwrap();
    assert!(report["fwhm"].as_f64().unwrap() > 0.0);
    let csv = std::fs::read_to_string(out.join("bk7_tpi.csv")).unwrap();
    assert!(csv.lines().any(|l| l == "delay_um,value"));
}

#[test]
fn runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.json", &gaussian_tpi("repeat"));
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(homsim(&["run", &cfg], &a).status.success());
    assert!(homsim(&["run", &cfg], &b).status.success());
    for f in ["repeat.csv", "repeat.report.json"] {
        assert_eq!(std::fs::read(a.join(f)).unwrap(), std::fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn unknown_material_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = gaussian_tpi("bad_material");
    s["stack"][0]["material"] = "diamondX".into();
    let cfg = write_config(dir.path(), "s.json", &s);
    let o = homsim(&["run", &cfg], &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("diamondX"), "{}", stderr(&o));
    assert!(stderr(&o).contains("stack[0]"), "{}", stderr(&o));
}

#[test]
fn too_few_delay_points_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = gaussian_tpi("short");
    s["delays"]["points"] = 32.into();
    let cfg = write_config(dir.path(), "s.json", &s);
    let o = homsim(&["run", &cfg], &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn unknown_field_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = gaussian_tpi("typo");
    s["stak"] = Value::Array(vec![]);
    let cfg = write_config(dir.path(), "s.json", &s);
    let o = homsim(&["run", &cfg], &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("stak"), "{}", stderr(&o));
}

#[test]
fn missing_file_is_a_validation_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = homsim(&["run", "/nonexistent/scenario.json"], &dir.path().join("out"));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn lci_width_grows_with_gvd() {
    let dir = tempfile::tempdir().unwrap();
    let s = serde_json::json!({
        "schema_version": 1,
        "label": "lci_gvd",
        "mode": "lci",
        "spectrum": {"family": "gaussian", "center_nm": 808.0, "fwhm_nm": 75.0},
        "grid": {"n_points": 2049},
        "stack": [{"name": "gvd", "taylor": {"beta": [0.0, 0.0, 100.0]}, "thickness_mm": 1.0}],
        "delays": {"center_um": 0.0, "span_um": 200.0, "points": 2049}
    });
    let cfg = write_config(dir.path(), "s.json", &s);
    let out = dir.path().join("out");
    let o = homsim(
        &["sweep", &cfg, "--param", "stack.0.taylor.beta.2", "--min", "100", "--max", "1000", "--steps", "4"],
        &out,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = sweep_rows(&std::fs::read_to_string(out.join("lci_gvd.sweep.csv")).unwrap());
    assert_eq!(rows.len(), 4);
    assert!((rows[3][0] - 1000.0).abs() < 1e-12);
    for w in rows.windows(2) {
        assert!(w[1][1] > w[0][1], "{rows:?}");
    }
}

#[test]
fn tpi_width_is_flat_in_gvd() {
    let dir = tempfile::tempdir().unwrap();
    let s = serde_json::json!({
        "schema_version": 1,
        "label": "tpi_gvd",
        "mode": "tpi",
        "spectrum": {"family": "gaussian", "center_nm": 808.0, "fwhm_nm": 75.0},
        "grid": {"n_points": 2049},
        "stack": [{"name": "gvd", "taylor": {"beta": [0.0, 0.0, 100.0]}, "thickness_mm": 1.0}],
        "delays": {"center_um": 0.0, "span_um": 30.0, "points": 513}
    });
    let cfg = write_config(dir.path(), "s.json", &s);
    let out = dir.path().join("out");
    let o = homsim(
        &["sweep", &cfg, "--param", "stack.0.taylor.beta.2", "--min", "0", "--max", "5000", "--steps", "5"],
        &out,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = sweep_rows(&std::fs::read_to_string(out.join("tpi_gvd.sweep.csv")).unwrap());
    let w0 = rows[0][1];
    for r in &rows {
        assert!((r[1] - w0).abs() / w0 < 2e-3, "{rows:?}");
    }
}

#[test]
fn tpi_width_grows_with_pump_linewidth() {
    let dir = tempfile::tempdir().unwrap();
    let s = serde_json::json!({
        "schema_version": 1,
        "label": "tpi_pump",
        "mode": "tpi",
        "spectrum": {"family": "gaussian", "center_nm": 808.0, "fwhm_rad_per_fs": 0.19790504477698648},
        "grid": {"n_points": 1025},
        "stack": [{"name": "gvd", "taylor": {"beta": [0.0, 0.0, 1700.0]}, "thickness_mm": 1.0}],
        "pump": {"type": "gaussian_line", "fwhm_rad_per_fs": 0.005, "samples": 33},
        "delays": {"center_um": 0.0, "span_um": 30.0, "points": 257}
    });
    let cfg = write_config(dir.path(), "s.json", &s);
    let out = dir.path().join("out");
    let o = homsim(
        &["sweep", &cfg, "--param", "pump.fwhm_rad_per_fs", "--min", "0.005", "--max", "0.02", "--steps", "4"],
        &out,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = sweep_rows(&std::fs::read_to_string(out.join("tpi_pump.sweep.csv")).unwrap());
    for w in rows.windows(2) {
        assert!(w[1][1] > w[0][1], "{rows:?}");
    }
    // the preset linewidth for a 1.17× broadening sits inside this range
    let ratio_lo = rows[0][1] / 2.9698;
    let ratio_hi = rows[3][1] / 2.9698;
    assert!(ratio_lo < 1.17 && ratio_hi > 1.17, "{ratio_lo} {ratio_hi}");
}

#[test]
fn non_numeric_sweep_parameter_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "s.json", &gaussian_tpi("bad_sweep"));
    let o = homsim(
        &["sweep", &cfg, "--param", "stack.0.material", "--min", "0", "--max", "1", "--steps", "2"],
        &dir.path().join("out"),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("stack.0.material"), "{}", stderr(&o));
}

fn reproduce(preset: &str) -> (Option<i32>, Value) {
    let dir = tempfile::tempdir().unwrap();
    let o = homsim(&["reproduce", preset], dir.path());
    let summary = std::fs::read_to_string(dir.path().join(format!("{preset}.summary.json")))
        .unwrap_or_else(|_| panic!("{preset}: no summary; {}", stderr(&o)));
    (o.status.code(), serde_json::from_str(&summary).unwrap())
}

fn failed_keys(summary: &Value) -> Vec<String> {
    summary["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| !r["pass"].as_bool().unwrap())
        .map(|r| r["key"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn reproduce_fig2() {
    let (code, summary) = reproduce("fig2");
    assert_eq!(code, Some(0), "{:?}", failed_keys(&summary));
}

#[test]
fn reproduce_fig3_misses_only_the_known_rows() {
    // the built-in water fit puts 25 mm at ≈610 fs² and carries enough β₃
    // to move the TPI width by ≈0.8%; see the README
    let (code, summary) = reproduce("fig3");
    assert_eq!(code, Some(4));
    assert_eq!(
        failed_keys(&summary),
        ["water_lci_closed_form", "water_lci_fwhm", "water_tpi_change"]
    );
}

#[test]
fn reproduce_fig3_2() {
    let (code, summary) = reproduce("fig3_2");
    assert_eq!(code, Some(0), "{:?}", failed_keys(&summary));
}

#[test]
fn reproduce_fig4() {
    let (code, summary) = reproduce("fig4");
    assert_eq!(code, Some(0), "{:?}", failed_keys(&summary));
}

#[test]
fn unknown_preset_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = homsim(&["reproduce", "fig9"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
