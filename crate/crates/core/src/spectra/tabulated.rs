use std::path::Path;

use super::grid::FrequencyGrid;
use super::shapes::SpectralAmplitude;
use crate::{Error, Result};

pub const SPECTRUM_CSV_HEADER: [&str; 2] = ["omega_rad_per_fs", "density"];

/// Resamples a measured `(Ω, density)` table onto a symmetric uniform grid
/// of `n_points` samples by linear interpolation, then renormalizes.
///
/// The grid half-span is the largest `|Ω|` in the table; the density is zero
/// outside the tabulated range.
pub fn tabulated_spectrum(
    center_frequency: f64,
    samples: &[(f64, f64)],
    n_points: usize,
) -> Result<SpectralAmplitude> {
    if samples.len() < 8 {
        return Err(Error::Input(format!(
            "tabulated spectrum needs at least 8 samples, got {}",
            samples.len()
        )));
    }
    for (i, &(w, d)) in samples.iter().enumerate() {
        if !w.is_finite() || !d.is_finite() {
            return Err(Error::Input(format!("sample {i} is not finite")));
        }
        if d < 0.0 {
            return Err(Error::Input(format!(
                "sample {i} has negative density {d}"
            )));
        }
        if i > 0 && w <= samples[i - 1].0 {
            return Err(Error::Input(format!(
                "frequency column must be strictly increasing (sample {i})"
            )));
        }
    }
    if n_points < 257 || n_points % 2 == 0 {
        return Err(Error::Parameter(format!(
            "n_points must be odd and at least 257, got {n_points}"
        )));
    }
    let lo = samples[0].0;
    let hi = samples[samples.len() - 1].0;
    let grid = FrequencyGrid::new(lo.abs().max(hi.abs()), n_points)?;
    let mut cursor = 0;
    let density: Vec<f64> = grid
        .values()
        .iter()
        .map(|&w| {
            if w < lo || w > hi {
                return 0.0;
            }
            while cursor + 2 < samples.len() && samples[cursor + 1].0 < w {
                cursor += 1;
            }
            let (w0, d0) = samples[cursor];
            let (w1, d1) = samples[cursor + 1];
            d0 + (w - w0) / (w1 - w0) * (d1 - d0)
        })
        .collect();
    SpectralAmplitude::from_density(center_frequency, grid, &density)
}

/// Reads `omega_rad_per_fs,density` rows.
pub fn read_spectrum_csv(path: impl AsRef<Path>) -> Result<Vec<(f64, f64)>> {
    let path = path.as_ref();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != SPECTRUM_CSV_HEADER {
        return Err(Error::Input(format!(
            "{}: expected header `{}`, found `{}`",
            path.display(),
            SPECTRUM_CSV_HEADER.join(","),
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            record[i].parse::<f64>().map_err(|e| {
                Error::Input(format!(
                    "{}: row {}: column {}: {e}",
                    path.display(),
                    line + 2,
                    SPECTRUM_CSV_HEADER[i]
                ))
            })
        };
        rows.push((parse(0)?, parse(1)?));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::LN_2;
    use std::io::Write;

    use super::*;
    use crate::spectra::{gaussian_spectrum, GridSpec};

    fn gaussian_table(fwhm: f64, n: usize, scale: f64) -> Vec<(f64, f64)> {
        let half = 4.0 * fwhm;
        (0..n)
            .map(|i| {
                let w = -half + 2.0 * half * i as f64 / (n - 1) as f64;
                (w, scale * (-4.0 * LN_2 * w * w / (fwhm * fwhm)).exp())
            })
            .collect()
    }

    #[test]
    fn round_trip_of_a_gaussian() {
        let fwhm = 0.2164;
        let table = gaussian_table(fwhm, 401, 1.0);
        let tab = tabulated_spectrum(2.33, &table, 4097).unwrap();
        let exact = gaussian_spectrum(2.33, fwhm, GridSpec::default()).unwrap();
        let d = exact.density();
        let peak = d.iter().cloned().fold(0.0, f64::max);
        for (w, v) in exact.grid().values().iter().zip(&d) {
            assert!((tab.density_at(*w) - v).abs() <= 1e-3 * peak);
        }
    }

    #[test]
    fn scaling_the_table_changes_nothing() {
        let a = tabulated_spectrum(2.33, &gaussian_table(0.2, 64, 1.0), 1025).unwrap();
        let b = tabulated_spectrum(2.33, &gaussian_table(0.2, 64, 7.0), 1025).unwrap();
        for (x, y) in a.amplitude().iter().zip(b.amplitude()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_and_malformed_tables_are_rejected() {
        assert!(matches!(
            tabulated_spectrum(2.33, &[(-0.1, 1.0), (0.1, 1.0)], 1025),
            Err(Error::Input(_))
        ));
        let mut t = gaussian_table(0.2, 16, 1.0);
        t[3].1 = -0.5;
        assert!(matches!(tabulated_spectrum(2.33, &t, 1025), Err(Error::Input(_))));
        let mut t = gaussian_table(0.2, 16, 1.0);
        t.swap(4, 5);
        assert!(matches!(tabulated_spectrum(2.33, &t, 1025), Err(Error::Input(_))));
    }

    #[test]
    fn reads_csv_with_the_documented_header() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "omega_rad_per_fs,density").unwrap();
        for (w, d) in gaussian_table(0.2, 32, 1.0) {
            writeln!(file, "{w},{d}").unwrap();
        }
        let rows = read_spectrum_csv(file.path()).unwrap();
        assert_eq!(rows.len(), 32);
        assert!(tabulated_spectrum(2.33, &rows, 1025).is_ok());

        let mut bad = tempfile::NamedTempFile::new().unwrap();
        writeln!(bad, "omega,density\n0.1,1").unwrap();
        assert!(matches!(read_spectrum_csv(bad.path()), Err(Error::Input(_))));
    }
}
