use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InterferogramKind {
    /// Linear (single-photon) interference: a peak.
    Lci,
    /// Two-photon coincidence interference: a dip.
    Tpi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Carrier {
    /// Full real interferogram with fringes at the carrier frequency.
    WithFringes,
    /// Fringe envelope `1 + |γ(τ)|`.
    EnvelopeOnly,
}

/// Uniform optical-delay grid in µm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelayGrid {
    pub center_um: f64,
    pub span_um: f64,
    pub points: usize,
}

impl DelayGrid {
    pub fn new(center_um: f64, span_um: f64, points: usize) -> Result<Self> {
        let grid = Self {
            center_um,
            span_um,
            points,
        };
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Parameter(format!(
                "delay grid needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.span_um > 0.0) || !self.span_um.is_finite() || !self.center_um.is_finite() {
            return Err(Error::Parameter(format!(
                "delay span must be positive and finite, got {} µm around {} µm",
                self.span_um, self.center_um
            )));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        self.span_um / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        let start = self.center_um - 0.5 * self.span_um;
        (0..self.points).map(|i| start + i as f64 * self.step()).collect()
    }
}

/// Requested delays must be finite, increasing and uniformly spaced.
pub(crate) fn validate_delays(delays: &[f64]) -> Result<f64> {
    if delays.len() < 2 {
        return Err(Error::Parameter(format!(
            "at least 2 delay points are required, got {}",
            delays.len()
        )));
    }
    if delays.iter().any(|d| !d.is_finite()) {
        return Err(Error::Parameter("delays must be finite".into()));
    }
    let step = (delays[delays.len() - 1] - delays[0]) / (delays.len() - 1) as f64;
    if !(step > 0.0) {
        return Err(Error::Parameter("delays must be increasing".into()));
    }
    for w in delays.windows(2) {
        if ((w[1] - w[0]) - step).abs() > 1e-6 * step {
            return Err(Error::Parameter("delays must be uniformly spaced".into()));
        }
    }
    Ok(step)
}

/// Sampled interferogram on an optical-delay axis (µm, `x = cτ/2`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Interferogram {
    pub kind: InterferogramKind,
    pub carrier: Carrier,
    pub delay_um: Vec<f64>,
    pub values: Vec<f64>,
    pub metadata: serde_json::Value,
}

impl Interferogram {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn step_um(&self) -> f64 {
        if self.delay_um.len() < 2 {
            return 0.0;
        }
        (self.delay_um[self.delay_um.len() - 1] - self.delay_um[0]) / (self.delay_um.len() - 1) as f64
    }

    /// CSV with `# key: value` metadata lines, then `delay_um,value`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        if let serde_json::Value::Object(map) = &self.metadata {
            for (key, value) in map {
                writeln!(out, "# {key}: {value}")?;
            }
        }
        writeln!(out, "delay_um,value")?;
        for (x, v) in self.delay_um.iter().zip(&self.values) {
            writeln!(out, "{x:.16e},{v:.16e}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is UTF-8")
    }
}
