use serde::{Deserialize, Serialize};

use crate::engine::{Carrier, Interferogram, InterferogramKind};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FwhmMethod {
    GaussianFit,
    HalfMax,
}

/// Width and shape of the dominant feature of an interferogram.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolutionReport {
    /// µm of optical delay.
    pub fwhm: f64,
    pub method: FwhmMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fit_residual_rms: Option<f64>,
    /// µm.
    pub dip_or_peak_center: f64,
    pub visibility: f64,
    /// `(R − L)/(R + L)` of the half-widths; positive when the feature
    /// extends further toward positive delay.
    pub asymmetry: f64,
}

/// Whether the outer 10% of samples on both ends lie within 1% of 1.
pub(crate) fn ends_at_unity(values: &[f64]) -> bool {
    let n = values.len();
    let k = (n / 10).max(1);
    values[..k].iter().chain(&values[n - k..]).all(|v| (v - 1.0).abs() <= 0.01)
}

/// 1 when the trace ends there, else the mean of the outer 10% of samples.
pub(crate) fn baseline(values: &[f64]) -> f64 {
    if ends_at_unity(values) {
        return 1.0;
    }
    let n = values.len();
    let k = (n / 10).max(1);
    let sum: f64 = values[..k].iter().chain(&values[n - k..]).sum();
    sum / (2 * k) as f64
}

/// Feature strength relative to the baseline, positive at the dip or peak.
pub(crate) fn feature_signal(ig: &Interferogram) -> Result<Vec<f64>> {
    if ig.len() < 5 || ig.delay_um.len() != ig.len() {
        return Err(Error::Shape(format!(
            "interferogram needs at least 5 samples, got {}",
            ig.len()
        )));
    }
    let base = baseline(&ig.values);
    Ok(match (ig.kind, ig.carrier) {
        (InterferogramKind::Tpi, _) => ig.values.iter().map(|v| base - v).collect(),
        (InterferogramKind::Lci, Carrier::EnvelopeOnly) => ig.values.iter().map(|v| v - base).collect(),
        (InterferogramKind::Lci, Carrier::WithFringes) => {
            let dev: Vec<f64> = ig.values.iter().map(|v| (v - base).abs()).collect();
            fringe_envelope(&dev)
        }
    })
}

/// Linear interpolation through the local maxima of `dev`.
fn fringe_envelope(dev: &[f64]) -> Vec<f64> {
    let n = dev.len();
    let mut peaks = vec![0];
    peaks.extend((1..n - 1).filter(|&i| dev[i] >= dev[i - 1] && dev[i] > dev[i + 1]));
    peaks.push(n - 1);
    let mut env = vec![0.0; n];
    for pair in peaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        for (i, e) in env.iter_mut().enumerate().take(b + 1).skip(a) {
            let t = if b > a { (i - a) as f64 / (b - a) as f64 } else { 0.0 };
            *e = dev[a] + t * (dev[b] - dev[a]);
        }
    }
    env
}

pub(crate) struct HalfMax {
    pub left: f64,
    pub right: f64,
    pub center: f64,
    pub peak_index: usize,
}

pub(crate) fn half_max(x: &[f64], s: &[f64]) -> Result<HalfMax> {
    let (peak_index, peak) = s
        .iter()
        .cloned()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
    if !(peak > 0.0) {
        return Err(Error::Shape("no dip or peak above the baseline".into()));
    }
    let level = 0.5 * peak;
    let cross = |i: usize, j: usize| x[i] + (level - s[i]) / (s[j] - s[i]) * (x[j] - x[i]);
    let mut i = peak_index;
    while i > 0 && s[i - 1] > level {
        i -= 1;
    }
    if i == 0 {
        return Err(Error::Shape("no half-depth crossing on the negative-delay side".into()));
    }
    let left = cross(i - 1, i);
    let mut j = peak_index;
    while j + 1 < s.len() && s[j + 1] > level {
        j += 1;
    }
    if j + 1 == s.len() {
        return Err(Error::Shape("no half-depth crossing on the positive-delay side".into()));
    }
    let right = cross(j, j + 1);
    let mut center = x[peak_index];
    if peak_index > 0 && peak_index + 1 < s.len() {
        let (a, b, c) = (s[peak_index - 1], s[peak_index], s[peak_index + 1]);
        let curvature = a - 2.0 * b + c;
        if curvature < 0.0 {
            let h = x[peak_index + 1] - x[peak_index];
            center += 0.5 * h * (a - c) / curvature;
        }
    }
    Ok(HalfMax {
        left,
        right,
        center,
        peak_index,
    })
}

impl HalfMax {
    pub(crate) fn asymmetry(&self) -> f64 {
        let l = self.center - self.left;
        let r = self.right - self.center;
        (r - l) / (r + l)
    }
}

/// FWHM from the two half-depth crossings nearest the extremum.
pub fn fwhm_halfmax(ig: &Interferogram) -> Result<ResolutionReport> {
    let s = feature_signal(ig)?;
    let hm = half_max(&ig.delay_um, &s)?;
    Ok(ResolutionReport {
        fwhm: hm.right - hm.left,
        method: FwhmMethod::HalfMax,
        fit_residual_rms: None,
        dip_or_peak_center: hm.center,
        visibility: visibility(ig)?,
        asymmetry: hm.asymmetry(),
    })
}

/// Depth of a coincidence dip or contrast of a linear interferogram,
/// relative to the baseline of the outer 10% of samples.
pub fn visibility(ig: &Interferogram) -> Result<f64> {
    if ig.is_empty() {
        return Err(Error::Shape("empty interferogram".into()));
    }
    let max = ig.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = ig.values.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(max - min > 1e-12) {
        return Err(Error::Shape("flat interferogram has no defined visibility".into()));
    }
    let base = baseline(&ig.values);
    if !(base > 0.0) {
        return Err(Error::Shape(format!("baseline must be positive, got {base}")));
    }
    Ok(match (ig.kind, ig.carrier) {
        (InterferogramKind::Tpi, _) => (base - min) / base,
        (InterferogramKind::Lci, Carrier::EnvelopeOnly) => (max - base) / base,
        (InterferogramKind::Lci, Carrier::WithFringes) => (max - min) / (max + min),
    })
}

/// Counts of secondary extrema outside the half-depth window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideOscillations {
    pub left: usize,
    pub right: usize,
}

/// Local extrema outside the main feature that deviate from the baseline
/// by more than `threshold`.
pub fn side_oscillations(ig: &Interferogram, threshold: f64) -> Result<SideOscillations> {
    let s = feature_signal(ig)?;
    let hm = half_max(&ig.delay_um, &s)?;
    let base = baseline(&ig.values);
    let y = &ig.values;
    let mut counts = SideOscillations { left: 0, right: 0 };
    for i in 1..y.len() - 1 {
        let extremum = (y[i] > y[i - 1] && y[i] >= y[i + 1]) || (y[i] < y[i - 1] && y[i] <= y[i + 1]);
        if !extremum || (y[i] - base).abs() <= threshold {
            continue;
        }
        if ig.delay_um[i] < hm.left {
            counts.left += 1;
        } else if ig.delay_um[i] > hm.right {
            counts.right += 1;
        }
    }
    Ok(counts)
}
