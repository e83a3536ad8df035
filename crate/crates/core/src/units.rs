//! Physical constants and unit conversions.
//!
//! Frequencies are angular (rad/fs), times in fs, delays in µm of mirror
//! displacement (`cτ/2`), thicknesses in mm.

use std::f64::consts::PI;

/// Speed of light in nm/fs.
pub const C_NM_PER_FS: f64 = 299.792_458;
/// Speed of light in µm/fs.
pub const C_UM_PER_FS: f64 = 0.299_792_458;
/// Speed of light in mm/fs.
pub const C_MM_PER_FS: f64 = 2.997_924_58e-4;

pub fn angular_frequency_from_wavelength_nm(wavelength_nm: f64) -> f64 {
    2.0 * PI * C_NM_PER_FS / wavelength_nm
}

pub fn wavelength_nm_from_angular_frequency(omega: f64) -> f64 {
    2.0 * PI * C_NM_PER_FS / omega
}

/// Converts a wavelength bandwidth around `center_nm` to an angular
/// frequency bandwidth, `2πcΔλ/λ²`.
pub fn bandwidth_rad_per_fs(center_nm: f64, bandwidth_nm: f64) -> f64 {
    2.0 * PI * C_NM_PER_FS * bandwidth_nm / (center_nm * center_nm)
}

/// Time delay τ (fs) to optical delay `cτ/2` (µm).
pub fn delay_um_from_fs(tau_fs: f64) -> f64 {
    0.5 * C_UM_PER_FS * tau_fs
}

/// Optical delay `cτ/2` (µm) to time delay τ (fs).
pub fn delay_fs_from_um(delay_um: f64) -> f64 {
    2.0 * delay_um / C_UM_PER_FS
}

/// Angular frequency (rad/fs) to ordinary frequency (THz).
pub fn thz_from_rad_per_fs(omega: f64) -> f64 {
    omega / (2.0 * PI) * 1.0e3
}
