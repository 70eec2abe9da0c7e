//! Scenario runner, parameter sweeps and self-checks for the `tempocorr` library.

pub mod config;
pub mod error;
pub mod report;
pub mod selftest;
pub mod sweep;

use std::path::Path;

pub use error::CliError;

/// Environment variable that may lower the NSIT reporting threshold.
pub const TOLERANCE_ENV: &str = "TEMPOCORR_TOL";

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Snaps round-off noise to zero so printed values are stable across platforms.
pub fn clean(v: f64) -> f64 {
    if v.abs() < 1e-14 {
        0.0
    } else {
        v
    }
}

/// Twelve significant digits in scientific notation.
pub fn format_value(v: f64) -> String {
    format!("{:.11e}", clean(v))
}

/// NSIT threshold: the library default, or a tighter value from the environment.
pub fn nsit_tolerance(env_value: Option<&str>) -> f64 {
    let default = tempocorr::tol::NSIT_SATISFIED;
    match env_value.and_then(|s| s.trim().parse::<f64>().ok()) {
        Some(t) if t.is_finite() && t > 0.0 && t < default => t,
        _ => default,
    }
}
