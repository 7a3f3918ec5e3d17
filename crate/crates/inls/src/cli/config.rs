//! Run configuration: a single TOML file captures everything needed to
//! reproduce a run bit-for-bit.

use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

use super::initial::InitialData;
use crate::error::InlsError;
use crate::scaling::Power;
use crate::solver::{MonitorConfig, SolverConfig};
use crate::spectral::Grid;
use crate::weights::WeightSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MonitorSettings {
    #[serde(default = "default_blowup")]
    pub blowup_factor: f64,
    #[serde(default = "default_escape_tol")]
    pub escape_tol: f64,
    #[serde(default)]
    pub enforce_escape: bool,
    #[serde(default = "default_resolution_tol")]
    pub resolution_tol: f64,
    #[serde(default)]
    pub enforce_resolution: bool,
}

fn default_blowup() -> f64 {
    1e3
}
fn default_escape_tol() -> f64 {
    1e-8
}
fn default_resolution_tol() -> f64 {
    1e-8
}

impl Default for MonitorSettings {
    fn default() -> Self {
        MonitorSettings {
            blowup_factor: default_blowup(),
            escape_tol: default_escape_tol(),
            enforce_escape: false,
            resolution_tol: default_resolution_tol(),
            enforce_resolution: false,
        }
    }
}

impl MonitorSettings {
    pub fn to_monitor_config(&self) -> MonitorConfig {
        MonitorConfig {
            blowup_factor: self.blowup_factor,
            escape_tol: self.escape_tol,
            enforce_escape: self.enforce_escape,
            resolution_tol: self.resolution_tol,
            enforce_resolution: self.enforce_resolution,
        }
    }
}

/// Complete run specification as stored on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "default_stride")]
    pub snapshot_stride: usize,
    /// Nonlinearity power as a rational string, e.g. "2" or "1/2".
    pub p: String,
    pub weight: WeightSpec,
    pub initial: InitialData,
    #[serde(default)]
    pub monitors: MonitorSettings,
}

fn default_stride() -> usize {
    1
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self, InlsError> {
        toml::from_str(text).map_err(|e| InlsError::Format(format!("bad config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, InlsError> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }

    pub fn power(&self) -> Result<Power, InlsError> {
        Power::from_str(&self.p)
    }

    pub fn to_solver_config(&self) -> Result<SolverConfig, InlsError> {
        Ok(SolverConfig {
            dt: self.dt,
            t_end: self.t_end,
            snapshot_stride: self.snapshot_stride,
            p: self.power()?,
            weight: self.weight.build(),
            grid: Grid::new(self.grid.n, self.grid.length)?,
            monitors: self.monitors.to_monitor_config(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toml_roundtrip() {
        let text = r#"
            dt = 0.001
            t_end = 1.0
            p = "2"

            [grid]
            n = 64
            length = 32.0

            [weight]
            family = "gaussian"
            amplitude = 1.0
            width = 1.0

            [initial]
            kind = "gaussian"
            amplitude = 1.0
            width = 1.0
        "#;
        let cfg = RunConfig::from_toml_str(text).unwrap();
        assert_eq!(cfg.snapshot_stride, 1);
        let back = RunConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
        assert_eq!(cfg, back);
        assert!(cfg.to_solver_config().is_ok());
    }

    #[test]
    fn rejects_malformed() {
        assert!(RunConfig::from_toml_str("dt = \"soon\"").is_err());
    }
}
