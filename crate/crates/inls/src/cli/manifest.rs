//! Run manifests: every output file with its checksum, plus the full
//! configuration, so a run can be reproduced and verified bit-for-bit.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;

use super::config::{RunConfig, SCHEMA_VERSION};
use crate::error::InlsError;
use crate::solver::MonitorOutcome;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OutputEntry {
    /// Path relative to the manifest's directory.
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub artifact_version: String,
    pub config: RunConfig,
    pub config_hash: String,
    pub monitors: MonitorOutcomeRecord,
    pub outputs: Vec<OutputEntry>,
}

/// Serializable mirror of the solver's monitor outcome.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct MonitorOutcomeRecord {
    pub max_escape_fraction: f64,
    pub escape_tripped: bool,
    pub max_top_octave_fraction: f64,
    pub resolution_tripped: bool,
    pub max_linf_growth: f64,
}

impl From<&MonitorOutcome> for MonitorOutcomeRecord {
    fn from(m: &MonitorOutcome) -> Self {
        MonitorOutcomeRecord {
            max_escape_fraction: m.max_escape_fraction,
            escape_tripped: m.escape_tripped,
            max_top_octave_fraction: m.max_top_octave_fraction,
            resolution_tripped: m.resolution_tripped,
            max_linf_growth: m.max_linf_growth,
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    format!("{:x}", h.finalize())
}

pub fn sha256_file(path: &Path) -> Result<String, InlsError> {
    Ok(sha256_hex(&std::fs::read(path)?))
}

impl RunManifest {
    pub fn new(config: RunConfig, monitors: MonitorOutcomeRecord) -> Self {
        let config_hash = sha256_hex(config.to_toml_string().as_bytes());
        RunManifest {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            config_hash,
            monitors,
            outputs: Vec::new(),
        }
    }

    /// Registers a file (path relative to `base`) with its current checksum.
    pub fn add_output(&mut self, base: &Path, relative: &str) -> Result<(), InlsError> {
        let sha256 = sha256_file(&base.join(relative))?;
        self.outputs.push(OutputEntry {
            path: relative.to_string(),
            sha256,
        });
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<(), InlsError> {
        let text = serde_json::to_string_pretty(self)
            .map_err(|e| InlsError::Format(e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, InlsError> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| InlsError::Format(format!("bad manifest: {e}")))
    }

    /// Checks that every listed output exists under `base` and matches its
    /// recorded checksum.
    pub fn verify_outputs(&self, base: &Path) -> Result<(), InlsError> {
        for entry in &self.outputs {
            let actual = sha256_file(&base.join(&entry.path))?;
            if actual != entry.sha256 {
                return Err(InlsError::Validation(format!(
                    "checksum mismatch for {}: {actual} != {}",
                    entry.path, entry.sha256
                )));
            }
        }
        Ok(())
    }
}
