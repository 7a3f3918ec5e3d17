//! Configuration files, experiment presets, run orchestration, manifests,
//! and plotting: everything behind the command-line interface.

pub mod commands;
pub mod config;
pub mod initial;
pub mod manifest;
pub mod plot;
pub mod presets;
pub mod runner;

pub use commands::{
    cmd_cutoffs, cmd_diagnose, cmd_exponents, cmd_plot, cmd_preset_list, cmd_run,
    cmd_weight_check,
};
pub use config::{GridConfig, MonitorSettings, RunConfig, SCHEMA_VERSION};
pub use initial::InitialData;
pub use manifest::{sha256_file, sha256_hex, OutputEntry, RunManifest};
pub use presets::{apply_override, preset_by_name, preset_catalog, run_preset, sweep};
pub use runner::{execute_run, load_trajectory};
