//! Experiment presets and parameter sweeps.

use serde::Serialize;
use std::path::Path;

use super::config::{GridConfig, RunConfig};
use super::initial::InitialData;
use super::manifest::RunManifest;
use super::runner::execute_run;
use crate::diagnostics::{morawetz, scattering_probe};
use crate::error::InlsError;
use crate::scaling::exponent_profile;
use crate::spectral::{lebesgue_norm, LebesgueExponent};
use crate::weights::WeightSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DiagnosticKind {
    Conserved,
    Morawetz,
    Scattering,
}

#[derive(Clone, Debug)]
pub struct ExperimentPreset {
    pub name: &'static str,
    pub config: RunConfig,
    pub diagnostics: Vec<DiagnosticKind>,
    /// For matrix presets: (amplitude, p) grid executed on top of the base
    /// config.
    pub matrix: Vec<(f64, &'static str)>,
}

fn gaussian_initial(amplitude: f64) -> InitialData {
    InitialData::Gaussian {
        amplitude,
        width: 1.0,
        center: (0.0, 0.0),
        velocity: (0.0, 0.0),
    }
}

fn base_config() -> RunConfig {
    RunConfig {
        grid: GridConfig {
            n: 128,
            length: 64.0,
        },
        dt: 0.01,
        t_end: 4.0,
        snapshot_stride: 25,
        p: "2".into(),
        weight: WeightSpec::Gaussian {
            amplitude: 1.0,
            width: 1.0,
        },
        initial: gaussian_initial(1.0),
        monitors: Default::default(),
    }
}

pub fn preset_catalog() -> Vec<ExperimentPreset> {
    let mut free_gaussian = base_config();
    free_gaussian.weight = WeightSpec::Zero;

    let mut plane_wave = base_config();
    plane_wave.weight = WeightSpec::Constant { value: 1.0 };
    plane_wave.p = "3".into();
    plane_wave.t_end = 1.0;
    plane_wave.initial = InitialData::PlaneWave {
        amplitude: 0.5,
        kx_index: 2,
        ky_index: 1,
    };

    let mut small_data = base_config();
    small_data.grid = GridConfig {
        n: 128,
        length: 128.0,
    };
    small_data.dt = 0.02;
    small_data.t_end = 40.0;
    small_data.snapshot_stride = 25;
    small_data.initial = gaussian_initial(0.05);

    let mut morawetz_cfg = base_config();
    morawetz_cfg.grid = GridConfig {
        n: 128,
        length: 128.0,
    };
    morawetz_cfg.dt = 0.02;
    morawetz_cfg.t_end = 64.0;
    morawetz_cfg.snapshot_stride = 50;

    vec![
        ExperimentPreset {
            name: "free-gaussian",
            config: free_gaussian,
            diagnostics: vec![DiagnosticKind::Conserved],
            matrix: Vec::new(),
        },
        ExperimentPreset {
            name: "plane-wave",
            config: plane_wave,
            diagnostics: vec![DiagnosticKind::Conserved],
            matrix: Vec::new(),
        },
        ExperimentPreset {
            name: "small-data-scatter",
            config: small_data,
            diagnostics: vec![DiagnosticKind::Conserved, DiagnosticKind::Scattering],
            matrix: Vec::new(),
        },
        ExperimentPreset {
            name: "morawetz-matrix",
            config: morawetz_cfg,
            diagnostics: vec![DiagnosticKind::Conserved, DiagnosticKind::Morawetz],
            matrix: vec![
                (0.5, "1"),
                (0.5, "2"),
                (0.5, "3"),
                (1.0, "1"),
                (1.0, "2"),
                (1.0, "3"),
                (2.0, "1"),
                (2.0, "2"),
                (2.0, "3"),
            ],
        },
    ]
}

pub fn preset_by_name(name: &str) -> Result<ExperimentPreset, InlsError> {
    preset_catalog()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| {
            InlsError::Validation(format!(
                "unknown preset '{name}'; available: {}",
                preset_catalog()
                    .iter()
                    .map(|p| p.name)
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        })
}

/// Applies a key=value override to a config. Valid keys: dt, t_end, p, n,
/// length, amplitude, snapshot_stride.
pub fn apply_override(cfg: &mut RunConfig, key: &str, value: &str) -> Result<(), InlsError> {
    let bad = |what: &str| InlsError::Validation(format!("bad override {key}={value}: {what}"));
    match key {
        "dt" => cfg.dt = value.parse().map_err(|_| bad("not a number"))?,
        "t_end" => cfg.t_end = value.parse().map_err(|_| bad("not a number"))?,
        "p" => {
            cfg.p = value.to_string();
            cfg.power()?;
        }
        "n" => cfg.grid.n = value.parse().map_err(|_| bad("not an integer"))?,
        "length" | "L" => cfg.grid.length = value.parse().map_err(|_| bad("not a number"))?,
        "snapshot_stride" => {
            cfg.snapshot_stride = value.parse().map_err(|_| bad("not an integer"))?
        }
        "amplitude" => {
            let a: f64 = value.parse().map_err(|_| bad("not a number"))?;
            set_amplitude(cfg, a);
        }
        _ => {
            return Err(InlsError::Validation(format!(
                "unknown override key '{key}' (valid: dt, t_end, p, n, length, amplitude, snapshot_stride)"
            )))
        }
    }
    Ok(())
}

fn set_amplitude(cfg: &mut RunConfig, a: f64) {
    match &mut cfg.initial {
        InitialData::Gaussian { amplitude, .. }
        | InitialData::PlaneWave { amplitude, .. }
        | InitialData::Ring { amplitude, .. } => *amplitude = a,
    }
}

/// Per-cell summary row of a matrix preset.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixRow {
    pub amplitude: f64,
    pub p: String,
    pub mass: f64,
    pub energy: f64,
    pub morawetz_integral: f64,
    pub morawetz_at_half: f64,
}

/// Executes a preset (or its matrix) into `out_dir` and returns the
/// top-level manifest.
pub fn run_preset(
    name: &str,
    overrides: &[(String, String)],
    out_dir: &Path,
) -> Result<RunManifest, InlsError> {
    let preset = preset_by_name(name)?;
    let mut cfg = preset.config.clone();
    for (k, v) in overrides {
        apply_override(&mut cfg, k, v)?;
    }
    std::fs::create_dir_all(out_dir)?;
    if preset.matrix.is_empty() {
        let (traj, mut manifest) = execute_run(&cfg, out_dir)?;
        let solver_cfg = cfg.to_solver_config()?;
        let prof = exponent_profile(&solver_cfg.p).to_f64();
        let mut summary = serde_json::json!({
            "schema_version": super::config::SCHEMA_VERSION,
            "preset": name,
        });
        if preset.diagnostics.contains(&DiagnosticKind::Morawetz) {
            let rep = morawetz(&traj)?;
            summary["morawetz_integral"] = serde_json::json!(rep.total());
            summary["morawetz_infimum"] = serde_json::json!(rep.infimum);
        }
        if preset.diagnostics.contains(&DiagnosticKind::Scattering) {
            let rep = scattering_probe(&traj, &solver_cfg.weight, &prof)?;
            summary["scattering_verdict"] = serde_json::json!(format!("{:?}", rep.verdict));
            summary["pullback_drift"] = serde_json::json!(rep.pullback_drift);
        }
        std::fs::write(
            out_dir.join("summary.json"),
            serde_json::to_string_pretty(&summary).unwrap(),
        )?;
        manifest.add_output(out_dir, "summary.json")?;
        manifest.save(&out_dir.join("manifest.json"))?;
        return Ok(manifest);
    }
    // matrix preset: one sub-run per cell, combined CSV at the top level
    let cells: Vec<(f64, &'static str)> = preset.matrix.clone();
    let results: Vec<Result<MatrixRow, InlsError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = cells
            .iter()
            .map(|&(amp, p)| {
                let mut cell_cfg = cfg.clone();
                let out = out_dir.join(format!("amp{amp}_p{}", p.replace('/', "_")));
                scope.spawn(move || {
                    set_amplitude(&mut cell_cfg, amp);
                    cell_cfg.p = p.to_string();
                    let (traj, _) = execute_run(&cell_cfg, &out)?;
                    let solver_cfg = cell_cfg.to_solver_config()?;
                    let rep = morawetz(&traj)?;
                    let half = rep
                        .times
                        .iter()
                        .position(|&t| t >= traj.span().1 / 2.0)
                        .map(|i| rep.integral[i])
                        .unwrap_or(rep.total());
                    let cons = crate::diagnostics::conserved(&traj, &solver_cfg.weight)?;
                    Ok(MatrixRow {
                        amplitude: amp,
                        p: p.to_string(),
                        mass: cons.mass[0],
                        energy: cons.energy[0],
                        morawetz_integral: rep.total(),
                        morawetz_at_half: half,
                    })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.push(r?);
    }
    let mut csv = String::from("amplitude,p,mass,energy,morawetz_integral,morawetz_at_half\n");
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.amplitude, r.p, r.mass, r.energy, r.morawetz_integral, r.morawetz_at_half
        ));
    }
    std::fs::write(out_dir.join("matrix.csv"), csv)?;
    let mut manifest = RunManifest::new(cfg, Default::default());
    manifest.add_output(out_dir, "matrix.csv")?;
    manifest.save(&out_dir.join("manifest.json"))?;
    Ok(manifest)
}

/// Independent runs along one parameter axis; failures are recorded and the
/// sweep continues. Writes a combined trend CSV.
pub fn sweep(
    preset_name: &str,
    axis: &str,
    values: &[String],
    out_dir: &Path,
) -> Result<Vec<Result<RunManifest, InlsError>>, InlsError> {
    if !["dt", "amplitude", "p", "L", "length", "n"].contains(&axis) {
        return Err(InlsError::Validation(format!(
            "sweep axis must be one of dt, amplitude, p, L, n; got '{axis}'"
        )));
    }
    let preset = preset_by_name(preset_name)?;
    if !preset.matrix.is_empty() {
        return Err(InlsError::Validation(
            "matrix presets cannot be swept".into(),
        ));
    }
    std::fs::create_dir_all(out_dir)?;
    let results: Vec<Result<(RunManifest, f64, f64), InlsError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut cfg = preset.config.clone();
                let axis = axis.to_string();
                let value = v.clone();
                let out = out_dir.join(format!("case_{i:03}"));
                scope.spawn(move || {
                    apply_override(&mut cfg, &axis, &value)?;
                    let (traj, manifest) = execute_run(&cfg, &out)?;
                    let terminal = traj.snapshots.last().unwrap();
                    let l2 = lebesgue_norm(terminal, LebesgueExponent::Finite(2.0));
                    let m0 = traj.snapshots[0].mass();
                    let drift = traj
                        .snapshots
                        .iter()
                        .map(|s| (s.mass() - m0).abs() / m0.max(1e-300))
                        .fold(0.0, f64::max);
                    Ok((manifest, l2, drift))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut csv = String::from("value,terminal_l2,max_mass_drift,status\n");
    let mut manifests = Vec::new();
    for (v, r) in values.iter().zip(results) {
        match r {
            Ok((m, l2, drift)) => {
                csv.push_str(&format!("{v},{l2},{drift},ok\n"));
                manifests.push(Ok(m));
            }
            Err(e) => {
                csv.push_str(&format!("{v},,,\"{e}\"\n"));
                manifests.push(Err(e));
            }
        }
    }
    std::fs::write(out_dir.join("sweep.csv"), csv)?;
    Ok(manifests)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_names_resolve() {
        for p in preset_catalog() {
            assert!(preset_by_name(p.name).is_ok());
            // referenced weight and initial data build
            let _ = p.config.weight.build();
            let grid = crate::spectral::Grid::new(p.config.grid.n, p.config.grid.length).unwrap();
            let _ = p.config.initial.build(grid);
            assert!(p.config.power().is_ok());
        }
        assert!(preset_by_name("no-such").is_err());
    }

    #[test]
    fn overrides() {
        let mut cfg = base_config();
        apply_override(&mut cfg, "dt", "0.5").unwrap();
        apply_override(&mut cfg, "p", "1/2").unwrap();
        apply_override(&mut cfg, "amplitude", "0.25").unwrap();
        assert_eq!(cfg.dt, 0.5);
        assert_eq!(cfg.p, "1/2");
        assert!(apply_override(&mut cfg, "p", "nope").is_err());
        assert!(apply_override(&mut cfg, "color", "red").is_err());
    }

    #[test]
    fn free_gaussian_preset_runs() {
        let dir = tempfile::tempdir().unwrap();
        let overrides = vec![
            ("t_end".to_string(), "0.2".to_string()),
            ("n".to_string(), "32".to_string()),
            ("length".to_string(), "16".to_string()),
            ("dt".to_string(), "0.02".to_string()),
            ("snapshot_stride".to_string(), "2".to_string()),
        ];
        let manifest = run_preset("free-gaussian", &overrides, dir.path()).unwrap();
        manifest.verify_outputs(dir.path()).unwrap();
        // zero weight: potential column is identically zero
        let csv = std::fs::read_to_string(dir.path().join("conserved.csv")).unwrap();
        for line in csv.lines().skip(1) {
            let pot: f64 = line.split(',').nth(3).unwrap().parse().unwrap();
            assert_eq!(pot, 0.0);
        }
    }

    #[test]
    fn empty_sweep_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let out = sweep("free-gaussian", "dt", &[], dir.path()).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn dt_sweep_runs_and_records_failures() {
        let dir = tempfile::tempdir().unwrap();
        let values = vec!["0.05".to_string(), "-1".to_string()];
        // small overrides applied via a shortened preset would be nicer, but
        // the sweep uses the preset as-is; shrink via the dt axis itself
        let preset = preset_by_name("free-gaussian").unwrap();
        assert!(preset.config.t_end > 0.0);
        let out = sweep("free-gaussian", "dt", &values, dir.path()).unwrap();
        assert_eq!(out.len(), 2);
        assert!(out[0].is_ok());
        assert!(out[1].is_err());
        let csv = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
        assert!(csv.lines().count() == 3);
    }
}
