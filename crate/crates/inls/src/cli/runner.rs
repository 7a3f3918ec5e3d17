//! Run execution: solve, write snapshots and time series, emit a manifest.

use std::path::Path;

use super::config::RunConfig;
use super::manifest::{MonitorOutcomeRecord, RunManifest};
use crate::diagnostics::conserved;
use crate::error::InlsError;
use crate::solver::run;
use crate::spectral::{
    read_snapshot, write_snapshot, SnapshotHeader, Trajectory, TrajectoryMeta,
};

/// Runs the configuration and writes snapshots, the conserved-quantity CSV,
/// and `manifest.json` into `out_dir`.
pub fn execute_run(cfg: &RunConfig, out_dir: &Path) -> Result<(Trajectory, RunManifest), InlsError> {
    std::fs::create_dir_all(out_dir)?;
    let solver_cfg = cfg.to_solver_config()?;
    let u0 = cfg.initial.build(solver_cfg.grid);
    let (traj, monitors) = run(&solver_cfg, u0)?;
    let mut manifest = RunManifest::new(cfg.clone(), MonitorOutcomeRecord::from(&monitors));
    for (i, (t, u)) in traj.times.iter().zip(&traj.snapshots).enumerate() {
        let name = format!("snap_{i:06}.bin");
        let header = SnapshotHeader {
            time: *t,
            p: solver_cfg.p,
            weight_label: solver_cfg.weight.label.clone(),
        };
        write_snapshot(&out_dir.join(&name), u, &header)?;
        manifest.add_output(out_dir, &name)?;
    }
    let report = conserved(&traj, &solver_cfg.weight)?;
    let mut csv = String::from("t,mass,kinetic,potential,energy\n");
    for i in 0..report.times.len() {
        csv.push_str(&format!(
            "{},{},{},{},{}\n",
            report.times[i], report.mass[i], report.kinetic[i], report.potential[i],
            report.energy[i]
        ));
    }
    std::fs::write(out_dir.join("conserved.csv"), csv)?;
    manifest.add_output(out_dir, "conserved.csv")?;
    manifest.save(&out_dir.join("manifest.json"))?;
    Ok((traj, manifest))
}

/// Reconstructs a trajectory from a directory of snapshot files.
pub fn load_trajectory(dir: &Path) -> Result<Trajectory, InlsError> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "bin").unwrap_or(false))
        .collect();
    if entries.is_empty() {
        return Err(InlsError::Validation(format!(
            "no snapshot files in {}",
            dir.display()
        )));
    }
    entries.sort();
    let mut times = Vec::new();
    let mut snaps = Vec::new();
    let mut meta = None;
    for path in entries {
        let (field, header) = read_snapshot(&path)?;
        if meta.is_none() {
            meta = Some(TrajectoryMeta {
                p: header.p,
                weight_label: header.weight_label.clone(),
                solver_settings: format!("loaded from {}", dir.display()),
            });
        }
        times.push(header.time);
        snaps.push(field);
    }
    Ok(Trajectory::new(times, snaps, meta.unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::config::GridConfig;
    use crate::cli::initial::InitialData;
    use crate::weights::WeightSpec;

    fn quick_config() -> RunConfig {
        RunConfig {
            grid: GridConfig {
                n: 32,
                length: 16.0,
            },
            dt: 0.02,
            t_end: 0.1,
            snapshot_stride: 1,
            p: "2".into(),
            weight: WeightSpec::Gaussian {
                amplitude: 1.0,
                width: 1.0,
            },
            initial: InitialData::Gaussian {
                amplitude: 1.0,
                width: 1.0,
                center: (0.0, 0.0),
                velocity: (0.0, 0.0),
            },
            monitors: Default::default(),
        }
    }

    #[test]
    fn run_write_reload() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = quick_config();
        let (traj, manifest) = execute_run(&cfg, dir.path()).unwrap();
        assert_eq!(traj.len(), 6);
        manifest.verify_outputs(dir.path()).unwrap();
        let loaded = load_trajectory(dir.path()).unwrap();
        assert_eq!(loaded.len(), traj.len());
        for (a, b) in traj.snapshots.iter().zip(&loaded.snapshots) {
            assert_eq!(a.data(), b.data());
        }
    }

    #[test]
    fn rerun_is_bit_exact() {
        let d1 = tempfile::tempdir().unwrap();
        let d2 = tempfile::tempdir().unwrap();
        let cfg = quick_config();
        let (_, m1) = execute_run(&cfg, d1.path()).unwrap();
        let (_, m2) = execute_run(&cfg, d2.path()).unwrap();
        let h1: Vec<&str> = m1.outputs.iter().map(|o| o.sha256.as_str()).collect();
        let h2: Vec<&str> = m2.outputs.iter().map(|o| o.sha256.as_str()).collect();
        assert_eq!(h1, h2);
    }
}
