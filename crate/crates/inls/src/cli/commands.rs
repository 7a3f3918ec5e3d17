//! Subcommand implementations shared by the binary and the tests. Each
//! returns the text that the binary prints.

use std::path::Path;
use std::str::FromStr;

use super::config::{RunConfig, SCHEMA_VERSION};
use super::plot::{read_csv_series, render_series};
use super::runner::{execute_run, load_trajectory};
use crate::diagnostics::{conserved, morawetz, scattering_probe};
use crate::error::InlsError;
use crate::geometry::{verify_cutoff_properties, TranslationSequence};
use crate::scaling::{exponent_profile, verify_identities, Power};
use crate::weights::{
    check_admissible, estimate_angular_limit, weight_by_name, SamplingConfig, WeightSpec,
};

/// `exponents --p <rational>`: table plus JSON.
pub fn cmd_exponents(p_str: &str) -> Result<String, InlsError> {
    let p = Power::from_str(p_str)?;
    let prof = exponent_profile(&p);
    let report = verify_identities(&p);
    let mut out = String::new();
    out.push_str(&format!("exponent profile at p = {p}\n"));
    out.push_str(&format!("  rho   = {}\n", prof.rho));
    out.push_str(&format!("  s     = {}\n", prof.s));
    out.push_str(&format!("  q     = {}\n", prof.q));
    out.push_str(&format!("  r     = {}\n", prof.r));
    out.push_str(&format!("  alpha = {}\n", prof.alpha));
    out.push_str(&format!("  beta  = {}\n", prof.beta));
    for c in &report.checks {
        out.push_str(&format!(
            "  [{}] {}: {}\n",
            if c.pass { "ok" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let json = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "p": p.to_string(),
        "rho": prof.rho.to_string(),
        "s": prof.s.to_string(),
        "q": prof.q.to_string(),
        "r": prof.r.to_string(),
        "alpha": prof.alpha.to_string(),
        "beta": prof.beta.to_string(),
        "identities": report,
        "all_pass": report.all_pass(),
    });
    out.push_str(&serde_json::to_string_pretty(&json).unwrap());
    out.push('\n');
    if !report.all_pass() {
        return Err(InlsError::Validation(format!(
            "identity check failed at p = {p}\n{out}"
        )));
    }
    Ok(out)
}

fn resolve_weight(name_or_file: &str) -> Result<crate::weights::Weight, InlsError> {
    if Path::new(name_or_file).exists() {
        let text = std::fs::read_to_string(name_or_file)?;
        let spec: WeightSpec =
            toml::from_str(&text).map_err(|e| InlsError::Format(format!("bad weight file: {e}")))?;
        Ok(spec.build())
    } else {
        weight_by_name(name_or_file)
    }
}

/// `weight-check --weight <name|file> --p <rational>`.
pub fn cmd_weight_check(weight: &str, p_str: &str) -> Result<String, InlsError> {
    let p = Power::from_str(p_str)?;
    let w = resolve_weight(weight)?;
    let report = check_admissible(&w, &p, &SamplingConfig::default());
    let json = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "report": report,
    });
    Ok(serde_json::to_string_pretty(&json).unwrap() + "\n")
}

/// `run --config <file> --out <dir>`.
pub fn cmd_run(config: &Path, out_dir: &Path) -> Result<String, InlsError> {
    let cfg = RunConfig::load(config)?;
    let (traj, manifest) = execute_run(&cfg, out_dir)?;
    Ok(format!(
        "wrote {} snapshots to {} (config hash {})\n",
        traj.len(),
        out_dir.display(),
        manifest.config_hash
    ))
}

/// `diagnose --traj <dir> [--conserved] [--morawetz] [--scattering]`.
pub fn cmd_diagnose(
    traj_dir: &Path,
    with_conserved: bool,
    with_morawetz: bool,
    with_scattering: bool,
) -> Result<String, InlsError> {
    let traj = load_trajectory(traj_dir)?;
    let weight = weight_by_name(&traj.meta.weight_label)?;
    let prof = exponent_profile(&traj.meta.p).to_f64();
    let mut summary = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "snapshots": traj.len(),
        "span": traj.span(),
    });
    let mut out = String::new();
    if with_conserved {
        let rep = conserved(&traj, &weight)?;
        let mut csv = String::from("t,mass,kinetic,potential,energy\n");
        for i in 0..rep.times.len() {
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                rep.times[i], rep.mass[i], rep.kinetic[i], rep.potential[i], rep.energy[i]
            ));
        }
        std::fs::write(traj_dir.join("diagnose_conserved.csv"), csv)?;
        let drift = rep
            .mass
            .iter()
            .map(|m| (m - rep.mass[0]).abs() / rep.mass[0].max(1e-300))
            .fold(0.0, f64::max);
        summary["max_mass_drift"] = serde_json::json!(drift);
        out.push_str("wrote diagnose_conserved.csv\n");
    }
    if with_morawetz {
        let rep = morawetz(&traj)?;
        let mut csv = String::from("t,z_norm_sq,integral\n");
        for i in 0..rep.times.len() {
            csv.push_str(&format!(
                "{},{},{}\n",
                rep.times[i], rep.z_norm_sq[i], rep.integral[i]
            ));
        }
        std::fs::write(traj_dir.join("diagnose_morawetz.csv"), csv)?;
        summary["morawetz_integral"] = serde_json::json!(rep.total());
        summary["z_infimum"] = serde_json::json!(rep.infimum);
        out.push_str("wrote diagnose_morawetz.csv\n");
    }
    if with_scattering {
        let rep = scattering_probe(&traj, &weight, &prof)?;
        let mut csv = String::from("t,potential_energy\n");
        for i in 0..rep.times.len() {
            csv.push_str(&format!("{},{}\n", rep.times[i], rep.potential_energy[i]));
        }
        std::fs::write(traj_dir.join("diagnose_scattering.csv"), csv)?;
        summary["scattering_verdict"] = serde_json::json!(format!("{:?}", rep.verdict));
        summary["pullback_drift"] = serde_json::json!(rep.pullback_drift);
        summary["x_norm_accumulation"] = serde_json::json!(rep.x_norm_accumulation);
        out.push_str("wrote diagnose_scattering.csv\n");
    }
    std::fs::write(
        traj_dir.join("diagnose_summary.json"),
        serde_json::to_string_pretty(&summary).unwrap(),
    )?;
    out.push_str("wrote diagnose_summary.json\n");
    Ok(out)
}

/// `plot --csv <file> --out <png>`.
pub fn cmd_plot(csv: &Path, out: &Path) -> Result<String, InlsError> {
    let series = read_csv_series(csv)?;
    render_series(&series, out)?;
    Ok(format!("rendered {} series to {}\n", series.len(), out.display()))
}

/// Schedule file format for `cutoffs`: TOML with base, count, limit_angle,
/// drift (theta_n = limit_angle + drift/(n+1)).
#[derive(serde::Deserialize)]
pub struct ScheduleFile {
    pub base: f64,
    pub count: usize,
    #[serde(default)]
    pub limit_angle: f64,
    #[serde(default)]
    pub drift: f64,
}

/// `cutoffs --p <rational> --weight <name> --schedule <file>`.
pub fn cmd_cutoffs(p_str: &str, weight: &str, schedule: &Path) -> Result<String, InlsError> {
    let p = Power::from_str(p_str)?;
    let w = resolve_weight(weight)?;
    let text = std::fs::read_to_string(schedule)?;
    let sched: ScheduleFile =
        toml::from_str(&text).map_err(|e| InlsError::Format(format!("bad schedule: {e}")))?;
    let seq = TranslationSequence::geometric(sched.base, sched.count, sched.limit_angle, sched.drift);
    let limit = estimate_angular_limit(&w, &SamplingConfig::default());
    // angular limit at the limiting direction, from the sampled profile
    let theta_idx = limit
        .thetas
        .iter()
        .enumerate()
        .min_by(|a, b| {
            let da = (a.1 - sched.limit_angle).abs();
            let db = (b.1 - sched.limit_angle).abs();
            da.partial_cmp(&db).unwrap()
        })
        .map(|(i, _)| i)
        .unwrap();
    let atilde = limit.samples[theta_idx];
    let n_list: Vec<usize> = (0..sched.count).collect();
    let report = verify_cutoff_properties(&seq, &p, &w, atilde, &n_list)?;
    let json = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "atilde_at_limit": atilde,
        "report": report,
    });
    Ok(serde_json::to_string_pretty(&json).unwrap() + "\n")
}

/// `preset list`.
pub fn cmd_preset_list() -> String {
    let mut out = String::new();
    for p in super::presets::preset_catalog() {
        out.push_str(&format!(
            "{:<22} p={} weight={} t_end={}{}\n",
            p.name,
            p.config.p,
            p.config.weight.build().label,
            p.config.t_end,
            if p.matrix.is_empty() {
                String::new()
            } else {
                format!(" matrix={} cells", p.matrix.len())
            }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_text() {
        let out = cmd_exponents("2").unwrap();
        assert!(out.contains("\"q\": \"8\""));
        assert!(out.contains("all_pass"));
        assert!(cmd_exponents("0").is_err());
        assert!(cmd_exponents("x").is_err());
    }

    #[test]
    fn weight_check_json() {
        let out = cmd_weight_check("gaussian", "2").unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["report"]["overall"], true);
        assert!(cmd_weight_check("no-such-weight", "2").is_err());
    }

    #[test]
    fn weight_from_file() {
        let dir = tempfile::tempdir().unwrap();
        let f = dir.path().join("w.toml");
        std::fs::write(&f, "family = \"constant\"\nvalue = 2.0\n").unwrap();
        let out = cmd_weight_check(f.to_str().unwrap(), "3").unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["report"]["weight"], "constant");
    }

    #[test]
    fn run_and_diagnose_and_plot() {
        let dir = tempfile::tempdir().unwrap();
        let cfg_path = dir.path().join("run.toml");
        std::fs::write(
            &cfg_path,
            r#"
            dt = 0.02
            t_end = 0.1
            p = "2"
            [grid]
            n = 32
            length = 16.0
            [weight]
            family = "gaussian"
            [initial]
            kind = "gaussian"
            "#,
        )
        .unwrap();
        let out_dir = dir.path().join("out");
        cmd_run(&cfg_path, &out_dir).unwrap();
        let msg = cmd_diagnose(&out_dir, true, false, false).unwrap();
        assert!(msg.contains("diagnose_conserved.csv"));
        let png = dir.path().join("c.png");
        cmd_plot(&out_dir.join("diagnose_conserved.csv"), &png).unwrap();
        assert!(png.exists());
    }

    #[test]
    fn cutoffs_command() {
        let dir = tempfile::tempdir().unwrap();
        let sched = dir.path().join("sched.toml");
        std::fs::write(&sched, "base = 16.0\ncount = 6\n").unwrap();
        let out = cmd_cutoffs("3", "anisotropic", &sched).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(v["report"]["c3_pass"].as_bool().unwrap());
        assert!((v["atilde_at_limit"].as_f64().unwrap() - 3.0).abs() < 1e-6);
    }

    #[test]
    fn preset_list_names() {
        let out = cmd_preset_list();
        for name in ["free-gaussian", "small-data-scatter", "morawetz-matrix"] {
            assert!(out.contains(name), "missing {name} in:\n{out}");
        }
    }
}
