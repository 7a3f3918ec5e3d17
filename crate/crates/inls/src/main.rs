use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use inls::cli::{
    cmd_cutoffs, cmd_diagnose, cmd_exponents, cmd_plot, cmd_preset_list, cmd_run,
    cmd_weight_check, run_preset, sweep,
};
use inls::InlsError;

#[derive(Parser)]
#[command(name = "inls", about = "2d inhomogeneous NLS laboratory", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the scaling exponent profile and identity checks for a power p
    Exponents {
        #[arg(long)]
        p: String,
    },
    /// Check admissibility of a catalog weight or a weight config file
    WeightCheck {
        #[arg(long)]
        weight: String,
        #[arg(long)]
        p: String,
    },
    /// Integrate a configuration file and write snapshots plus a manifest
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compute diagnostics over a snapshot directory
    Diagnose {
        #[arg(long)]
        traj: PathBuf,
        #[arg(long)]
        conserved: bool,
        #[arg(long)]
        morawetz: bool,
        #[arg(long)]
        scattering: bool,
    },
    /// Render a CSV time series to a PNG
    Plot {
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Verify the triangular cutoff properties along a schedule
    Cutoffs {
        #[arg(long)]
        p: String,
        #[arg(long)]
        weight: String,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Run an experiment preset
    Preset {
        #[command(subcommand)]
        action: PresetAction,
    },
    /// Sweep one parameter axis of a preset
    Sweep {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        axis: String,
        #[arg(long, value_delimiter = ',')]
        values: Vec<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Subcommand)]
enum PresetAction {
    /// List available presets
    List,
    /// Execute a preset by name
    Run {
        name: String,
        /// key=value overrides (dt, t_end, p, n, length, amplitude)
        #[arg(long = "set")]
        set: Vec<String>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn parse_overrides(set: &[String]) -> Result<Vec<(String, String)>, InlsError> {
    set.iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .ok_or_else(|| InlsError::Validation(format!("override '{kv}' is not key=value")))
        })
        .collect()
}

fn dispatch(cli: Cli) -> Result<(), InlsError> {
    match cli.command {
        Command::Exponents { p } => print!("{}", cmd_exponents(&p)?),
        Command::WeightCheck { weight, p } => print!("{}", cmd_weight_check(&weight, &p)?),
        Command::Run { config, out } => print!("{}", cmd_run(&config, &out)?),
        Command::Diagnose {
            traj,
            conserved,
            morawetz,
            scattering,
        } => {
            // default to all diagnostics when none is selected
            let all = !(conserved || morawetz || scattering);
            print!(
                "{}",
                cmd_diagnose(
                    &traj,
                    conserved || all,
                    morawetz || all,
                    scattering || all
                )?
            )
        }
        Command::Plot { csv, out } => print!("{}", cmd_plot(&csv, &out)?),
        Command::Cutoffs {
            p,
            weight,
            schedule,
        } => print!("{}", cmd_cutoffs(&p, &weight, &schedule)?),
        Command::Preset { action } => match action {
            PresetAction::List => print!("{}", cmd_preset_list()),
            PresetAction::Run { name, set, out } => {
                let overrides = parse_overrides(&set)?;
                let manifest = run_preset(&name, &overrides, &out)?;
                println!(
                    "preset '{name}' complete, config hash {}",
                    manifest.config_hash
                );
            }
        },
        Command::Sweep {
            preset,
            axis,
            values,
            out,
        } => {
            let results = sweep(&preset, &axis, &values, &out)?;
            for (v, r) in values.iter().zip(&results) {
                match r {
                    Ok(_) => println!("{axis}={v}: ok"),
                    Err(e) => println!("{axis}={v}: FAILED ({e})"),
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ (InlsError::Validation(_) | InlsError::Format(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
