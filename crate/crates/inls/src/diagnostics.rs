//! Conserved quantities, the weighted virial Z(t)-norm with its dt/t
//! integral, and scattering detectors built on the free-flow pullback.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::InlsError;
use crate::scaling::ExponentProfileF64;
use crate::solver::{run, SolverConfig};
use crate::spectral::{
    free_propagate, gradient, h1_norm, x_norm, Field, Trajectory,
};
use crate::weights::{bracket, Weight};

/// Mass, kinetic and potential energy per snapshot.
#[derive(Clone, Debug, Serialize)]
pub struct ConservedReport {
    pub times: Vec<f64>,
    pub mass: Vec<f64>,
    pub kinetic: Vec<f64>,
    pub potential: Vec<f64>,
    pub energy: Vec<f64>,
}

/// M = int |u|^2, kinetic = 1/2 int |grad u|^2, potential =
/// int a |u|^{p+2} / (p+2), all by grid quadrature with spectral gradients.
pub fn conserved(traj: &Trajectory, weight: &Weight) -> Result<ConservedReport, InlsError> {
    if traj.is_empty() {
        return Err(InlsError::Validation("empty trajectory".into()));
    }
    let p = traj.meta.p.as_f64();
    let mut report = ConservedReport {
        times: traj.times.clone(),
        mass: Vec::new(),
        kinetic: Vec::new(),
        potential: Vec::new(),
        energy: Vec::new(),
    };
    for u in &traj.snapshots {
        let grid = u.grid();
        let h2 = grid.cell_area();
        report.mass.push(u.mass());
        let (gx, gy) = gradient(u);
        let kin = 0.5 * (gx.mass() + gy.mass());
        let mut pot = 0.0;
        for (idx, v) in u.data().iter().enumerate() {
            let (x, y) = grid.coord_at(idx);
            pot += weight.value(x, y) * v.norm().powf(p + 2.0);
        }
        pot *= h2 / (p + 2.0);
        report.kinetic.push(kin);
        report.potential.push(pot);
        report.energy.push(kin + pot);
    }
    Ok(report)
}

/// The weighted virial norm at time t >= 1:
/// || t^{1/2} (x + 2it grad) f / (<t>^3 + |x|^3)^{1/2} ||_{L2}.
/// With `weightless` the t^{1/2} factor and the spatial denominator are
/// dropped, returning ||(x + 2it grad) f||_{L2} (used by the gauge identity).
pub fn z_norm(f: &Field, t: f64, weightless: bool) -> Result<f64, InlsError> {
    if !(t >= 1.0) {
        return Err(InlsError::Validation(format!(
            "Z(t) norm is defined for t >= 1, got {t}"
        )));
    }
    let grid = f.grid();
    let (gx, gy) = gradient(f);
    let two_it = Complex64::new(0.0, 2.0 * t);
    let t3 = bracket(t).powi(3);
    let h2 = grid.cell_area();
    let mut acc = 0.0;
    for idx in 0..grid.len() {
        let (x, y) = grid.coord_at(idx);
        let v = f.data()[idx];
        let wx = x * v + two_it * gx.data()[idx];
        let wy = y * v + two_it * gy.data()[idx];
        let mag = wx.norm_sqr() + wy.norm_sqr();
        if weightless {
            acc += mag;
        } else {
            let r3 = (x * x + y * y).sqrt().powi(3);
            acc += t * mag / (t3 + r3);
        }
    }
    Ok((acc * h2).sqrt())
}

/// Z-norm series, running dt/t integral and infimum over a trajectory.
#[derive(Clone, Debug, Serialize)]
pub struct MorawetzReport {
    pub times: Vec<f64>,
    pub z_norm_sq: Vec<f64>,
    pub integral: Vec<f64>,
    pub infimum: f64,
}

impl MorawetzReport {
    pub fn total(&self) -> f64 {
        *self.integral.last().unwrap()
    }
}

/// Trapezoidal quadrature of ||u||_Z^2 dt/t over the t >= 1 part of the
/// trajectory; requires at least 32 snapshots there.
pub fn morawetz(traj: &Trajectory) -> Result<MorawetzReport, InlsError> {
    let idx: Vec<usize> = traj
        .times
        .iter()
        .enumerate()
        .filter(|(_, &t)| t >= 1.0 - 1e-12)
        .map(|(i, _)| i)
        .collect();
    if idx.len() < 32 {
        return Err(InlsError::Validation(format!(
            "virial integral needs >= 32 snapshots with t >= 1, found {}",
            idx.len()
        )));
    }
    let mut times = Vec::with_capacity(idx.len());
    let mut zsq = Vec::with_capacity(idx.len());
    let mut infimum = f64::INFINITY;
    for &i in &idx {
        let t = traj.times[i].max(1.0);
        let z = z_norm(&traj.snapshots[i], t, false)?;
        times.push(t);
        zsq.push(z * z);
        infimum = infimum.min(z);
    }
    let mut integral = vec![0.0];
    for w in 0..times.len() - 1 {
        let dt = times[w + 1] - times[w];
        let inc = 0.5 * (zsq[w] / times[w] + zsq[w + 1] / times[w + 1]) * dt;
        integral.push(integral[w] + inc);
    }
    Ok(MorawetzReport {
        times,
        z_norm_sq: zsq,
        integral,
        infimum,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    ScatteringConsistent,
    Inconclusive,
}

/// Late-time asymptotics report.
#[derive(Clone, Debug, Serialize)]
pub struct ScatteringReport {
    pub times: Vec<f64>,
    pub potential_energy: Vec<f64>,
    /// Dyadic times used for the pullback drift pairs.
    pub dyadic_times: Vec<f64>,
    /// H1 distance between successive free-flow pullbacks exp(-it Lap)u(t).
    pub pullback_drift: Vec<f64>,
    /// X-norm over [0, t_i] for each dyadic t_i.
    pub x_norm_accumulation: Vec<f64>,
    pub verdict: Verdict,
}

/// Detects scattering-consistent behaviour: potential energy decayed by
/// >= 10x from its max, and pullback drift monotonically decreasing over the
/// last three dyadic pairs.
pub fn scattering_probe(
    traj: &Trajectory,
    weight: &Weight,
    prof: &ExponentProfileF64,
) -> Result<ScatteringReport, InlsError> {
    let (_, t_max) = traj.span();
    if t_max < 16.0 {
        return Err(InlsError::Validation(format!(
            "scattering probe needs a trajectory reaching t >= 16, got {t_max}"
        )));
    }
    let cons = conserved(traj, weight)?;
    // dyadic probe times 8, 16, 32, ... up to the trajectory end
    let mut dyadic = Vec::new();
    let mut t = 8.0;
    while t <= t_max + 1e-9 {
        dyadic.push(t);
        t *= 2.0;
    }
    let pullbacks: Vec<Field> = dyadic
        .iter()
        .map(|&t| {
            let i = traj.nearest_index(t);
            free_propagate(&traj.snapshots[i], -traj.times[i])
        })
        .collect();
    let drift: Vec<f64> = pullbacks
        .windows(2)
        .map(|w| h1_norm(&w[1].sub(&w[0])))
        .collect();
    let x_acc: Vec<f64> = dyadic
        .iter()
        .map(|&t| x_norm(traj, prof, (traj.times[0], t)))
        .collect::<Result<_, _>>()?;
    let pot_max = cons.potential.iter().cloned().fold(0.0, f64::max);
    let pot_final = *cons.potential.last().unwrap();
    let decayed = pot_max == 0.0 || pot_final <= pot_max / 10.0;
    // monotone decrease over the last dyadic pairs (up to three, at least two)
    let tail = drift.len().min(3);
    let monotone = tail >= 2
        && drift[drift.len() - tail..]
            .windows(2)
            .all(|w| w[1] <= w[0] + 1e-15);
    let verdict = if decayed && monotone {
        Verdict::ScatteringConsistent
    } else {
        Verdict::Inconclusive
    };
    Ok(ScatteringReport {
        times: cons.times,
        potential_energy: cons.potential,
        dyadic_times: dyadic,
        pullback_drift: drift,
        x_norm_accumulation: x_acc,
        verdict,
    })
}

/// Stability echo: distance between perturbed and unperturbed runs.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbationReport {
    pub delta_h1: f64,
    pub x_difference: f64,
    pub ratio: f64,
}

/// Runs u0 and u0 + delta through the same configuration and measures the
/// X-norm of the difference against ||delta||_{H1}.
pub fn perturbation_experiment(
    cfg: &SolverConfig,
    u0: &Field,
    delta: &Field,
    prof: &ExponentProfileF64,
) -> Result<PerturbationReport, InlsError> {
    let delta_h1 = h1_norm(delta);
    let (base, _) = run(cfg, u0.clone())?;
    let (pert, _) = run(cfg, u0.add(delta))?;
    let diffs: Vec<Field> = base
        .snapshots
        .iter()
        .zip(&pert.snapshots)
        .map(|(a, b)| b.sub(a))
        .collect();
    let diff_traj = Trajectory::new(base.times.clone(), diffs, base.meta.clone());
    let x_difference = x_norm(&diff_traj, prof, base.span())?;
    let ratio = if delta_h1 == 0.0 {
        0.0
    } else {
        x_difference / delta_h1
    };
    Ok(PerturbationReport {
        delta_h1,
        x_difference,
        ratio,
    })
}
