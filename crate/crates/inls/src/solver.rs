//! Strang-split spectral time stepping for i du/dt + Lap u = a(x)|u|^p u.
//!
//! The nonlinear substep is exact: the flow of i du/dt = a|u|^p u conserves
//! |u| pointwise, so it is a pure phase rotation u exp(-i tau a |u|^p). No
//! dealiasing filter is applied (the nonlinearity is non-polynomial for
//! fractional p); instead a resolution monitor tracks the top-octave
//! spectral mass.

use num_complex::Complex64;

use crate::error::InlsError;
use crate::scaling::{ExponentProfileF64, Power};
use crate::spectral::{
    free_propagate, lebesgue_norm, x_norm, y_norm, Field, Grid, LebesgueExponent, Trajectory,
    TrajectoryMeta,
};
use crate::weights::Weight;

/// Full configuration of one run.
#[derive(Clone)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_end: f64,
    pub snapshot_stride: usize,
    pub p: Power,
    pub weight: Weight,
    pub grid: Grid,
    pub monitors: MonitorConfig,
}

/// Monitor thresholds and enforcement switches.
#[derive(Clone, Debug)]
pub struct MonitorConfig {
    /// Abort when L^inf grows by this factor over its initial value.
    pub blowup_factor: f64,
    /// Mass fraction outside |x| < L/4 that trips the domain-escape monitor.
    pub escape_tol: f64,
    /// Whether a tripped escape monitor aborts the run (it is always recorded).
    pub enforce_escape: bool,
    /// Top-octave spectral mass fraction that trips the resolution monitor.
    pub resolution_tol: f64,
    /// Whether a tripped resolution monitor aborts the run.
    pub enforce_resolution: bool,
}

impl Default for MonitorConfig {
    fn default() -> Self {
        MonitorConfig {
            blowup_factor: 1e3,
            escape_tol: 1e-8,
            enforce_escape: false,
            resolution_tol: 1e-8,
            enforce_resolution: false,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), InlsError> {
        if !(self.dt > 0.0) {
            return Err(InlsError::Validation(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.snapshot_stride == 0 {
            return Err(InlsError::Validation("snapshot_stride must be >= 1".into()));
        }
        if !(self.t_end > 0.0) {
            return Err(InlsError::Validation(format!(
                "t_end must be positive, got {}",
                self.t_end
            )));
        }
        Ok(())
    }

    pub fn settings_summary(&self) -> String {
        format!(
            "n={} L={} dt={} t_end={} stride={}",
            self.grid.n(),
            self.grid.length(),
            self.dt,
            self.t_end,
            self.snapshot_stride
        )
    }
}

/// Mutable stepper state with cached weight samples.
pub struct StepperState {
    pub t: f64,
    pub u: Field,
    a_samples: Vec<f64>,
}

impl StepperState {
    pub fn new(u0: Field, weight: &Weight) -> Result<Self, InlsError> {
        let grid = u0.grid();
        let mut a_samples = Vec::with_capacity(grid.len());
        for idx in 0..grid.len() {
            let (x, y) = grid.coord_at(idx);
            let a = weight.value(x, y);
            if !(a >= 0.0) {
                return Err(InlsError::Validation(format!(
                    "weight '{}' is negative at ({x}, {y}): {a}",
                    weight.label
                )));
            }
            a_samples.push(a);
        }
        Ok(StepperState {
            t: 0.0,
            u: u0,
            a_samples,
        })
    }

    pub fn a_samples(&self) -> &[f64] {
        &self.a_samples
    }
}

/// Exact flow of i du/dt = a|u|^p u over time tau: u exp(-i tau a |u|^p).
pub fn nonlinear_substep(u: &Field, a_samples: &[f64], p: &Power, tau: f64) -> Field {
    assert_eq!(a_samples.len(), u.grid().len(), "weight samples misaligned");
    let pf = p.as_f64();
    let mut data = Vec::with_capacity(u.grid().len());
    for (v, &a) in u.data().iter().zip(a_samples) {
        let amp = v.norm();
        let phase = -tau * a * amp.powf(pf);
        data.push(v * Complex64::new(phase.cos(), phase.sin()));
    }
    Field::from_data(u.grid(), data)
}

/// One Strang step: half linear, full nonlinear, half linear.
pub fn strang_step(state: &mut StepperState, cfg: &SolverConfig) -> Result<(), InlsError> {
    let half = free_propagate(&state.u, cfg.dt / 2.0);
    let kicked = nonlinear_substep(&half, &state.a_samples, &cfg.p, cfg.dt);
    state.u = free_propagate(&kicked, cfg.dt / 2.0);
    state.t += cfg.dt;
    if !state.u.is_finite() {
        return Err(InlsError::Numerical(format!(
            "non-finite field at t = {}",
            state.t
        )));
    }
    Ok(())
}

/// Monitor outcomes recorded over a run.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct MonitorOutcome {
    pub max_escape_fraction: f64,
    pub escape_tripped: bool,
    pub max_top_octave_fraction: f64,
    pub resolution_tripped: bool,
    pub max_linf_growth: f64,
}

/// Integrates to t_end, recording every snapshot_stride-th state (and the
/// initial and terminal states).
pub fn run(cfg: &SolverConfig, u0: Field) -> Result<(Trajectory, MonitorOutcome), InlsError> {
    cfg.validate()?;
    if u0.grid() != cfg.grid {
        return Err(InlsError::Validation("initial data grid mismatch".into()));
    }
    let steps = (cfg.t_end / cfg.dt).round() as usize;
    if steps == 0 {
        return Err(InlsError::Validation("t_end shorter than one step".into()));
    }
    let mut state = StepperState::new(u0, &cfg.weight)?;
    let linf0 = state.u.max_abs();
    let escape_radius = cfg.grid.length() / 4.0;
    let mut outcome = MonitorOutcome::default();
    let mut times = vec![0.0];
    let mut snaps = vec![state.u.clone()];
    for k in 1..=steps {
        strang_step(&mut state, cfg).map_err(|e| match e {
            InlsError::Numerical(msg) => InlsError::Numerical(format!("step {k}: {msg}")),
            other => other,
        })?;
        // fixed dt: recompute t from the step index to avoid drift
        state.t = k as f64 * cfg.dt;
        if linf0 > 0.0 {
            let growth = state.u.max_abs() / linf0;
            outcome.max_linf_growth = outcome.max_linf_growth.max(growth);
            if growth > cfg.monitors.blowup_factor {
                return Err(InlsError::Numerical(format!(
                    "blow-up guard tripped at step {k} (t = {}): L-inf grew {growth:.3e}x",
                    state.t
                )));
            }
        }
        if k % cfg.snapshot_stride == 0 || k == steps {
            let esc = state.u.mass_fraction_outside(escape_radius);
            outcome.max_escape_fraction = outcome.max_escape_fraction.max(esc);
            if esc > cfg.monitors.escape_tol {
                outcome.escape_tripped = true;
                if cfg.monitors.enforce_escape {
                    return Err(InlsError::Numerical(format!(
                        "domain-escape monitor tripped at t = {}: fraction {esc:.3e}",
                        state.t
                    )));
                }
            }
            let top = state.u.top_octave_fraction();
            outcome.max_top_octave_fraction = outcome.max_top_octave_fraction.max(top);
            if top > cfg.monitors.resolution_tol {
                outcome.resolution_tripped = true;
                if cfg.monitors.enforce_resolution {
                    return Err(InlsError::Numerical(format!(
                        "resolution monitor tripped at t = {}: top octave {top:.3e}",
                        state.t
                    )));
                }
            }
            times.push(state.t);
            snaps.push(state.u.clone());
        }
    }
    let meta = TrajectoryMeta {
        p: cfg.p,
        weight_label: cfg.weight.label.clone(),
        solver_settings: cfg.settings_summary(),
    };
    Ok((Trajectory::new(times, snaps, meta), outcome))
}

/// Result of the Duhamel consistency check over a window.
#[derive(Clone, Debug)]
pub struct DuhamelReport {
    /// L2 norm of u(t1) - exp(i(t1-t0)Lap)u(t0) + i Int exp(i(t1-s)Lap) N(s) ds.
    pub residual: f64,
    /// Empirical ratio ||Duhamel integral||_X / ||a|u|^p u||_Y.
    pub exotic_ratio: f64,
    pub snapshots_used: usize,
}

fn nonlinearity(u: &Field, weight: &Weight, p: &Power) -> Field {
    let grid = u.grid();
    let pf = p.as_f64();
    let mut data = Vec::with_capacity(grid.len());
    for (idx, v) in u.data().iter().enumerate() {
        let (x, y) = grid.coord_at(idx);
        data.push(v * weight.value(x, y) * v.norm().powf(pf));
    }
    Field::from_data(grid, data)
}

/// Evaluates the Duhamel identity over [t0, t1] by trapezoidal quadrature of
/// the interaction integral, and the exotic-Strichartz ratio of the integral
/// term against the nonlinearity.
pub fn duhamel_residual(
    traj: &Trajectory,
    weight: &Weight,
    window: (f64, f64),
    prof: &ExponentProfileF64,
) -> Result<DuhamelReport, InlsError> {
    let (t0, t1) = window;
    let idx = traj.indices_in(t0, t1);
    if idx.len() < 16 {
        return Err(InlsError::Validation(format!(
            "Duhamel check needs >= 16 snapshots in [{t0}, {t1}], found {}",
            idx.len()
        )));
    }
    let ta = traj.times[idx[0]];
    let tb = traj.times[*idx.last().unwrap()];
    // N(s) pulled back to time tb: exp(i(tb - s)Lap) N(u(s))
    let pulled: Vec<Field> = idx
        .iter()
        .map(|&i| {
            let n = nonlinearity(&traj.snapshots[i], weight, &traj.meta.p);
            free_propagate(&n, tb - traj.times[i])
        })
        .collect();
    let mut integral = Field::zeros(traj.snapshots[0].grid());
    for w in 0..idx.len() - 1 {
        let dt = traj.times[idx[w + 1]] - traj.times[idx[w]];
        integral = integral.add(
            &pulled[w]
                .add(&pulled[w + 1])
                .scale(Complex64::new(0.5 * dt, 0.0)),
        );
    }
    let linear = free_propagate(&traj.snapshots[idx[0]], tb - ta);
    let residual_field = traj.snapshots[*idx.last().unwrap()]
        .sub(&linear)
        .add(&integral.scale(Complex64::new(0.0, 1.0)));
    let residual = lebesgue_norm(&residual_field, LebesgueExponent::Finite(2.0));

    // exotic ratio: X-norm of the running Duhamel integral vs Y-norm of N
    let grid = traj.snapshots[0].grid();
    let times: Vec<f64> = idx.iter().map(|&i| traj.times[i]).collect();
    let mut running = Field::zeros(grid);
    let mut duhamel_snaps = vec![Field::zeros(grid)];
    for w in 0..idx.len() - 1 {
        let dt = times[w + 1] - times[w];
        // accumulate at time tb, then shift the partial sum back to t_{w+1}
        running = running.add(
            &pulled[w]
                .add(&pulled[w + 1])
                .scale(Complex64::new(0.5 * dt, 0.0)),
        );
        duhamel_snaps.push(free_propagate(&running, times[w + 1] - tb));
    }
    let nl_snaps: Vec<Field> = idx
        .iter()
        .map(|&i| nonlinearity(&traj.snapshots[i], weight, &traj.meta.p))
        .collect();
    let meta = traj.meta.clone();
    let duhamel_traj = Trajectory::new(times.clone(), duhamel_snaps, meta.clone());
    let nl_traj = Trajectory::new(times, nl_snaps, meta);
    let x = x_norm(&duhamel_traj, prof, (ta, tb))?;
    let y = y_norm(&nl_traj, prof, (ta, tb))?;
    let exotic_ratio = if y == 0.0 { 0.0 } else { x / y };
    Ok(DuhamelReport {
        residual,
        exotic_ratio,
        snapshots_used: idx.len(),
    })
}

/// Report of the randomized pointwise-estimate sweep for f(z) = |z|^p z.
#[derive(Clone, Debug)]
pub struct PointwiseReport {
    pub samples: usize,
    /// max over samples of |f(c1+c2)-f(c1)| / (|c2|^{p+1} + |c2||c1|^p)
    pub max_ratio_difference: f64,
    /// max over samples of the J-term variant ratio
    pub max_ratio_multi: f64,
}

fn f_power(z: Complex64, p: f64) -> Complex64 {
    z * z.norm().powf(p)
}

/// Verifies the pointwise estimates for f(z) = |z|^p z on given sample pairs:
/// |f(c1+c2)-f(c1)| <= C (|c2|^{p+1} + |c2||c1|^p) and the multi-term
/// variant |f(sum c_j)| <= C sum_j |c_j| (sum_k |c_k|)^p, reporting the max
/// observed ratios (the empirical constants).
pub fn pointwise_inequality_check(
    samples: &[(Complex64, Complex64)],
    p: &Power,
) -> Result<PointwiseReport, InlsError> {
    if samples.is_empty() {
        return Err(InlsError::Validation("empty sample list".into()));
    }
    let pf = p.as_f64();
    let mut max_diff = 0.0f64;
    let mut max_multi = 0.0f64;
    for &(c1, c2) in samples {
        let lhs = (f_power(c1 + c2, pf) - f_power(c1, pf)).norm();
        let rhs = c2.norm().powf(pf + 1.0) + c2.norm() * c1.norm().powf(pf);
        if rhs > 0.0 {
            max_diff = max_diff.max(lhs / rhs);
        } else if lhs > 0.0 {
            return Err(InlsError::Numerical(
                "pointwise bound has zero majorant with nonzero difference".into(),
            ));
        }
        let total = c1.norm() + c2.norm();
        let lhs2 = f_power(c1 + c2, pf).norm();
        let rhs2 = total * total.powf(pf);
        if rhs2 > 0.0 {
            max_multi = max_multi.max(lhs2 / rhs2);
        }
    }
    Ok(PointwiseReport {
        samples: samples.len(),
        max_ratio_difference: max_diff,
        max_ratio_multi: max_multi,
    })
}
