//! Inhomogeneity weights a(x): the built-in catalog, admissibility checks, and
//! the angular limit at spatial infinity.
//!
//! A weight carries analytic value and gradient closures. Admissibility is
//! checked by sampling (nonnegativity, repulsivity x . grad a <= 0) and by
//! radial quadrature across radius doublings (integrability); the angular
//! limit is estimated along rays.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::InlsError;
use crate::scaling::Power;

type ValueFn = dyn Fn(f64, f64) -> f64 + Send + Sync;
type GradFn = dyn Fn(f64, f64) -> (f64, f64) + Send + Sync;

/// Known exact norms of a catalog weight, used as test oracles.
#[derive(Clone, Debug, Default)]
pub struct AnalyticNorms {
    pub l1: Option<f64>,
    pub linf: Option<f64>,
}

/// An inhomogeneity a(x) with analytic value and gradient.
#[derive(Clone)]
pub struct Weight {
    pub label: String,
    value: Arc<ValueFn>,
    gradient: Arc<GradFn>,
    pub analytic_norms: AnalyticNorms,
}

impl Weight {
    pub fn new(
        label: &str,
        value: Arc<ValueFn>,
        gradient: Arc<GradFn>,
        analytic_norms: AnalyticNorms,
    ) -> Self {
        Weight {
            label: label.to_string(),
            value,
            gradient,
            analytic_norms,
        }
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        (self.value)(x, y)
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        (self.gradient)(x, y)
    }
}

impl std::fmt::Debug for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Weight").field("label", &self.label).finish()
    }
}

/// Sampling parameters for admissibility and angular-limit checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplingConfig {
    /// Half-extent of the sample grid for pointwise checks.
    pub r_max: f64,
    /// Points per axis of the pointwise sample grid.
    pub grid_points: usize,
    /// Tolerance on x . grad a <= tol.
    pub repulsivity_tol: f64,
    /// Number of theta samples for the angular limit.
    pub theta_points: usize,
    /// Radii for the angular limit schedule (strictly increasing).
    pub radius_schedule: Vec<f64>,
    /// Tail-variation tolerance per ray.
    pub tail_tol: f64,
    /// Base radius for the L1 doubling quadrature.
    pub l1_base_radius: f64,
    /// Number of radius doublings for the L1 quadrature.
    pub l1_doublings: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            r_max: 20.0,
            grid_points: 101,
            repulsivity_tol: 1e-12,
            theta_points: 256,
            radius_schedule: vec![1.0, 2.0, 4.0, 8.0, 10.0],
            tail_tol: 1e-6,
            l1_base_radius: 8.0,
            l1_doublings: 4,
        }
    }
}

/// Outcome of one pass/fail check with an optional witness point.
#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub pass: bool,
    pub witness: Option<(f64, f64)>,
    pub detail: String,
}

/// Tri-state for the integrability quadrature.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Integrability {
    Converged,
    Diverging,
    Inconclusive,
}

/// Full admissibility report for a weight at a given power.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub weight: String,
    pub p: String,
    pub nonnegative: CheckOutcome,
    pub repulsive: CheckOutcome,
    /// sup-norm estimates for a and |grad a| on the sample grid.
    pub linf_a: f64,
    pub linf_grad: f64,
    /// L1 status for a (only required when p <= 2).
    pub l1_required: bool,
    pub l1_status: Integrability,
    pub l1_estimate: f64,
    pub atilde_continuous: CheckOutcome,
    /// Largest increment of the estimated angular limit between adjacent
    /// theta samples (a modulus-of-continuity estimate, not a proof).
    pub atilde_modulus: f64,
    pub overall: bool,
}

/// Angular limit estimate along rays.
#[derive(Clone, Debug, Serialize)]
pub struct AngularLimit {
    pub thetas: Vec<f64>,
    pub samples: Vec<f64>,
    pub radius_schedule: Vec<f64>,
    /// |a(R_last) - a(R_prev)| per theta.
    pub tail_variation: Vec<f64>,
    /// Indices of rays whose tail variation exceeds the tolerance.
    pub flagged: Vec<usize>,
}

impl AngularLimit {
    pub fn max_tail_variation(&self) -> f64 {
        self.tail_variation.iter().cloned().fold(0.0, f64::max)
    }
}

/// Samples a along rays at the configured radius schedule.
pub fn estimate_angular_limit(w: &Weight, cfg: &SamplingConfig) -> AngularLimit {
    let m = cfg.theta_points;
    let mut thetas = Vec::with_capacity(m);
    let mut samples = Vec::with_capacity(m);
    let mut tail = Vec::with_capacity(m);
    let mut flagged = Vec::new();
    let rs = &cfg.radius_schedule;
    assert!(rs.len() >= 2, "radius schedule needs at least two radii");
    assert!(
        rs.windows(2).all(|w| w[1] > w[0]),
        "radius schedule must be strictly increasing"
    );
    for i in 0..m {
        let theta = 2.0 * PI * i as f64 / m as f64;
        let last = rs[rs.len() - 1];
        let prev = rs[rs.len() - 2];
        let v_last = w.value(last * theta.cos(), last * theta.sin());
        let v_prev = w.value(prev * theta.cos(), prev * theta.sin());
        let var = (v_last - v_prev).abs();
        if var > cfg.tail_tol {
            flagged.push(i);
        }
        thetas.push(theta);
        samples.push(v_last);
        tail.push(var);
    }
    AngularLimit {
        thetas,
        samples,
        radius_schedule: rs.clone(),
        tail_variation: tail,
        flagged,
    }
}

/// Quadrature of a over the disk of radius `radius` in polar coordinates
/// (composite Simpson in r, trapezoid in theta).
fn disk_l1(w: &Weight, radius: f64, nr: usize, ntheta: usize) -> f64 {
    let nr = if nr % 2 == 0 { nr } else { nr + 1 };
    let dr = radius / nr as f64;
    let dtheta = 2.0 * PI / ntheta as f64;
    let mut total = 0.0;
    for j in 0..ntheta {
        let theta = j as f64 * dtheta;
        let (c, s) = (theta.cos(), theta.sin());
        // Simpson over r of a(r cos, r sin) * r
        let f = |r: f64| w.value(r * c, r * s) * r;
        let mut acc = f(0.0) + f(radius);
        for i in 1..nr {
            let r = i as f64 * dr;
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(r);
        }
        total += acc * dr / 3.0;
    }
    total * dtheta
}

/// L1 convergence test across radius doublings. A < 1% change over the final
/// two doublings counts as converged; steadily growing increments count as
/// diverging; anything else is inconclusive.
fn l1_doubling_study(w: &Weight, cfg: &SamplingConfig) -> (Integrability, f64) {
    let mut values = Vec::new();
    let mut radius = cfg.l1_base_radius;
    for _ in 0..=cfg.l1_doublings {
        let nr = (256.0 * (radius / cfg.l1_base_radius)).ceil() as usize;
        values.push(disk_l1(w, radius, nr.min(4096), 128));
        radius *= 2.0;
    }
    let n = values.len();
    let last = values[n - 1];
    if last == 0.0 {
        return (Integrability::Converged, 0.0);
    }
    let rel1 = (values[n - 1] - values[n - 2]).abs() / last.abs();
    let rel2 = (values[n - 2] - values[n - 3]).abs() / last.abs();
    if rel1 < 0.01 && rel2 < 0.01 {
        return (Integrability::Converged, last);
    }
    // increments per doubling; log-divergence gives roughly constant
    // increments, area-growth gives growing ones
    let d1 = values[n - 1] - values[n - 2];
    let d2 = values[n - 2] - values[n - 3];
    if d2 > 0.0 && d1 >= 0.5 * d2 {
        (Integrability::Diverging, last)
    } else {
        (Integrability::Inconclusive, last)
    }
}

/// Checks admissibility of `w` at power `p` on the sampling grid.
pub fn check_admissible(w: &Weight, p: &Power, cfg: &SamplingConfig) -> AdmissibilityReport {
    let n = cfg.grid_points;
    let mut nonneg = CheckOutcome {
        pass: true,
        witness: None,
        detail: "a >= 0 at all samples".into(),
    };
    let mut repulsive = CheckOutcome {
        pass: true,
        witness: None,
        detail: format!("x . grad a <= {:.1e} at all samples", cfg.repulsivity_tol),
    };
    let mut linf_a: f64 = 0.0;
    let mut linf_grad: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let x = -cfg.r_max + 2.0 * cfg.r_max * i as f64 / (n - 1) as f64;
            let y = -cfg.r_max + 2.0 * cfg.r_max * j as f64 / (n - 1) as f64;
            let v = w.value(x, y);
            let (gx, gy) = w.gradient(x, y);
            linf_a = linf_a.max(v.abs());
            linf_grad = linf_grad.max((gx * gx + gy * gy).sqrt());
            if v < 0.0 && nonneg.pass {
                nonneg = CheckOutcome {
                    pass: false,
                    witness: Some((x, y)),
                    detail: format!("a({x}, {y}) = {v}"),
                };
            }
            let radial = x * gx + y * gy;
            if radial > cfg.repulsivity_tol && repulsive.pass {
                repulsive = CheckOutcome {
                    pass: false,
                    witness: Some((x, y)),
                    detail: format!("x . grad a = {radial} at ({x}, {y})"),
                };
            }
        }
    }

    let l1_required = p.value() <= num_rational::Rational64::from(2);
    let (l1_status, l1_estimate) = if l1_required {
        l1_doubling_study(w, cfg)
    } else {
        (Integrability::Converged, f64::NAN)
    };

    let limit = estimate_angular_limit(w, cfg);
    let mut modulus: f64 = 0.0;
    let m = limit.samples.len();
    for i in 0..m {
        modulus = modulus.max((limit.samples[(i + 1) % m] - limit.samples[i]).abs());
    }
    let atilde_ok = limit.flagged.is_empty();
    let atilde = CheckOutcome {
        pass: atilde_ok,
        witness: limit.flagged.first().map(|&i| {
            let t = limit.thetas[i];
            (t.cos(), t.sin())
        }),
        detail: if atilde_ok {
            format!("tail variation below {:.1e} on all rays", cfg.tail_tol)
        } else {
            format!("{} rays exceed tail tolerance", limit.flagged.len())
        },
    };

    let overall = nonneg.pass
        && repulsive.pass
        && linf_a.is_finite()
        && linf_grad.is_finite()
        && (!l1_required || l1_status == Integrability::Converged)
        && atilde.pass;

    AdmissibilityReport {
        weight: w.label.clone(),
        p: format!("{p}"),
        nonnegative: nonneg,
        repulsive,
        linf_a,
        linf_grad,
        l1_required,
        l1_status,
        l1_estimate,
        atilde_continuous: atilde,
        atilde_modulus: modulus,
        overall,
    }
}

/// Parameterized weight families loadable from config files. No arbitrary
/// code: every custom weight is one of these with parameters.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightSpec {
    /// amplitude * exp(-|x - center|^2 / width^2)
    Gaussian {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default = "one")]
        width: f64,
    },
    Constant {
        #[serde(default = "one")]
        value: f64,
    },
    /// amplitude / (1 + |x|^2)
    InverseQuadratic {
        #[serde(default = "one")]
        amplitude: f64,
    },
    /// 3 - (1 - cos(theta)) (1 - exp(-|x|^2)); angular limit 2 + cos(theta)
    Anisotropic,
    Zero,
}

fn one() -> f64 {
    1.0
}

impl WeightSpec {
    pub fn build(&self) -> Weight {
        match self {
            WeightSpec::Gaussian { amplitude, width } => {
                let (a, w) = (*amplitude, *width);
                let w2 = w * w;
                Weight::new(
                    "gaussian",
                    Arc::new(move |x, y| a * (-(x * x + y * y) / w2).exp()),
                    Arc::new(move |x, y| {
                        let e = a * (-(x * x + y * y) / w2).exp();
                        (-2.0 * x / w2 * e, -2.0 * y / w2 * e)
                    }),
                    AnalyticNorms {
                        l1: Some(a * PI * w2),
                        linf: Some(a),
                    },
                )
            }
            WeightSpec::Constant { value } => {
                let c = *value;
                Weight::new(
                    "constant",
                    Arc::new(move |_, _| c),
                    Arc::new(|_, _| (0.0, 0.0)),
                    AnalyticNorms {
                        l1: None,
                        linf: Some(c),
                    },
                )
            }
            WeightSpec::InverseQuadratic { amplitude } => {
                let a = *amplitude;
                Weight::new(
                    "inverse_quadratic",
                    Arc::new(move |x, y| a / (1.0 + x * x + y * y)),
                    Arc::new(move |x, y| {
                        let d = 1.0 + x * x + y * y;
                        (-2.0 * a * x / (d * d), -2.0 * a * y / (d * d))
                    }),
                    AnalyticNorms {
                        l1: None,
                        linf: Some(a),
                    },
                )
            }
            WeightSpec::Anisotropic => Weight::new(
                "anisotropic",
                Arc::new(anisotropic_value),
                Arc::new(anisotropic_gradient),
                AnalyticNorms {
                    l1: None,
                    linf: Some(3.0),
                },
            ),
            WeightSpec::Zero => Weight::new(
                "zero",
                Arc::new(|_, _| 0.0),
                Arc::new(|_, _| (0.0, 0.0)),
                AnalyticNorms {
                    l1: Some(0.0),
                    linf: Some(0.0),
                },
            ),
        }
    }
}

/// a(x) = 3 - (1 - x1/|x|)(1 - exp(-|x|^2)); smooth at the origin because the
/// second factor vanishes to second order there. Angular limit 2 + cos(theta).
fn anisotropic_value(x: f64, y: f64) -> f64 {
    let r2 = x * x + y * y;
    if r2 < 1e-300 {
        return 3.0;
    }
    let r = r2.sqrt();
    let c = x / r;
    3.0 - (1.0 - c) * (1.0 - (-r2).exp())
}

fn anisotropic_gradient(x: f64, y: f64) -> (f64, f64) {
    let r2 = x * x + y * y;
    if r2 < 1e-12 {
        // the angular factor is O(r^2) near the origin, so the gradient
        // vanishes there like r
        return (0.0, 0.0);
    }
    let r = r2.sqrt();
    let r3 = r2 * r;
    let g = 1.0 - (-r2).exp();
    let e = (-r2).exp();
    let c = x / r;
    // grad a = g (y^2, -x y)/r^3 - 2 (1 - c) e (x, y)
    (
        g * y * y / r3 - 2.0 * (1.0 - c) * e * x,
        -g * x * y / r3 - 2.0 * (1.0 - c) * e * y,
    )
}

/// The built-in weight catalog.
pub fn weight_catalog() -> Vec<Weight> {
    vec![
        WeightSpec::Gaussian {
            amplitude: 1.0,
            width: 1.0,
        }
        .build(),
        WeightSpec::Constant { value: 1.0 }.build(),
        WeightSpec::InverseQuadratic { amplitude: 1.0 }.build(),
        WeightSpec::Anisotropic.build(),
        WeightSpec::Zero.build(),
    ]
}

/// Looks up a catalog weight by label.
pub fn weight_by_name(name: &str) -> Result<Weight, InlsError> {
    weight_catalog()
        .into_iter()
        .find(|w| w.label == name)
        .ok_or_else(|| {
            InlsError::Validation(format!(
                "unknown weight '{name}'; catalog: {:?}",
                weight_catalog()
                    .iter()
                    .map(|w| w.label.clone())
                    .collect::<Vec<_>>()
            ))
        })
}

/// Catalog weights admissible at each p, by label, with the (sampled)
/// expected verdict. Used by tests and the CLI summary.
pub fn expected_admissibility(p: &Power) -> BTreeMap<&'static str, bool> {
    let le2 = p.value() <= num_rational::Rational64::from(2);
    let mut m = BTreeMap::new();
    m.insert("gaussian", true);
    m.insert("constant", !le2);
    m.insert("inverse_quadratic", !le2);
    m.insert("anisotropic", !le2);
    m.insert("zero", true);
    m
}

/// Japanese bracket <t> = (1 + t^2)^(1/2).
pub fn bracket(t: f64) -> f64 {
    (1.0 + t * t).sqrt()
}
