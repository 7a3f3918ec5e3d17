//! Spatial Lebesgue and Sobolev norms, mixed space-time norms over
//! trajectories, and the empirical refined-Sobolev ratio.

use super::field::Field;
use super::lp::{lp_project, resolvable_dyadics};
use super::trajectory::Trajectory;
use crate::error::InlsError;
use crate::scaling::ExponentProfileF64;

/// A Lebesgue exponent in [1, infinity].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LebesgueExponent {
    Finite(f64),
    Infinity,
}

impl LebesgueExponent {
    pub fn validate(&self) -> Result<(), InlsError> {
        match self {
            LebesgueExponent::Finite(b) if *b >= 1.0 => Ok(()),
            LebesgueExponent::Infinity => Ok(()),
            LebesgueExponent::Finite(b) => Err(InlsError::Validation(format!(
                "Lebesgue exponent must be >= 1, got {b}"
            ))),
        }
    }
}

/// Spatial quadrature norm (sum |f|^b h^2)^(1/b); max for infinity.
pub fn lebesgue_norm(f: &Field, exponent: LebesgueExponent) -> f64 {
    match exponent {
        LebesgueExponent::Infinity => f.max_abs(),
        LebesgueExponent::Finite(b) => {
            let h2 = f.grid().cell_area();
            if b == 2.0 {
                return f.mass().sqrt();
            }
            let sum: f64 = f.data().iter().map(|v| v.norm().powf(b)).sum();
            (sum * h2).powf(1.0 / b)
        }
    }
}

/// Frequency-side Sobolev norm of order in [0, 1]: weight |xi|^(2 order)
/// (homogeneous) or (1 + |xi|^2)^order (inhomogeneous).
pub fn sobolev_norm(f: &Field, order: f64, homogeneous: bool) -> f64 {
    assert!((0.0..=1.0).contains(&order), "order must be in [0, 1]");
    let grid = f.grid();
    let hat = f.spectrum();
    // Plancherel: integral |u|^2 = (h^2 / n^2) sum |u_hat|^2
    let scale = grid.cell_area() / grid.len() as f64;
    let mut acc = 0.0;
    for (idx, v) in hat.iter().enumerate() {
        let (kx, ky) = grid.freq_at(idx);
        let k2 = kx * kx + ky * ky;
        let w = if homogeneous {
            k2.powf(order)
        } else {
            (1.0 + k2).powf(order)
        };
        acc += w * v.norm_sqr();
    }
    (acc * scale).sqrt()
}

/// Inhomogeneous H^1 norm.
pub fn h1_norm(f: &Field) -> f64 {
    sobolev_norm(f, 1.0, false)
}

/// A mixed space-time Lebesgue norm specification over an interval.
#[derive(Clone, Copy, Debug)]
pub struct NormSpec {
    pub time_exponent: LebesgueExponent,
    pub space_exponent: LebesgueExponent,
    pub interval: (f64, f64),
}

/// Composes the spatial norm with a trapezoidal time quadrature of
/// |.|^time_exponent; max over snapshots for time exponent infinity.
pub fn spacetime_norm(traj: &Trajectory, spec: &NormSpec) -> Result<f64, InlsError> {
    spec.time_exponent.validate()?;
    spec.space_exponent.validate()?;
    let (t0, t1) = spec.interval;
    if traj.is_empty() {
        return Err(InlsError::Validation("empty trajectory".into()));
    }
    let (s0, s1) = traj.span();
    if t0 < s0 - 1e-9 || t1 > s1 + 1e-9 {
        return Err(InlsError::Validation(format!(
            "interval [{t0}, {t1}] outside trajectory span [{s0}, {s1}]"
        )));
    }
    let idx = traj.indices_in(t0, t1);
    if idx.len() < 2 {
        return Err(InlsError::Validation(format!(
            "need at least 2 snapshots in [{t0}, {t1}], found {}",
            idx.len()
        )));
    }
    let spatial: Vec<f64> = idx
        .iter()
        .map(|&i| lebesgue_norm(&traj.snapshots[i], spec.space_exponent))
        .collect();
    match spec.time_exponent {
        LebesgueExponent::Infinity => Ok(spatial.iter().cloned().fold(0.0, f64::max)),
        LebesgueExponent::Finite(a) => {
            let mut acc = 0.0;
            for w in idx.windows(2) {
                let dt = traj.times[w[1]] - traj.times[w[0]];
                let fa = spatial[idx.iter().position(|&i| i == w[0]).unwrap()].powf(a);
                let fb = spatial[idx.iter().position(|&i| i == w[1]).unwrap()].powf(a);
                acc += 0.5 * (fa + fb) * dt;
            }
            Ok(acc.powf(1.0 / a))
        }
    }
}

/// X(I) norm: exponents (q, r) from the profile.
pub fn x_norm(
    traj: &Trajectory,
    prof: &ExponentProfileF64,
    interval: (f64, f64),
) -> Result<f64, InlsError> {
    spacetime_norm(
        traj,
        &NormSpec {
            time_exponent: LebesgueExponent::Finite(prof.q),
            space_exponent: LebesgueExponent::Finite(prof.r),
            interval,
        },
    )
}

/// Y(I) norm: exponents (alpha, beta).
pub fn y_norm(
    traj: &Trajectory,
    prof: &ExponentProfileF64,
    interval: (f64, f64),
) -> Result<f64, InlsError> {
    spacetime_norm(
        traj,
        &NormSpec {
            time_exponent: LebesgueExponent::Finite(prof.alpha),
            space_exponent: LebesgueExponent::Finite(prof.beta),
            interval,
        },
    )
}

/// Auxiliary X'(I) norm: exponents (q/2, r/2).
pub fn xprime_norm(
    traj: &Trajectory,
    prof: &ExponentProfileF64,
    interval: (f64, f64),
) -> Result<f64, InlsError> {
    spacetime_norm(
        traj,
        &NormSpec {
            time_exponent: LebesgueExponent::Finite(prof.q / 2.0),
            space_exponent: LebesgueExponent::Finite(prof.r / 2.0),
            interval,
        },
    )
}

/// The interpolation exponent sigma(r) of the refined Sobolev embedding:
/// (r-2)/r for 2 < r <= 4, composed through Gagliardo-Nirenberg (4/r of the
/// L^4 exponent 1/2) for r > 4.
pub fn refined_sobolev_sigma(r: f64) -> f64 {
    assert!(r > 2.0, "refined Sobolev requires r > 2");
    if r <= 4.0 {
        (r - 2.0) / r
    } else {
        2.0 / r
    }
}

/// Empirical ratio ||f||_r / (sup_N ||P_N f||_r^sigma ||f||_H1^(1-sigma)).
pub fn refined_sobolev_ratio(f: &Field, r: f64) -> Result<f64, InlsError> {
    if !(r > 2.0) || !r.is_finite() {
        return Err(InlsError::Validation(format!(
            "refined Sobolev exponent must be in (2, inf), got {r}"
        )));
    }
    let lr = lebesgue_norm(f, LebesgueExponent::Finite(r));
    if lr == 0.0 {
        return Err(InlsError::Validation(
            "refined Sobolev ratio undefined for the zero field".into(),
        ));
    }
    let sigma = refined_sobolev_sigma(r);
    let mut sup = 0.0f64;
    for s in resolvable_dyadics(f.grid()) {
        let pn = lp_project(f, s)?;
        sup = sup.max(lebesgue_norm(&pn, LebesgueExponent::Finite(r)));
    }
    let h1 = h1_norm(f);
    let denom = sup.powf(sigma) * h1.powf(1.0 - sigma);
    if denom == 0.0 {
        return Err(InlsError::Numerical(
            "refined Sobolev denominator vanished".into(),
        ));
    }
    Ok(lr / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scaling::{exponent_profile, Power};
    use crate::spectral::grid::Grid;
    use crate::spectral::trajectory::TrajectoryMeta;
    use num_complex::Complex64;

    fn meta() -> TrajectoryMeta {
        TrajectoryMeta {
            p: Power::from_ints(2, 1).unwrap(),
            weight_label: "zero".into(),
            solver_settings: String::new(),
        }
    }

    fn gaussian(n: usize, length: f64) -> Field {
        let grid = Grid::new(n, length).unwrap();
        Field::from_fn(grid, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0))
    }

    #[test]
    fn l2_of_gaussian() {
        let f = gaussian(256, 32.0);
        let n = lebesgue_norm(&f, LebesgueExponent::Finite(2.0));
        assert!((n * n - std::f64::consts::PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn zero_and_homogeneity() {
        let grid = Grid::new(32, 16.0).unwrap();
        assert_eq!(
            lebesgue_norm(&Field::zeros(grid), LebesgueExponent::Finite(3.0)),
            0.0
        );
        let f = gaussian(32, 16.0);
        let c = Complex64::new(-1.3, 0.4);
        for exp in [
            LebesgueExponent::Finite(1.0),
            LebesgueExponent::Finite(3.5),
            LebesgueExponent::Infinity,
        ] {
            let a = lebesgue_norm(&f.scale(c), exp);
            let b = c.norm() * lebesgue_norm(&f, exp);
            assert!((a - b).abs() < 1e-12 * (1.0 + b));
        }
    }

    #[test]
    fn sobolev_order_zero_is_l2() {
        let f = gaussian(64, 16.0);
        let a = sobolev_norm(&f, 0.0, true);
        let b = lebesgue_norm(&f, LebesgueExponent::Finite(2.0));
        assert!((a - b).abs() < 1e-12 * b);
    }

    #[test]
    fn sobolev_plane_wave() {
        let grid = Grid::new(32, 16.0).unwrap();
        let k = grid.freq_component(3);
        let f = Field::from_fn(grid, |x, _| Complex64::new(0.0, k * x).exp());
        let l2 = lebesgue_norm(&f, LebesgueExponent::Finite(2.0));
        let hdot = sobolev_norm(&f, 1.0, true);
        assert!((hdot - k.abs() * l2).abs() < 1e-10 * hdot);
    }

    #[test]
    fn gradient_energy_of_gaussian() {
        // oracle: for f = exp(-|x|^2), |grad f|^2 = 4 |x|^2 exp(-2|x|^2) and
        // integral 4 r^2 exp(-2 r^2) 2 pi r dr = pi/2 (computed by the 1d
        // radial quadrature below)
        let mut oracle = 0.0;
        let m = 200_000;
        let rmax = 10.0;
        let dr = rmax / m as f64;
        for i in 0..m {
            let r = (i as f64 + 0.5) * dr;
            oracle += 4.0 * r * r * (-2.0 * r * r).exp() * 2.0 * std::f64::consts::PI * r * dr;
        }
        let f = gaussian(256, 32.0);
        let hdot = sobolev_norm(&f, 1.0, true);
        assert!(
            (hdot * hdot - oracle).abs() < 1e-6,
            "grid {} vs oracle {oracle}",
            hdot * hdot
        );
    }

    #[test]
    fn spacetime_constant_in_time() {
        let f = gaussian(64, 16.0);
        let times: Vec<f64> = (0..9).map(|i| i as f64 / 8.0).collect();
        let snaps = vec![f.clone(); 9];
        let traj = Trajectory::new(times, snaps, meta());
        for (a, b) in [(4.0, 3.0), (1.0, 2.0), (7.5, 2.5)] {
            let st = spacetime_norm(
                &traj,
                &NormSpec {
                    time_exponent: LebesgueExponent::Finite(a),
                    space_exponent: LebesgueExponent::Finite(b),
                    interval: (0.0, 1.0),
                },
            )
            .unwrap();
            let sp = lebesgue_norm(&f, LebesgueExponent::Finite(b));
            assert!((st - sp).abs() < 1e-12 * sp, "({a}, {b}): {st} vs {sp}");
        }
    }

    #[test]
    fn spacetime_infinity_is_max() {
        let f = gaussian(32, 16.0);
        let traj = Trajectory::new(
            vec![0.0, 0.5, 1.0],
            vec![
                f.scale(Complex64::new(0.5, 0.0)),
                f.clone(),
                f.scale(Complex64::new(0.25, 0.0)),
            ],
            meta(),
        );
        let st = spacetime_norm(
            &traj,
            &NormSpec {
                time_exponent: LebesgueExponent::Infinity,
                space_exponent: LebesgueExponent::Finite(2.0),
                interval: (0.0, 1.0),
            },
        )
        .unwrap();
        let sp = lebesgue_norm(&f, LebesgueExponent::Finite(2.0));
        assert!((st - sp).abs() < 1e-12 * sp);
    }

    #[test]
    fn spacetime_rejects_thin_windows() {
        let f = gaussian(32, 16.0);
        let traj = Trajectory::new(vec![0.0, 1.0], vec![f.clone(), f], meta());
        let spec = NormSpec {
            time_exponent: LebesgueExponent::Finite(2.0),
            space_exponent: LebesgueExponent::Finite(2.0),
            interval: (0.4, 0.6),
        };
        assert!(spacetime_norm(&traj, &spec).is_err());
    }

    #[test]
    fn zero_trajectory_norms() {
        let grid = Grid::new(32, 16.0).unwrap();
        let traj = Trajectory::new(
            vec![0.0, 0.5, 1.0],
            vec![Field::zeros(grid); 3],
            meta(),
        );
        let prof = exponent_profile(&Power::from_ints(2, 1).unwrap()).to_f64();
        assert_eq!(x_norm(&traj, &prof, (0.0, 1.0)).unwrap(), 0.0);
        assert_eq!(y_norm(&traj, &prof, (0.0, 1.0)).unwrap(), 0.0);
        assert_eq!(xprime_norm(&traj, &prof, (0.0, 1.0)).unwrap(), 0.0);
    }

    #[test]
    fn refined_sobolev_scale_invariant() {
        let f = gaussian(64, 32.0);
        let r1 = refined_sobolev_ratio(&f, 3.0).unwrap();
        let r2 = refined_sobolev_ratio(&f.scale(Complex64::new(2.0, 0.0)), 3.0).unwrap();
        assert!((r1 - r2).abs() < 1e-10 * r1);
        assert!(refined_sobolev_ratio(&Field::zeros(f.grid()), 3.0).is_err());
    }

    #[test]
    fn refined_sobolev_plane_wave_bounded() {
        let grid = Grid::new(64, 32.0).unwrap();
        let k = grid.freq_component(5);
        let f = Field::from_fn(grid, |x, _| Complex64::new(0.0, k * x).exp());
        let ratio = refined_sobolev_ratio(&f, 3.0).unwrap();
        assert!(ratio.is_finite() && ratio < 10.0, "ratio {ratio}");
    }

    #[test]
    fn sigma_branches() {
        assert!((refined_sobolev_sigma(3.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((refined_sobolev_sigma(4.0) - 0.5).abs() < 1e-15);
        assert!((refined_sobolev_sigma(8.0) - 0.25).abs() < 1e-15);
    }
}
