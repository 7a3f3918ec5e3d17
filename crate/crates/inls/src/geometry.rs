//! Annular and triangular cutoff constructions, and numerical verification
//! of their plateau, weight-localization, and gradient-decay properties.

use serde::Serialize;

use crate::bump::{step, step_prime, step_second};
use crate::error::InlsError;
use crate::scaling::Power;
use crate::weights::Weight;

/// Sequence of translation centers in polar form, with the declared limit
/// angle of the directions theta_n.
#[derive(Clone, Debug)]
pub struct TranslationSequence {
    /// (r_n, theta_n) pairs with r_n strictly increasing.
    pub centers: Vec<(f64, f64)>,
    pub limit_angle: f64,
}

impl TranslationSequence {
    pub fn new(centers: Vec<(f64, f64)>, limit_angle: f64) -> Result<Self, InlsError> {
        if centers.is_empty() {
            return Err(InlsError::Validation("empty translation sequence".into()));
        }
        if !centers.windows(2).all(|w| w[1].0 > w[0].0) || centers[0].0 <= 0.0 {
            return Err(InlsError::Validation(
                "radii must be positive and strictly increasing".into(),
            ));
        }
        Ok(TranslationSequence {
            centers,
            limit_angle,
        })
    }

    /// Geometric schedule r_n = base 2^n, theta_n = limit + drift/(n+1).
    pub fn geometric(base: f64, count: usize, limit_angle: f64, drift: f64) -> Self {
        let centers = (0..count)
            .map(|n| {
                (
                    base * (n as f64).exp2(),
                    limit_angle + drift / (n + 1) as f64,
                )
            })
            .collect();
        TranslationSequence {
            centers,
            limit_angle,
        }
    }

    pub fn cartesian(&self, n: usize) -> (f64, f64) {
        let (r, th) = self.centers[n];
        (r * th.cos(), r * th.sin())
    }
}

/// Smooth radial cutoff vanishing on |x + x_n| < |x_n|/4 and equal to 1 on
/// |x + x_n| > |x_n|/2, with symbol bounds |d^k chi| <= C |x_n|^{-k}.
#[derive(Clone, Debug)]
pub struct AnnularCutoff {
    pub index: usize,
    pub center: (f64, f64),
    pub inner: f64,
    pub outer: f64,
}

pub fn annular_cutoff(index: usize, center: (f64, f64)) -> Result<AnnularCutoff, InlsError> {
    let norm = (center.0 * center.0 + center.1 * center.1).sqrt();
    if !(norm > 0.0) {
        return Err(InlsError::Validation(
            "annular cutoff needs a nonzero center".into(),
        ));
    }
    Ok(AnnularCutoff {
        index,
        center,
        inner: norm / 4.0,
        outer: norm / 2.0,
    })
}

impl AnnularCutoff {
    fn radial(&self, x: f64, y: f64) -> f64 {
        let dx = x + self.center.0;
        let dy = y + self.center.1;
        (dx * dx + dy * dy).sqrt()
    }

    fn tau(&self, rho: f64) -> f64 {
        (rho - self.inner) / (self.outer - self.inner)
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        step(self.tau(self.radial(x, y)))
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let rho = self.radial(x, y);
        if rho == 0.0 {
            return (0.0, 0.0);
        }
        let width = self.outer - self.inner;
        let s = step_prime(self.tau(rho)) / width;
        ((x + self.center.0) / rho * s, (y + self.center.1) / rho * s)
    }

    pub fn laplacian(&self, x: f64, y: f64) -> f64 {
        let rho = self.radial(x, y);
        if rho == 0.0 {
            return 0.0;
        }
        let width = self.outer - self.inner;
        let tau = self.tau(rho);
        step_second(tau) / (width * width) + step_prime(tau) / (width * rho)
    }
}

/// Triangular cutoff adapted to the regions
///   T1 = { r_n >= x - r_n/2 >= cot(omega)|y| }
///   T2 = { r_n (5+sin omega)/4 >= x - r_n/4 >= cot(omega)|y| }
/// in coordinates rotated so the limit angle is the positive x-axis. The
/// smooth transition is a product of edge profiles over signed distances,
/// with width r_n^{(p+1)/(p+2)}/4 (a lower bound for the separation d =
/// r_n sin(omega)/4, so the symbol bounds are saturated).
#[derive(Clone, Debug)]
pub struct TriangularCutoff {
    pub index: usize,
    pub r: f64,
    pub theta: f64,
    pub omega: f64,
    pub limit_angle: f64,
    /// Separation dist(T1, complement of T2) = r_n sin(omega)/4.
    pub separation: f64,
    /// Transition width of the edge profiles.
    pub width: f64,
}

/// omega_n = max(17 |theta_n - limit|, arcsin(r_n^{-1/(p+2)})).
pub fn omega_angle(r: f64, theta: f64, limit_angle: f64, p: &Power) -> f64 {
    let exponent = -1.0 / (p.as_f64() + 2.0);
    let branch_r = r.powf(exponent).min(1.0).asin();
    (17.0 * (theta - limit_angle).abs()).max(branch_r)
}

pub fn triangular_cutoff(
    index: usize,
    seq: &TranslationSequence,
    p: &Power,
) -> Result<TriangularCutoff, InlsError> {
    if index >= seq.centers.len() {
        return Err(InlsError::Validation(format!(
            "index {index} outside the stored prefix of {} centers",
            seq.centers.len()
        )));
    }
    let (r, theta) = seq.centers[index];
    let omega = omega_angle(r, theta, seq.limit_angle, p);
    let pf = p.as_f64();
    // threshold conditions: the aperture admits the triangle geometry, the
    // separation lower bound holds, and the center direction is well inside
    if omega >= std::f64::consts::FRAC_PI_2 {
        return Err(InlsError::Validation(format!(
            "threshold not reached at n = {index}: omega = {omega:.4} >= pi/2"
        )));
    }
    if omega.sin() < r.powf(-1.0 / (pf + 2.0)) - 1e-12 {
        return Err(InlsError::Validation(format!(
            "threshold not reached at n = {index}: sin(omega) below r^(-1/(p+2))"
        )));
    }
    if ((theta - seq.limit_angle).sin() / omega.sin()).abs() > 1.0 / 16.0 + 1e-12 {
        return Err(InlsError::Validation(format!(
            "threshold not reached at n = {index}: direction drift exceeds sin(omega)/16"
        )));
    }
    let separation = r * omega.sin() / 4.0;
    let width = r.powf((pf + 1.0) / (pf + 2.0)) / 4.0;
    debug_assert!(width <= separation * (1.0 + 1e-12));
    Ok(TriangularCutoff {
        index,
        r,
        theta,
        omega,
        limit_angle: seq.limit_angle,
        separation,
        width,
    })
}

impl TriangularCutoff {
    /// Rotates a physical point into the frame where the limit angle is the
    /// positive x-axis.
    fn rotate_in(&self, x: f64, y: f64) -> (f64, f64) {
        let (s, c) = (-self.limit_angle).sin_cos();
        (c * x - s * y, s * x + c * y)
    }

    /// Signed distances to the three inner-region edges, positive inside T1.
    /// The corresponding T2 edges sit exactly `separation` further out.
    fn edge_distances(&self, xr: f64, yr: f64) -> [f64; 3] {
        let (sw, cw) = self.omega.sin_cos();
        [
            1.5 * self.r - xr,
            sw * (xr - self.r / 2.0) - cw * yr,
            sw * (xr - self.r / 2.0) + cw * yr,
        ]
    }

    /// Unit inward normals matching `edge_distances`, in the rotated frame.
    fn edge_normals(&self) -> [(f64, f64); 3] {
        let (sw, cw) = self.omega.sin_cos();
        [(-1.0, 0.0), (sw, -cw), (sw, cw)]
    }

    pub fn in_t1(&self, x: f64, y: f64) -> bool {
        let (xr, yr) = self.rotate_in(x, y);
        self.edge_distances(xr, yr).iter().all(|&s| s >= 0.0)
    }

    pub fn in_t2(&self, x: f64, y: f64) -> bool {
        let (xr, yr) = self.rotate_in(x, y);
        self.edge_distances(xr, yr)
            .iter()
            .all(|&s| s >= -self.separation)
    }

    /// Centroid of T1 in physical coordinates.
    pub fn centroid(&self) -> (f64, f64) {
        // apex (r/2, 0), cap corners (3r/2, +-r tan omega)
        let xr = (self.r / 2.0 + 1.5 * self.r + 1.5 * self.r) / 3.0;
        let (s, c) = self.limit_angle.sin_cos();
        (c * xr, s * xr)
    }

    pub fn value(&self, x: f64, y: f64) -> f64 {
        let (xr, yr) = self.rotate_in(x, y);
        self.edge_distances(xr, yr)
            .iter()
            .map(|&s| step(1.0 + s / self.width))
            .product()
    }

    pub fn gradient(&self, x: f64, y: f64) -> (f64, f64) {
        let (xr, yr) = self.rotate_in(x, y);
        let dists = self.edge_distances(xr, yr);
        let profiles: Vec<f64> = dists.iter().map(|&s| step(1.0 + s / self.width)).collect();
        let normals = self.edge_normals();
        let mut gx = 0.0;
        let mut gy = 0.0;
        for i in 0..3 {
            let mut term = step_prime(1.0 + dists[i] / self.width) / self.width;
            for j in 0..3 {
                if j != i {
                    term *= profiles[j];
                }
            }
            gx += term * normals[i].0;
            gy += term * normals[i].1;
        }
        // rotate the gradient back to physical coordinates
        let (s, c) = self.limit_angle.sin_cos();
        (c * gx - s * gy, s * gx + c * gy)
    }

    pub fn laplacian(&self, x: f64, y: f64) -> f64 {
        let (xr, yr) = self.rotate_in(x, y);
        let dists = self.edge_distances(xr, yr);
        let tau: Vec<f64> = dists.iter().map(|&s| 1.0 + s / self.width).collect();
        let profiles: Vec<f64> = tau.iter().map(|&t| step(t)).collect();
        let normals = self.edge_normals();
        let w = self.width;
        let mut acc = 0.0;
        for i in 0..3 {
            let mut term = step_second(tau[i]) / (w * w);
            for j in 0..3 {
                if j != i {
                    term *= profiles[j];
                }
            }
            acc += term; // normals are unit vectors
        }
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let dot = normals[i].0 * normals[j].0 + normals[i].1 * normals[j].1;
                let mut term = step_prime(tau[i]) * step_prime(tau[j]) / (w * w) * dot;
                for k in 0..3 {
                    if k != i && k != j {
                        term *= profiles[k];
                    }
                }
                // ordered pairs each once, matching the product rule
                acc += term;
            }
        }
        acc
    }

    /// Exact area of the transition region T2 \ T1.
    pub fn transition_area(&self) -> f64 {
        let t = self.omega.tan();
        let h2 = (5.0 + self.omega.sin()) * self.r / 4.0;
        (h2 * h2 - self.r * self.r) * t
    }

    /// Monte-Carlo estimate of |T2 \ T1| with the given sample count.
    pub fn transition_area_mc(&self, samples: usize, seed: u64) -> f64 {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        // bounding box of T2 in the rotated frame
        let x_lo = self.r / 4.0 - self.separation;
        let x_hi = (6.0 + self.omega.sin()) * self.r / 4.0;
        let y_max = (x_hi - self.r / 4.0) * self.omega.tan() + self.separation;
        let (s, c) = self.limit_angle.sin_cos();
        let mut hits = 0usize;
        for _ in 0..samples {
            let xr = rng.gen_range(x_lo..x_hi);
            let yr = rng.gen_range(-y_max..y_max);
            let (px, py) = (c * xr - s * yr, s * xr + c * yr);
            if self.in_t2(px, py) && !self.in_t1(px, py) {
                hits += 1;
            }
        }
        (x_hi - x_lo) * 2.0 * y_max * hits as f64 / samples as f64
    }

    /// Semi-analytic L^m norm of the gradient: the transition is three
    /// strips of width `width` along the T1 edges, where |grad chi| =
    /// S'(tau)/width; corner corrections are O(width/r) relative.
    pub fn gradient_lm_norm(&self, m: f64) -> f64 {
        let lens = self.edge_lengths();
        let profile = profile_moment(m, false);
        let total: f64 = lens.iter().map(|l| l * self.width.powf(1.0 - m) * profile).sum();
        total.powf(1.0 / m)
    }

    /// Semi-analytic L^m norm of the Laplacian over the same strips, where
    /// |lap chi| = |S''(tau)|/width^2 away from corners.
    pub fn laplacian_lm_norm(&self, m: f64) -> f64 {
        let lens = self.edge_lengths();
        let profile = profile_moment(m, true);
        let total: f64 = lens
            .iter()
            .map(|l| l * self.width.powf(1.0 - 2.0 * m) * profile)
            .sum();
        total.powf(1.0 / m)
    }

    fn edge_lengths(&self) -> [f64; 3] {
        // T1: apex (r/2, 0), cap x = 3r/2, half-width r tan omega
        let cap = 2.0 * self.r * self.omega.tan();
        let side = self.r / self.omega.cos();
        [cap, side, side]
    }
}

/// Simpson quadrature of S'(t)^m (or |S''(t)|^m) over [0, 1].
fn profile_moment(m: f64, second: bool) -> f64 {
    let n = 4096;
    let h = 1.0 / n as f64;
    let eval = |t: f64| -> f64 {
        let v = if second {
            step_second(t).abs()
        } else {
            step_prime(t)
        };
        v.powf(m)
    };
    let mut acc = eval(0.0) + eval(1.0);
    for i in 1..n {
        let t = i as f64 * h;
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * eval(t);
    }
    acc * h / 3.0
}

/// Per-index verification outcome of the three cutoff properties.
#[derive(Clone, Debug, Serialize)]
pub struct CutoffPropertyRow {
    pub index: usize,
    pub r: f64,
    pub omega: f64,
    /// C1: min of the recentered cutoff over the fixed bounded test grid.
    pub min_on_test_grid: f64,
    /// C2: sup of |a - atilde(limit)| over sampled support points.
    pub weight_deviation: f64,
    pub grad_norm: f64,
    pub lap_norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutoffReport {
    pub rows: Vec<CutoffPropertyRow>,
    pub c1_pass: bool,
    pub c2_pass: bool,
    pub c3_pass: bool,
    /// Least-squares log-log slope of the gradient norm vs r.
    pub grad_slope: f64,
    pub lap_slope: f64,
    pub claimed_grad_exponent: f64,
    pub claimed_lap_exponent: f64,
    pub skipped_below_threshold: Vec<usize>,
}

fn fit_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

/// Verifies, along the sequence: (C1) the recentered cutoff tends to 1 on a
/// fixed bounded grid, (C2) the weight approaches its angular limit at the
/// limit angle uniformly on the support, (C3) the L^{2(p+2)/p} norms of
/// gradient and Laplacian decay at the claimed powers of r (within a factor
/// 2 per doubling).
pub fn verify_cutoff_properties(
    seq: &TranslationSequence,
    p: &Power,
    weight: &Weight,
    atilde_at_limit: f64,
    n_list: &[usize],
) -> Result<CutoffReport, InlsError> {
    let pf = p.as_f64();
    let m = 2.0 * (pf + 2.0) / pf; // 2 beta / (2 - beta)
    let gamma = (pf + 1.0) / (pf + 2.0);
    let claimed_grad = -1.0 / (pf + 2.0);
    let claimed_lap = claimed_grad - gamma;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &n in n_list {
        let cutoff = match triangular_cutoff(n, seq, p) {
            Ok(c) => c,
            Err(_) => {
                skipped.push(n);
                continue;
            }
        };
        let (cx, cy) = seq.cartesian(n);
        // C1: recentered cutoff chi_n(x + x_n) on a fixed bounded grid
        let mut min_val = f64::INFINITY;
        let test_extent = 8.0;
        for i in 0..17 {
            for j in 0..17 {
                let x = -test_extent + i as f64 * test_extent / 8.0;
                let y = -test_extent + j as f64 * test_extent / 8.0;
                min_val = min_val.min(cutoff.value(cx + x, cy + y));
            }
        }
        // C2: sample the support (T2) via barycentric sweep of the outer
        // triangle in the rotated frame
        let mut dev = 0.0f64;
        let (s, c) = cutoff.limit_angle.sin_cos();
        let x_lo = cutoff.r / 4.0 - cutoff.separation;
        let x_hi = (6.0 + cutoff.omega.sin()) * cutoff.r / 4.0;
        for i in 0..40 {
            let xr = x_lo + (i as f64 + 0.5) / 40.0 * (x_hi - x_lo);
            let half = ((xr - cutoff.r / 4.0) * cutoff.omega.tan() + cutoff.separation).max(0.0);
            for j in 0..21 {
                let yr = -half + j as f64 * half / 10.0;
                let (px, py) = (c * xr - s * yr, s * xr + c * yr);
                if cutoff.value(px, py) > 0.0 {
                    dev = dev.max((weight.value(px, py) - atilde_at_limit).abs());
                }
            }
        }
        rows.push(CutoffPropertyRow {
            index: n,
            r: cutoff.r,
            omega: cutoff.omega,
            min_on_test_grid: min_val,
            weight_deviation: dev,
            grad_norm: cutoff.gradient_lm_norm(m),
            lap_norm: cutoff.laplacian_lm_norm(m),
        });
    }
    if rows.len() < 3 {
        return Err(InlsError::Validation(
            "fewer than 3 indices pass the threshold; cannot verify decay".into(),
        ));
    }
    let c1_pass = rows.windows(2).all(|w| {
        w[1].min_on_test_grid >= w[0].min_on_test_grid - 1e-12
    }) && rows.last().unwrap().min_on_test_grid > 1.0 - 1e-9;
    let c2_pass = rows
        .windows(2)
        .all(|w| w[1].weight_deviation <= w[0].weight_deviation + 1e-12);
    let mut c3_pass = true;
    for w in rows.windows(2) {
        let ratio_r = w[1].r / w[0].r;
        let expect_g = ratio_r.powf(claimed_grad);
        let expect_l = ratio_r.powf(claimed_lap);
        let got_g = w[1].grad_norm / w[0].grad_norm;
        let got_l = w[1].lap_norm / w[0].lap_norm;
        if !(got_g / expect_g > 0.5 && got_g / expect_g < 2.0) {
            c3_pass = false;
        }
        if !(got_l / expect_l > 0.5 && got_l / expect_l < 2.0) {
            c3_pass = false;
        }
    }
    let log_r: Vec<f64> = rows.iter().map(|r| r.r.ln()).collect();
    let log_g: Vec<f64> = rows.iter().map(|r| r.grad_norm.ln()).collect();
    let log_l: Vec<f64> = rows.iter().map(|r| r.lap_norm.ln()).collect();
    Ok(CutoffReport {
        grad_slope: fit_slope(&log_r, &log_g),
        lap_slope: fit_slope(&log_r, &log_l),
        claimed_grad_exponent: claimed_grad,
        claimed_lap_exponent: claimed_lap,
        rows,
        c1_pass,
        c2_pass,
        c3_pass,
        skipped_below_threshold: skipped,
    })
}

/// Default schedule used by the verification fixtures: r_n = 16 * 2^n,
/// theta_n = limit + 1/(n+1).
pub fn default_schedule(count: usize, limit_angle: f64) -> TranslationSequence {
    TranslationSequence::geometric(16.0, count, limit_angle, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::weight_by_name;

    #[test]
    fn annular_plateau_and_hole() {
        let c = annular_cutoff(0, (30.0, 40.0)).unwrap(); // |x_n| = 50
        assert_eq!(c.inner, 12.5);
        assert_eq!(c.outer, 25.0);
        // x = -x_n: the center of the hole
        assert_eq!(c.value(-30.0, -40.0), 0.0);
        // |x + x_n| = |x_n|: outside the transition
        let rho = ((20.0f64 + 30.0).powi(2) + 40.0f64.powi(2)).sqrt();
        assert!(rho > 25.0);
        assert_eq!(c.value(20.0, 0.0), 1.0);
    }

    #[test]
    fn annular_symbol_scaling() {
        // sup |grad chi| |x_n| stays bounded as |x_n| doubles
        let mut consts = Vec::new();
        for &r in &[16.0f64, 32.0, 64.0, 128.0] {
            let c = annular_cutoff(0, (r, 0.0)).unwrap();
            let mut sup = 0.0f64;
            for i in 0..400 {
                let rho = c.inner + (i as f64 + 0.5) / 400.0 * (c.outer - c.inner);
                // sample along the x-axis through the transition
                let (gx, gy) = c.gradient(rho - r, 0.0);
                sup = sup.max((gx * gx + gy * gy).sqrt());
            }
            consts.push(sup * r);
        }
        for w in consts.windows(2) {
            assert!((w[1] - w[0]).abs() < 1e-9 * w[0], "constants {consts:?}");
        }
        assert!(consts[0] < 30.0);
    }

    #[test]
    fn annular_gradient_and_laplacian_fd() {
        let c = annular_cutoff(0, (40.0, 0.0)).unwrap();
        let h = 1e-5;
        for &(x, y) in &[(-25.0, 3.0), (-22.0, -7.0), (-28.0, 0.5)] {
            let (gx, gy) = c.gradient(x, y);
            let fdx = (c.value(x + h, y) - c.value(x - h, y)) / (2.0 * h);
            let fdy = (c.value(x, y + h) - c.value(x, y - h)) / (2.0 * h);
            assert!((gx - fdx).abs() < 1e-6, "at ({x},{y}): {gx} vs {fdx}");
            assert!((gy - fdy).abs() < 1e-6);
            let lap_fd = (c.value(x + h, y) + c.value(x - h, y) + c.value(x, y + h)
                + c.value(x, y - h)
                - 4.0 * c.value(x, y))
                / (h * h);
            assert!((c.laplacian(x, y) - lap_fd).abs() < 1e-3);
        }
    }

    #[test]
    fn omega_branches() {
        let p = Power::from_ints(3, 1).unwrap();
        // r-branch: theta = limit, r = 1e4, p = 3 -> arcsin(10^{-4/5})
        let w = omega_angle(1e4, 0.0, 0.0, &p);
        assert!((w - (1e4f64.powf(-0.2)).asin()).abs() < 1e-15);
        // theta-branch: large drift dominates
        let w2 = omega_angle(1e4, 0.02, 0.0, &p);
        assert!((w2 - 0.34).abs() < 1e-12);
    }

    #[test]
    fn separation_example() {
        // r = 16, omega = pi/6 -> d = 16 (1/2) / 4 = 2
        let seq = TranslationSequence::new(vec![(16.0, 0.0)], 0.0).unwrap();
        let p = Power::from_ints(3, 1).unwrap();
        let c = triangular_cutoff(0, &seq, &p).unwrap();
        // omega from the r-branch here; check the formula directly instead
        let d = 16.0 * (std::f64::consts::FRAC_PI_6).sin() / 4.0;
        assert!((d - 2.0).abs() < 1e-15);
        assert!((c.separation - c.r * c.omega.sin() / 4.0).abs() < 1e-12);
        assert!(c.separation >= 16f64.powf(0.8) / 4.0 - 1e-12);
    }

    #[test]
    fn plateau_and_support() {
        let p = Power::from_ints(3, 1).unwrap();
        let seq = TranslationSequence::geometric(16.0, 8, 0.3, 0.0);
        let c = triangular_cutoff(3, &seq, &p).unwrap();
        let (cx, cy) = c.centroid();
        assert!(c.in_t1(cx, cy));
        assert_eq!(c.value(cx, cy), 1.0);
        // far outside T2
        assert_eq!(c.value(-cx, -cy), 0.0);
        // 0 <= chi <= 1 and supp(grad) inside T2 \ T1 on a coarse sweep
        for i in 0..60 {
            for j in 0..60 {
                let x = -2.0 * c.r + 4.0 * c.r * i as f64 / 59.0;
                let y = -2.0 * c.r + 4.0 * c.r * j as f64 / 59.0;
                let v = c.value(x, y);
                assert!((0.0..=1.0 + 1e-15).contains(&v));
                let (gx, gy) = c.gradient(x, y);
                if (gx * gx + gy * gy).sqrt() > 1e-12 {
                    assert!(c.in_t2(x, y) && !c.in_t1(x, y), "grad outside strip");
                }
            }
        }
    }

    #[test]
    fn triangular_gradient_and_laplacian_fd() {
        let seq = TranslationSequence::geometric(16.0, 4, 0.5, 0.0);
        let p = Power::from_ints(3, 1).unwrap();
        let c = triangular_cutoff(1, &seq, &p).unwrap();
        // points in the transition strip: walk outward from the centroid
        let (cx, cy) = c.centroid();
        let h = 1e-5;
        let mut checked = 0;
        for k in 0..200 {
            let t = 1.0 + k as f64 * 0.005;
            let (x, y) = (cx * t, cy * t + 0.3 * k as f64 * 0.01);
            let (gx, gy) = c.gradient(x, y);
            if (gx * gx + gy * gy).sqrt() < 1e-6 {
                continue;
            }
            checked += 1;
            let fdx = (c.value(x + h, y) - c.value(x - h, y)) / (2.0 * h);
            let fdy = (c.value(x, y + h) - c.value(x, y - h)) / (2.0 * h);
            assert!((gx - fdx).abs() < 1e-5 * (1.0 + fdx.abs()));
            assert!((gy - fdy).abs() < 1e-5 * (1.0 + fdy.abs()));
            let lap_fd = (c.value(x + h, y) + c.value(x - h, y) + c.value(x, y + h)
                + c.value(x, y - h)
                - 4.0 * c.value(x, y))
                / (h * h);
            assert!(
                (c.laplacian(x, y) - lap_fd).abs() < 1e-2 * (1.0 + lap_fd.abs()),
                "lap {} vs fd {lap_fd}",
                c.laplacian(x, y)
            );
        }
        assert!(checked > 5, "no transition points sampled");
    }

    #[test]
    fn monte_carlo_area() {
        let seq = TranslationSequence::geometric(16.0, 4, 0.0, 0.0);
        let p = Power::from_ints(3, 1).unwrap();
        let c = triangular_cutoff(2, &seq, &p).unwrap();
        let exact = c.transition_area();
        let mc = c.transition_area_mc(400_000, 7);
        assert!(
            (mc - exact).abs() < 0.05 * exact,
            "mc {mc} vs exact {exact}"
        );
        // |T2 \ T1| <= C r^2 with a modest constant
        assert!(exact < 10.0 * c.r * c.r);
    }

    #[test]
    fn strip_norm_matches_brute_force() {
        let seq = TranslationSequence::geometric(32.0, 3, 0.0, 0.0);
        let p = Power::from_ints(3, 1).unwrap();
        let c = triangular_cutoff(1, &seq, &p).unwrap(); // r = 64
        let m = 2.0 * (p.as_f64() + 2.0) / p.as_f64();
        // brute-force 2d quadrature over the bounding box of T2
        let x_lo = c.r / 4.0 - c.separation - 1.0;
        let x_hi = (6.0 + c.omega.sin()) * c.r / 4.0 + 1.0;
        let y_max = (x_hi - c.r / 4.0) * c.omega.tan() + c.separation + 1.0;
        let nx = 900;
        let ny = 900;
        let hx = (x_hi - x_lo) / nx as f64;
        let hy = 2.0 * y_max / ny as f64;
        let mut grad_acc = 0.0;
        let mut lap_acc = 0.0;
        for i in 0..nx {
            let x = x_lo + (i as f64 + 0.5) * hx;
            for j in 0..ny {
                let y = -y_max + (j as f64 + 0.5) * hy;
                let (gx, gy) = c.gradient(x, y);
                grad_acc += (gx * gx + gy * gy).sqrt().powf(m);
                lap_acc += c.laplacian(x, y).abs().powf(m);
            }
        }
        let grad_bf = (grad_acc * hx * hy).powf(1.0 / m);
        let lap_bf = (lap_acc * hx * hy).powf(1.0 / m);
        let grad_strip = c.gradient_lm_norm(m);
        let lap_strip = c.laplacian_lm_norm(m);
        assert!(
            (grad_strip - grad_bf).abs() < 0.15 * grad_bf,
            "strip {grad_strip} vs brute force {grad_bf}"
        );
        assert!(
            (lap_strip - lap_bf).abs() < 0.2 * lap_bf,
            "strip {lap_strip} vs brute force {lap_bf}"
        );
    }

    #[test]
    fn verification_constant_weight() {
        // a constant: C2 deviation is exactly 0 at every index
        let seq = TranslationSequence::geometric(16.0, 6, 0.0, 0.0);
        let p = Power::from_ints(3, 1).unwrap();
        let w = weight_by_name("constant").unwrap();
        let atilde = w.value(1e6, 0.0);
        let rep = verify_cutoff_properties(&seq, &p, &w, atilde, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(rep.rows.iter().all(|r| r.weight_deviation == 0.0));
        assert!(rep.c2_pass);
    }

    #[test]
    fn verification_slope_band() {
        let seq = TranslationSequence::geometric(16.0, 10, 0.0, 0.0);
        let p = Power::from_ints(3, 1).unwrap();
        let w = weight_by_name("anisotropic").unwrap();
        // anisotropic angular limit at theta = 0: 3 - (1 - 1) = 3... the
        // limit is 2 + cos(theta) = 3 at theta = 0
        let rep =
            verify_cutoff_properties(&seq, &p, &w, 3.0, &(0..10).collect::<Vec<_>>()).unwrap();
        assert!(rep.c1_pass, "C1 rows: {:?}", rep.rows);
        assert!(rep.c2_pass, "C2 rows: {:?}", rep.rows);
        assert!(rep.c3_pass, "C3 rows: {:?}", rep.rows);
        assert!(
            (rep.grad_slope - rep.claimed_grad_exponent).abs() < 0.15,
            "slope {} vs claimed {}",
            rep.grad_slope,
            rep.claimed_grad_exponent
        );
    }
}
