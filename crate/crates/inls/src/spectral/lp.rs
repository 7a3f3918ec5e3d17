//! Littlewood-Paley projections with smooth dyadic annulus multipliers.
//!
//! The multiplier at scale N is psi_N(xi) = phi(|xi|/N) - phi(2|xi|/N) with
//! phi the fixed smooth cutoff (1 on [0,1], 0 on [2,inf)). These telescope to
//! an exact partition of unity (linear convention: sum of multipliers is 1)
//! over dyadic N, and psi_N is supported in N/2 <= |xi| <= 2N.

use num_complex::Complex64;

use super::field::Field;
use super::grid::Grid;
use crate::bump::freq_cutoff;
use crate::error::InlsError;

/// Multiplier value of the dyadic annulus at scale n for frequency magnitude k.
pub fn lp_multiplier(k: f64, n: f64) -> f64 {
    freq_cutoff(k / n) - freq_cutoff(2.0 * k / n)
}

/// Dyadic scales resolvable on the grid: powers of two from the largest
/// 2^k <= 2 pi / L up to the smallest 2^k >= sqrt(2) pi n / L, so the
/// telescoped multipliers cover the entire nonzero lattice.
pub fn resolvable_dyadics(grid: Grid) -> Vec<f64> {
    let lo = grid.fundamental().log2().floor() as i32;
    let hi = (grid.nyquist() * std::f64::consts::SQRT_2).log2().ceil() as i32;
    (lo..=hi).map(|k| (k as f64).exp2()).collect()
}

/// Projection to the dyadic frequency annulus at scale `n_scale`.
pub fn lp_project(f: &Field, n_scale: f64) -> Result<Field, InlsError> {
    let grid = f.grid();
    let scales = resolvable_dyadics(grid);
    let in_range = scales
        .iter()
        .any(|&s| (s.log2() - n_scale.log2()).abs() < 1e-9);
    if !(n_scale > 0.0) || !in_range {
        return Err(InlsError::Validation(format!(
            "dyadic scale {n_scale} outside resolvable range [{}, {}]",
            scales.first().unwrap(),
            scales.last().unwrap()
        )));
    }
    let mut hat = f.spectrum();
    for (idx, v) in hat.iter_mut().enumerate() {
        let (kx, ky) = grid.freq_at(idx);
        let k = (kx * kx + ky * ky).sqrt();
        *v *= Complex64::new(lp_multiplier(k, n_scale), 0.0);
    }
    Ok(Field::from_spectrum(grid, hat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::norms::{lebesgue_norm, LebesgueExponent};

    fn l2(f: &Field) -> f64 {
        lebesgue_norm(f, LebesgueExponent::Finite(2.0))
    }

    #[test]
    fn partition_of_unity_on_lattice() {
        let grid = Grid::new(64, 32.0).unwrap();
        let scales = resolvable_dyadics(grid);
        for idx in [1, 7, 64, 65, 100, 2000, 4095] {
            let (kx, ky) = grid.freq_at(idx);
            let k = (kx * kx + ky * ky).sqrt();
            if k == 0.0 {
                continue;
            }
            let total: f64 = scales.iter().map(|&s| lp_multiplier(k, s)).sum();
            assert!((total - 1.0).abs() < 1e-12, "k = {k}: sum {total}");
        }
    }

    #[test]
    fn recovery_minus_mean() {
        let grid = Grid::new(64, 32.0).unwrap();
        let f = Field::from_fn(grid, |x, y| {
            Complex64::new((0.9 * x).sin() * (1.3 * y).cos(), (0.4 * x + 0.2 * y).sin())
        });
        // remove the mean mode
        let mut hat = f.spectrum();
        let mean = hat[0];
        hat[0] = Complex64::default();
        let f0 = Field::from_spectrum(grid, hat);
        let mut sum = Field::zeros(grid);
        for s in resolvable_dyadics(grid) {
            sum = sum.add(&lp_project(&f, s).unwrap());
        }
        let err = l2(&sum.sub(&f0));
        assert!(err < 1e-10 * l2(&f0), "err {err}, mean was {mean}");
    }

    #[test]
    fn plane_wave_at_annulus_center() {
        // L = 16 pi puts lattice frequencies at m/8, so |k| = 1 is both a
        // lattice frequency and a dyadic scale
        let grid = Grid::new(64, 16.0 * std::f64::consts::PI).unwrap();
        let k = grid.freq_component(8);
        assert!((k - 1.0).abs() < 1e-15);
        let f = Field::from_fn(grid, |x, _| Complex64::new(0.0, k * x).exp());
        let p = lp_project(&f, 1.0).unwrap();
        assert!(l2(&p.sub(&f)) < 1e-12 * l2(&f));
    }

    #[test]
    fn distant_projections_annihilate() {
        let grid = Grid::new(128, 32.0).unwrap();
        let f = Field::from_fn(grid, |x, y| {
            Complex64::new((2.0 * x).sin(), (3.0 * y).cos())
        });
        let scales = resolvable_dyadics(grid);
        let a = scales[2];
        let b = a * 4.0; // M >= 4N: disjoint supports
        let pa = lp_project(&f, a).unwrap();
        let pab = lp_project(&pa, b).unwrap();
        assert!(l2(&pab) < 1e-13 * (1.0 + l2(&f)));
    }

    #[test]
    fn rejects_out_of_range() {
        let grid = Grid::new(64, 32.0).unwrap();
        let f = Field::zeros(grid);
        assert!(lp_project(&f, 1e-6).is_err());
        assert!(lp_project(&f, 1e6).is_err());
        assert!(lp_project(&f, 1.0).is_ok());
    }
}
