//! Periodic-grid fields, the free propagator, Littlewood-Paley projections,
//! and all spatial and space-time norms.

mod field;
mod fft;
mod grid;
mod lp;
mod norms;
mod snapshot;
mod trajectory;

pub use field::Field;
pub use grid::Grid;
pub use lp::{lp_multiplier, lp_project, resolvable_dyadics};
pub use norms::{
    h1_norm, lebesgue_norm, refined_sobolev_ratio, refined_sobolev_sigma, sobolev_norm,
    spacetime_norm, x_norm, xprime_norm, y_norm, LebesgueExponent, NormSpec,
};
pub use snapshot::{read_snapshot, write_snapshot, SnapshotHeader};
pub use trajectory::{Trajectory, TrajectoryMeta};

use num_complex::Complex64;

/// Free Schrodinger flow: multiplies the spectrum by exp(-i t |xi|^2).
pub fn free_propagate(f: &Field, t: f64) -> Field {
    let mut hat = f.spectrum();
    let grid = f.grid();
    for (idx, v) in hat.iter_mut().enumerate() {
        let (kx, ky) = grid.freq_at(idx);
        let phase = -t * (kx * kx + ky * ky);
        *v *= Complex64::new(phase.cos(), phase.sin());
    }
    Field::from_spectrum(grid, hat)
}

/// Spectral partial derivatives (d/dx, d/dy) of a field.
pub fn gradient(f: &Field) -> (Field, Field) {
    let hat = f.spectrum();
    let grid = f.grid();
    let mut gx = hat.clone();
    let mut gy = hat;
    for idx in 0..grid.len() {
        let (kx, ky) = grid.freq_at(idx);
        gx[idx] *= Complex64::new(0.0, kx);
        gy[idx] *= Complex64::new(0.0, ky);
    }
    (
        Field::from_spectrum(grid, gx),
        Field::from_spectrum(grid, gy),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn gaussian_field(n: usize, length: f64) -> Field {
        let grid = Grid::new(n, length).unwrap();
        Field::from_fn(grid, |x, y| {
            Complex64::new((-(x * x + y * y)).exp(), 0.0)
        })
    }

    #[test]
    fn free_propagate_identity_at_zero() {
        let f = gaussian_field(64, 32.0);
        let g = free_propagate(&f, 0.0);
        let diff = f.sub(&g);
        assert!(lebesgue_norm(&diff, LebesgueExponent::Finite(2.0)) < 1e-14);
    }

    #[test]
    fn free_propagate_plane_wave_phase() {
        let grid = Grid::new(32, 16.0).unwrap();
        let k = grid.freq_component(3); // lattice frequency
        let f = Field::from_fn(grid, |x, _| Complex64::new(0.0, k * x).exp());
        let t = 0.37;
        let g = free_propagate(&f, t);
        let expected_phase = Complex64::new(0.0, -k * k * t).exp();
        for (a, b) in f.data().iter().zip(g.data()) {
            assert!((a * expected_phase - b).norm() < 1e-12);
        }
    }

    #[test]
    fn free_propagate_unitary_and_group() {
        let f = gaussian_field(64, 32.0).scale(Complex64::new(0.7, 0.3));
        let n0 = lebesgue_norm(&f, LebesgueExponent::Finite(2.0));
        let g = free_propagate(&f, 7.3);
        let n1 = lebesgue_norm(&g, LebesgueExponent::Finite(2.0));
        assert!((n0 - n1).abs() < 1e-13 * n0);

        let a = free_propagate(&free_propagate(&f, 1.7), 2.45);
        let b = free_propagate(&f, 1.7 + 2.45);
        let diff = a.sub(&b);
        assert!(lebesgue_norm(&diff, LebesgueExponent::Finite(2.0)) < 1e-12 * n0);
    }

    #[test]
    fn gradient_of_plane_wave() {
        let grid = Grid::new(32, 16.0).unwrap();
        let k = grid.freq_component(2);
        let f = Field::from_fn(grid, |x, y| Complex64::new(0.0, k * (x + y)).exp());
        let (gx, gy) = gradient(&f);
        for idx in 0..grid.len() {
            let expect = f.data()[idx] * Complex64::new(0.0, k);
            assert!((gx.data()[idx] - expect).norm() < 1e-11);
            assert!((gy.data()[idx] - expect).norm() < 1e-11);
        }
    }
}
