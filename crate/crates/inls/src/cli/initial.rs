//! Initial-data catalog: gaussian (with center and velocity boost), plane
//! wave (lattice wavenumber indices), and ring profiles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spectral::{Field, Grid};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialData {
    /// amplitude exp(-|x - center|^2 / width^2) exp(i velocity . x)
    Gaussian {
        #[serde(default = "one")]
        amplitude: f64,
        #[serde(default = "one")]
        width: f64,
        #[serde(default)]
        center: (f64, f64),
        #[serde(default)]
        velocity: (f64, f64),
    },
    /// amplitude exp(i (kx, ky) . x) with (kx, ky) on the dual lattice,
    /// given as integer indices of the fundamental frequency
    PlaneWave {
        #[serde(default = "one")]
        amplitude: f64,
        kx_index: i32,
        ky_index: i32,
    },
    /// amplitude exp(-(|x| - radius)^2 / width^2)
    Ring {
        #[serde(default = "one")]
        amplitude: f64,
        radius: f64,
        #[serde(default = "one")]
        width: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl InitialData {
    pub fn build(&self, grid: Grid) -> Field {
        match *self {
            InitialData::Gaussian {
                amplitude,
                width,
                center,
                velocity,
            } => Field::from_fn(grid, |x, y| {
                let dx = x - center.0;
                let dy = y - center.1;
                let env = amplitude * (-(dx * dx + dy * dy) / (width * width)).exp();
                env * Complex64::new(0.0, velocity.0 * x + velocity.1 * y).exp()
            }),
            InitialData::PlaneWave {
                amplitude,
                kx_index,
                ky_index,
            } => {
                let k0 = grid.fundamental();
                let kx = kx_index as f64 * k0;
                let ky = ky_index as f64 * k0;
                Field::from_fn(grid, |x, y| {
                    amplitude * Complex64::new(0.0, kx * x + ky * y).exp()
                })
            }
            InitialData::Ring {
                amplitude,
                radius,
                width,
            } => Field::from_fn(grid, |x, y| {
                let r = (x * x + y * y).sqrt();
                let d = r - radius;
                Complex64::new(amplitude * (-(d * d) / (width * width)).exp(), 0.0)
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_wave_is_on_the_lattice() {
        let grid = Grid::new(32, 16.0).unwrap();
        let u = InitialData::PlaneWave {
            amplitude: 0.5,
            kx_index: 3,
            ky_index: -2,
        }
        .build(grid);
        // a pure lattice mode has a single nonzero DFT coefficient
        let hat = u.spectrum();
        let nonzero = hat.iter().filter(|v| v.norm() > 1e-9).count();
        assert_eq!(nonzero, 1);
        assert!((u.max_abs() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn boosted_gaussian_mass() {
        let grid = Grid::new(128, 32.0).unwrap();
        let plain = InitialData::Gaussian {
            amplitude: 1.0,
            width: 1.0,
            center: (0.0, 0.0),
            velocity: (0.0, 0.0),
        }
        .build(grid);
        let boosted = InitialData::Gaussian {
            amplitude: 1.0,
            width: 1.0,
            center: (1.0, -2.0),
            velocity: (0.7, 0.3),
        }
        .build(grid);
        // boost and shift leave the mass unchanged
        assert!((plain.mass() - boosted.mass()).abs() < 1e-10);
        assert!((plain.mass() - std::f64::consts::PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn ring_peaks_at_radius() {
        let grid = Grid::new(128, 32.0).unwrap();
        let u = InitialData::Ring {
            amplitude: 2.0,
            radius: 5.0,
            width: 1.0,
        }
        .build(grid);
        assert!((u.max_abs() - 2.0).abs() < 1e-6);
    }
}
