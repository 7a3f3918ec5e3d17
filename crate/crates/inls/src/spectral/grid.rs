use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::InlsError;

/// Uniform periodic grid on the torus [-L/2, L/2)^2 with n points per side.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(n: usize, length: f64) -> Result<Self, InlsError> {
        if n < 8 || !n.is_power_of_two() {
            return Err(InlsError::Validation(format!(
                "grid size must be a power of two >= 8, got {n}"
            )));
        }
        if !(length > 0.0) {
            return Err(InlsError::Validation(format!(
                "grid length must be positive, got {length}"
            )));
        }
        Ok(Grid { n, length })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    /// Total number of grid points.
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Physical coordinate of index i along one axis, in [-L/2, L/2).
    pub fn coord(&self, i: usize) -> f64 {
        -self.length / 2.0 + i as f64 * self.spacing()
    }

    /// Dual-lattice frequency of index i along one axis (FFT ordering).
    pub fn freq_component(&self, i: usize) -> f64 {
        let n = self.n;
        let m = if i < n / 2 {
            i as i64
        } else {
            i as i64 - n as i64
        };
        2.0 * PI / self.length * m as f64
    }

    /// (x, y) coordinates of a flat row-major index.
    pub fn coord_at(&self, idx: usize) -> (f64, f64) {
        (self.coord(idx / self.n), self.coord(idx % self.n))
    }

    /// (kx, ky) frequencies of a flat row-major index.
    pub fn freq_at(&self, idx: usize) -> (f64, f64) {
        (
            self.freq_component(idx / self.n),
            self.freq_component(idx % self.n),
        )
    }

    /// Cell area used in spatial quadrature.
    pub fn cell_area(&self) -> f64 {
        self.spacing() * self.spacing()
    }

    /// Largest frequency magnitude along one axis, pi n / L.
    pub fn nyquist(&self) -> f64 {
        PI * self.n as f64 / self.length
    }

    /// Lowest nonzero frequency magnitude, 2 pi / L.
    pub fn fundamental(&self) -> f64 {
        2.0 * PI / self.length
    }
}
