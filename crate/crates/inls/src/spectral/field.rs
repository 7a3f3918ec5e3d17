use num_complex::Complex64;

use super::fft::{fft2, ifft2};
use super::grid::Grid;

/// A complex-valued function sampled on a periodic grid. Stored in physical
/// space; the frequency representation is materialized on demand through the
/// 2d DFT.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: Grid,
    data: Vec<Complex64>,
}

impl Field {
    pub fn zeros(grid: Grid) -> Self {
        Field {
            grid,
            data: vec![Complex64::default(); grid.len()],
        }
    }

    pub fn from_data(grid: Grid, data: Vec<Complex64>) -> Self {
        assert_eq!(data.len(), grid.len());
        Field { grid, data }
    }

    /// Samples a closure of physical coordinates.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> Complex64) -> Self {
        let n = grid.n();
        let mut data = Vec::with_capacity(grid.len());
        for i in 0..n {
            let x = grid.coord(i);
            for j in 0..n {
                data.push(f(x, grid.coord(j)));
            }
        }
        Field { grid, data }
    }

    /// Builds a field from its (unnormalized) DFT coefficients.
    pub fn from_spectrum(grid: Grid, mut hat: Vec<Complex64>) -> Self {
        assert_eq!(hat.len(), grid.len());
        ifft2(&mut hat, grid.n());
        Field { grid, data: hat }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    /// Frequency representation (unnormalized forward DFT).
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut hat = self.data.clone();
        fft2(&mut hat, self.grid.n());
        hat
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .all(|v| v.re.is_finite() && v.im.is_finite())
    }

    pub fn scale(&self, c: Complex64) -> Field {
        Field {
            grid: self.grid,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Field) -> Field {
        assert_eq!(self.grid, other.grid);
        Field {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Field) -> Field {
        assert_eq!(self.grid, other.grid);
        Field {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn conj(&self) -> Field {
        Field {
            grid: self.grid,
            data: self.data.iter().map(|v| v.conj()).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// L2 mass integral, sum |u|^2 h^2.
    pub fn mass(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_area()
    }

    /// Fraction of mass at grid points with |x| >= radius.
    pub fn mass_fraction_outside(&self, radius: f64) -> f64 {
        let total: f64 = self.data.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let mut out = 0.0;
        for (idx, v) in self.data.iter().enumerate() {
            let (x, y) = self.grid.coord_at(idx);
            if (x * x + y * y).sqrt() >= radius {
                out += v.norm_sqr();
            }
        }
        out / total
    }

    /// Fraction of spectral mass in the top octave |xi| > nyquist/2.
    pub fn top_octave_fraction(&self) -> f64 {
        let hat = self.spectrum();
        let cutoff = self.grid.nyquist() / 2.0;
        let mut top = 0.0;
        let mut total = 0.0;
        for (idx, v) in hat.iter().enumerate() {
            let (kx, ky) = self.grid.freq_at(idx);
            let m = v.norm_sqr();
            total += m;
            if (kx * kx + ky * ky).sqrt() > cutoff {
                top += m;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            top / total
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_roundtrip() {
        let grid = Grid::new(32, 8.0).unwrap();
        let f = Field::from_fn(grid, |x, y| Complex64::new((x * 0.3).sin(), (y * 0.7).cos()));
        let g = Field::from_spectrum(grid, f.spectrum());
        let err = f.sub(&g).mass().sqrt();
        assert!(err < 1e-13 * f.mass().sqrt());
    }

    #[test]
    fn mass_of_gaussian() {
        // integral of exp(-2|x|^2) = pi/2
        let grid = Grid::new(128, 32.0).unwrap();
        let f = Field::from_fn(grid, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0));
        assert!((f.mass() - std::f64::consts::PI / 2.0).abs() < 1e-10);
    }

    #[test]
    fn escape_fraction() {
        let grid = Grid::new(64, 64.0).unwrap();
        let f = Field::from_fn(grid, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0));
        assert!(f.mass_fraction_outside(16.0) < 1e-8);
        assert!(f.mass_fraction_outside(0.0) == 1.0);
    }
}
