//! Python bindings: exponent profiles, weight admissibility, grids/fields,
//! solver runs, and the main diagnostics.

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use std::str::FromStr;

use inls::diagnostics::{conserved, morawetz, scattering_probe, z_norm};
use inls::scaling::{exponent_profile, verify_identities, Power};
use inls::solver::{run, MonitorConfig, SolverConfig};
use inls::spectral::{free_propagate, h1_norm, lebesgue_norm, Field, Grid, LebesgueExponent, Trajectory};
use inls::weights::{check_admissible, weight_by_name, SamplingConfig};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Scaling exponents for a rational power p ("2", "1/2", "0.7").
#[pyfunction]
fn exponents(p: &str) -> PyResult<std::collections::HashMap<String, f64>> {
    let p = Power::from_str(p).map_err(err)?;
    let prof = exponent_profile(&p).to_f64();
    let mut m = std::collections::HashMap::new();
    m.insert("p".into(), p.as_f64());
    m.insert("rho".into(), prof.rho);
    m.insert("s".into(), prof.s);
    m.insert("q".into(), prof.q);
    m.insert("r".into(), prof.r);
    m.insert("alpha".into(), prof.alpha);
    m.insert("beta".into(), prof.beta);
    Ok(m)
}

/// True iff every exact-arithmetic exponent identity holds at p.
#[pyfunction]
fn identities_pass(p: &str) -> PyResult<bool> {
    let p = Power::from_str(p).map_err(err)?;
    Ok(verify_identities(&p).all_pass())
}

/// Overall admissibility verdict for a catalog weight at power p.
#[pyfunction]
fn weight_admissible(name: &str, p: &str) -> PyResult<bool> {
    let p = Power::from_str(p).map_err(err)?;
    let w = weight_by_name(name).map_err(err)?;
    Ok(check_admissible(&w, &p, &SamplingConfig::default()).overall)
}

#[pyclass(name = "Simulation")]
struct Simulation {
    traj: Trajectory,
    weight_label: String,
}

#[pymethods]
impl Simulation {
    /// Integrates Gaussian data exp(-|x|^2) * amplitude with a catalog
    /// weight, returning the recorded trajectory.
    #[new]
    #[pyo3(signature = (n, length, dt, t_end, p, weight, amplitude=1.0, stride=1))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        n: usize,
        length: f64,
        dt: f64,
        t_end: f64,
        p: &str,
        weight: &str,
        amplitude: f64,
        stride: usize,
    ) -> PyResult<Self> {
        let grid = Grid::new(n, length).map_err(err)?;
        let cfg = SolverConfig {
            dt,
            t_end,
            snapshot_stride: stride,
            p: Power::from_str(p).map_err(err)?,
            weight: weight_by_name(weight).map_err(err)?,
            grid,
            monitors: MonitorConfig::default(),
        };
        let u0 = Field::from_fn(grid, |x, y| {
            Complex64::new(amplitude * (-(x * x + y * y)).exp(), 0.0)
        });
        let (traj, _) = run(&cfg, u0).map_err(err)?;
        Ok(Simulation {
            traj,
            weight_label: weight.to_string(),
        })
    }

    fn times(&self) -> Vec<f64> {
        self.traj.times.clone()
    }

    fn mass_series(&self) -> PyResult<Vec<f64>> {
        let w = weight_by_name(&self.weight_label).map_err(err)?;
        Ok(conserved(&self.traj, &w).map_err(err)?.mass)
    }

    fn energy_series(&self) -> PyResult<Vec<f64>> {
        let w = weight_by_name(&self.weight_label).map_err(err)?;
        Ok(conserved(&self.traj, &w).map_err(err)?.energy)
    }

    /// dt/t integral of the squared virial norm over t >= 1.
    fn morawetz_integral(&self) -> PyResult<f64> {
        Ok(morawetz(&self.traj).map_err(err)?.total())
    }

    fn scattering_verdict(&self) -> PyResult<String> {
        let w = weight_by_name(&self.weight_label).map_err(err)?;
        let prof = exponent_profile(&self.traj.meta.p).to_f64();
        let rep = scattering_probe(&self.traj, &w, &prof).map_err(err)?;
        Ok(format!("{:?}", rep.verdict))
    }
}

/// L2 norm of the free evolution of a Gaussian after time t (sanity helper).
#[pyfunction]
fn free_gaussian_l2(n: usize, length: f64, t: f64) -> PyResult<f64> {
    let grid = Grid::new(n, length).map_err(err)?;
    let u0 = Field::from_fn(grid, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0));
    Ok(lebesgue_norm(
        &free_propagate(&u0, t),
        LebesgueExponent::Finite(2.0),
    ))
}

/// Virial Z(t) norm of the unit Gaussian on the given grid.
#[pyfunction]
fn gaussian_z_norm(n: usize, length: f64, t: f64) -> PyResult<f64> {
    let grid = Grid::new(n, length).map_err(err)?;
    let f = Field::from_fn(grid, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0));
    z_norm(&f, t, false).map_err(err)
}

/// H1 norm of the unit Gaussian (another cross-check value).
#[pyfunction]
fn gaussian_h1_norm(n: usize, length: f64) -> PyResult<f64> {
    let grid = Grid::new(n, length).map_err(err)?;
    let f = Field::from_fn(grid, |x, y| Complex64::new((-(x * x + y * y)).exp(), 0.0));
    Ok(h1_norm(&f))
}

#[pymodule]
fn inls_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(exponents, m)?)?;
    m.add_function(wrap_pyfunction!(identities_pass, m)?)?;
    m.add_function(wrap_pyfunction!(weight_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(free_gaussian_l2, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_z_norm, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_h1_norm, m)?)?;
    m.add_class::<Simulation>()?;
    Ok(())
}
