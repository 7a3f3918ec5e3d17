//! Simulator and verification laboratory for the 2d inhomogeneous nonlinear
//! Schrodinger equation
//!
//! ```text
//! i u_t + Laplace(u) = a(x) |u|^p u,     u(0) = u_0 on a periodic box
//! ```
//!
//! with a nonnegative, repulsive inhomogeneity a(x). The crate provides
//!
//! * [`scaling`]: the exact-rational exponent scaffold (rho, s, q, r, alpha,
//!   beta) and identity checks;
//! * [`weights`]: the admissible-weight catalog, admissibility checks, and
//!   angular limits at infinity;
//! * [`spectral`]: periodic fields, the free propagator, Littlewood-Paley
//!   projections, and spatial / space-time norms;
//! * [`solver`]: Strang-split time stepping with exact substeps, Duhamel
//!   residuals, and pointwise nonlinearity estimates;
//! * [`diagnostics`]: conserved quantities, the weighted virial Z(t)-norm and
//!   its time integral, and scattering detectors;
//! * [`geometry`]: annular and triangular spatial cutoff families with
//!   verified support, convergence, and derivative-decay properties;
//! * [`cli`]: presets, run manifests, sweeps, and the command-line frontend.

pub mod bump;
pub mod cli;
pub mod diagnostics;
pub mod error;
pub mod geometry;
pub mod scaling;
pub mod solver;
pub mod spectral;
pub mod weights;

pub use error::{InlsError, Result};
