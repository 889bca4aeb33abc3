//! Generalized Levi-Civita, Kustaanheimo–Stiefel and Hurwitz maps between complex
//! spheres and real spheres, and the Kepler–Coulomb / oscillator duality they carry.
//!
//! The crate is organised in five layers:
//!
//! * [`special_functions`]: complex Γ, terminating hypergeometric series, Jacobi and
//!   Gegenbauer polynomials, Wigner functions, Clebsch–Gordan coefficients, spherical harmonics.
//! * [`duality_maps`]: the quadratic maps, angle charts, constraint one-forms and metric relations.
//! * [`geometry_quadrature`]: Gauss–Legendre rules, Laplace–Beltrami operators, volume
//!   elements, ⋄-conjugated inner products and the contour identity.
//! * [`quantum_spectra`]: spectra, duality parameters, oscillator and Coulomb eigenfunctions.
//! * [`classical_dynamics`]: direct and regularized equations of motion, an adaptive
//!   Dormand–Prince integrator and Hamilton–Jacobi residuals.

// `!(x > 0.0)` style checks are deliberate: NaN must fail them
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod classical_dynamics;
pub mod duality_maps;
pub mod error;
pub mod geometry_quadrature;
pub mod quantum_spectra;
pub mod scalar;
pub mod special_functions;

pub use error::{Error, Result};

/// Complex numbers used throughout the crate.
pub type ComplexValue = num_complex::Complex64;

/// Shorthand constructor for a [`ComplexValue`].
#[inline]
pub const fn c64(re: f64, im: f64) -> ComplexValue {
    ComplexValue::new(re, im)
}

/// The imaginary unit.
pub const I: ComplexValue = c64(0.0, 1.0);
