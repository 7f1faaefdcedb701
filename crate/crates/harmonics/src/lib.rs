//! Floating-point checks of the orbit method on two-step nilpotent groups.
//!
//! Test functions are Gaussians in exponential coordinates, so the Fourier
//! transform on `n*`, right translates and the integrals over coadjoint
//! orbits `ζ + z^⊥` all have closed forms. Every closed form has a
//! quadrature counterpart to compare against. All algebraic input (structure
//! constants, the Pfaffian `P`) comes from `nilkit-core`.
//!
//! Conventions: `f̂(ν) = ∫ f(exp X) e^{iν(X)} dX` with Lebesgue measure in the
//! algebra's basis, and `c = d!·2^d` with `2d = dim v`.

pub mod gaussian;
pub mod orbit;
pub mod quadrature;
pub mod schrodinger;
pub mod structure;

use thiserror::Error;

pub use gaussian::GaussianTestFunction;
pub use orbit::{character, character_quadrature, fourier_inversion, orbit_fourier, InversionOptions, InversionReport};
pub use schrodinger::{matrix_coefficient_degree, DegreeReport, GaussianState, SchrodingerModel};
pub use structure::TwoStepAlgebra;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicsError {
    #[error("quadratic form is not positive definite (leading minor {index} = {value:e})")]
    NotPositiveDefinite { index: usize, value: f64 },

    #[error("quadratic form is not symmetric")]
    NotSymmetric,

    #[error("{what}: expected dimension {expected}, found {found}")]
    Dimension { what: &'static str, expected: usize, found: usize },

    #[error("P(zeta) = {p:e} at zeta = {zeta:?} is numerically zero")]
    SingularParameter { zeta: Vec<f64>, p: f64 },

    #[error("zeta must be nonzero")]
    ZeroZeta,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{what} did not converge (error estimate {estimate:e})")]
    NoConvergence { what: String, estimate: f64 },

    #[error(transparent)]
    Algebra(#[from] nilkit_core::AlgebraError),
}

/// `n!` as a float.
pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `c = d!·2^d`.
pub fn orbit_constant(d: usize) -> f64 {
    factorial(d) * 2f64.powi(d as i32)
}
