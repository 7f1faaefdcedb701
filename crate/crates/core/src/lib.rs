//! Exact computations on nilpotent Lie algebras `n = z + v` given by
//! rational structure constants.
//!
//! The crate decides square integrability through the Pfaffian of
//! `b_λ(x, y) = λ([x, y])` on `v`, checks complex structures `J` on `v`
//! against an acting algebra of derivations, and computes the signature of
//! `β_ζ(u, v) = λ_ζ([u, Jv])`. Everything is exact over `Q` or `Q(i)`.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod format;
pub mod linalg;
pub mod pfaffian;
pub mod polynomial;
pub mod rational;
pub mod satake;
pub mod signature;

pub use algebra::{AlgebraBuilder, Center, Functional, NilpotentLieAlgebra, ValidationReport, Violation};
pub use error::AlgebraError;
pub use format::{parse_algebra_file, to_json, AlgebraFile};
pub use linalg::QMatrix;
pub use pfaffian::{
    b_matrix_at, b_matrix_symbolic, evaluate_p, is_square_integrable, pfaffian, pfaffian_numeric,
    pfaffian_polynomial, SkewPolynomialMatrix, SquareIntegrability,
};
pub use polynomial::RationalPolynomial;
pub use rational::{parse_rational, GaussianRational, Q};
pub use satake::{
    check_a1, check_derivations, check_invariance, check_j, complex_structure_from_circle, CheckFailure, CheckReport,
    ComplexStructure, DerivationSet,
};
pub use signature::{
    beta_matrix, cohomology_degree, gamma_hermitian, signature, CohomologyDegree, SignatureReport,
};
