//! Exact-arithmetic engine for perturbative linearization of polynomial
//! vector fields near a fixed point.
//!
//! The pieces, bottom-up:
//!
//! * [`scalar`]: rationals and Gaussian rationals;
//! * [`algebra`]: sparse polynomials, vector fields, brackets, near-identity maps;
//! * [`matalg`]: exact linear algebra, S+N splitting, eigenvalues;
//! * [`homological`]: graded bases, the homological operator, resonances;
//! * [`normalizer`]: Poincaré–Dulac normal forms, joint normal forms and
//!   linearization through a symmetry with identity linear part;
//! * [`symmetry`]: order-by-order symmetry search and bracket diagnostics;
//! * [`convergence`]: Poincaré domain, the ω small-divisor diagnostic and a
//!   convergence classifier;
//! * [`dsl`] and [`fixtures`]: a small field-description language and a
//!   library of worked systems.

pub mod algebra;
pub mod convergence;
pub mod dsl;
pub mod fixtures;
pub mod homological;
pub mod matalg;
pub mod normalizer;
pub mod scalar;
pub mod symmetry;

pub use algebra::{AlgebraError, Monomial, NearIdentityMap, Polynomial, VectorField};
pub use matalg::RatMatrix;
pub use scalar::{Gaussian, Rational};
