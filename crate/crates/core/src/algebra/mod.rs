//! Exact multivariate polynomials and polynomial vector fields: arithmetic,
//! substitution, Lie brackets, Jacobians, near-identity maps and their
//! inverses, and the pushforward of a field along a change of coordinates.
//!
//! Every operation takes an explicit truncation degree; products are
//! truncated as they are formed.

mod field;
mod map;
mod monomial;
mod polynomial;

pub use field::{jacobian, lie_bracket, PolyMatrix, VectorField};
pub(crate) use field::{bracket_degree_part, poly_mat_vec};
pub use map::{check_near_identity, invert_map, jacobian_inverse, pushforward, NearIdentityMap};
pub use monomial::Monomial;

pub use polynomial::{default_var_names, poly_arith, ArithOp, Polynomial, Substitution};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("substitution arity mismatch: expected {expected} polynomials, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("scale factor must be a constant polynomial")]
    NonConstantScale,
    #[error("map component {component} is not near-identity (constant term or linear part differs from the identity)")]
    NotNearIdentity { component: usize },
    #[error("a vector field needs at least one component")]
    Empty,
    #[error("truncation degree must be at least 1")]
    ZeroTruncation,
}
