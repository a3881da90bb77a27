//! Exact rational linear algebra: row reduction with deterministic
//! pivoting, characteristic and minimal polynomials, the Jordan–Chevalley
//! splitting over ℚ, eigenvalues in ℚ(i) with a numeric fallback, and a
//! similarity-invariant comparison of two matrices.

mod chevalley;
mod conjugacy;
mod eigen;
mod matrix;
mod rref;
mod upoly;

pub use chevalley::{is_squarefree, minimal_polynomial, nilpotency_index, sn_decompose, SNDecomposition};
pub use conjugacy::{conjugacy_necessary_check, ConjugacyReport, InvariantCheck};
pub use eigen::{eigenvalues, split_squarefree, EigenData, Eigenvalue, RationalSplit, DEFAULT_EIGEN_TOL};
pub use matrix::RatMatrix;
pub use rref::{dot, inverse, left_kernel, rank, rref, rref_kernel_image, solve_linear, solve_linear_ranked, KernelImage, LinearSolution, RowEchelon};
pub use upoly::{char_poly, UPoly};
