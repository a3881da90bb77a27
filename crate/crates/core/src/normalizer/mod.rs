//! Poincaré–Dulac normalization.
//!
//! Degree by degree, the nonlinear part of a field is split along
//! `Ker(ad_{A_s}) ⊕ Im(ad_{A_s})`; the image component is removed by a
//! near-identity change `u = x + h_m(x)` solving the homological equation,
//! and the kernel component is kept as the resonant remainder.
//!
//! Coordinates: the stored transformation maps the original coordinates
//! `x` to the normalized ones `u`. Step maps are composed by direct
//! substitution, truncated at the working degree.

mod flow;
mod frame;
mod joint;
mod linearize;

use thiserror::Error;

use crate::algebra::{lie_bracket, pushforward, AlgebraError, NearIdentityMap, Polynomial, VectorField};
use crate::homological::{ad_matrix, GradedBasis, HomologicalError, Splitting};
use crate::matalg::{sn_decompose, solve_linear_ranked, LinearSolution, RatMatrix};
use crate::scalar::Rational;

pub use flow::{flow_consistency_check, FlowOptions, FlowReport};
pub use joint::{joint_normal_form, JointNormalForm};
pub use linearize::{linearize_via_symmetry, LinearizationCertificate, Verdict};

use frame::Frame;

/// Default working degree.
pub const DEFAULT_DEGREE: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalizerError {
    #[error("the field has no linear part at the origin (A = 0); normalization needs one")]
    NoLinearPart,
    #[error("the field has a nonzero constant term: the origin is not a fixed point")]
    ConstantTerm,
    #[error("target degree must be at least 2, got {0}")]
    DegreeTooLow(usize),
    #[error("the two fields do not commute: bracket nonzero at degree {degree}")]
    NonCommuting { degree: usize },
    #[error("the symmetry's linear part is not the identity")]
    SymmetryNotIdentity,
    #[error("internal invariant violated at degree {degree}: {what}")]
    Internal { degree: usize, what: String },
    #[error("flow check failed: {0}")]
    Flow(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Homological(#[from] HomologicalError),
}

/// Resonant remainder kept at one degree: coordinates on the kernel basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRemainder {
    pub degree: usize,
    /// Kernel basis of the homological operator(s) on `V_m`, as fields.
    pub basis: Vec<Vec<Polynomial>>,
    pub coords: Vec<Rational>,
}

impl DegreeRemainder {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(num_traits::Zero::is_zero)
    }
}

/// Output of [`normal_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormResult {
    pub normalized: VectorField,
    /// Original → normalized coordinates.
    pub transformation: NearIdentityMap,
    pub remainders: Vec<DegreeRemainder>,
    /// `(m, h_m)` for every step.
    pub generators: Vec<(usize, Vec<Polynomial>)>,
    /// `dim Ker(ad_A)` on `V_m` per degree: the dimension of the family of
    /// admissible generators (zero means the step is unique).
    pub solution_dims: Vec<(usize, usize)>,
    pub degree: usize,
}

impl NormalFormResult {
    pub fn is_linear(&self) -> bool {
        self.normalized.is_linear()
    }

    /// Master check: pushing the normalized field back through the
    /// transformation reproduces `original` through the working degree.
    pub fn roundtrip_holds(&self, original: &VectorField) -> Result<bool, NormalizerError> {
        let back = pushforward(&self.normalized, self.transformation.forward(), self.degree)?;
        Ok(back == original.truncated(self.degree))
    }
}

/// Result of one normalization step.
#[derive(Clone, Debug)]
pub struct StepOutcome {
    pub generator: Vec<Polynomial>,
    pub field: VectorField,
    pub remainder: DegreeRemainder,
    pub solution_dim: usize,
}

fn check_input(field: &VectorField, k: usize) -> Result<RatMatrix, NormalizerError> {
    if k < 2 {
        return Err(NormalizerError::DegreeTooLow(k));
    }
    if field.has_constant_terms() {
        return Err(NormalizerError::ConstantTerm);
    }
    let a = field.linear_part();
    if a.is_zero() {
        return Err(NormalizerError::NoLinearPart);
    }
    Ok(a)
}

/// The generator and remainder at degree `m` for a field whose degree-`m`
/// coordinates are `c`: `ad_A h = −(image part of c)`, remainder = kernel
/// part.
fn solve_degree(
    a: &RatMatrix,
    a_s: &RatMatrix,
    n: usize,
    m: usize,
    c: &[Rational],
) -> Result<(Vec<Polynomial>, DegreeRemainder, usize), NormalizerError> {
    let basis = GradedBasis::new(n, m);
    let ad_s = ad_matrix(a_s, m);
    let split = Splitting::new(&ad_s, m)?;
    let (z, _kpart, ipart) = split.decompose(c);
    let ad = if a == a_s { ad_s } else { ad_matrix(a, m) };
    let rhs: Vec<Rational> = ipart.iter().map(|v| -v).collect();
    let (sol, rank) = solve_linear_ranked(&ad, &rhs);
    let h = match sol {
        LinearSolution::Solved(h) => h,
        LinearSolution::Infeasible { .. } => {
            return Err(NormalizerError::Internal {
                degree: m,
                what: "homological equation infeasible on the image component".into(),
            })
        }
    };
    let remainder = DegreeRemainder {
        degree: m,
        basis: split.kernel().iter().map(|k| basis.vector(k)).collect(),
        coords: z,
    };
    Ok((basis.vector(&h), remainder, ad.cols() - rank))
}

/// One Poincaré step at degree `m`. The field is expected to be normalized
/// below `m`; the returned field is the input expressed in `u = x + h_m(x)`.
pub fn normalize_step(field: &VectorField, m: usize) -> Result<StepOutcome, NormalizerError> {
    let k = field.degree();
    let a = check_input(field, k.max(2))?;
    let a_s = sn_decompose(&a).semisimple;
    let n = field.dim();
    let c = GradedBasis::new(n, m).coords(field.components());
    let (h, remainder, solution_dim) = solve_degree(&a, &a_s, n, m, &c)?;
    let mut frame = Frame::new(vec![field.clone()], k);
    frame.apply(&h)?;
    let field = frame.fields.pop().expect("one field");
    Ok(StepOutcome {
        generator: h,
        field,
        remainder,
        solution_dim,
    })
}

/// Normal form through degree `k`. The input is treated as an exact
/// polynomial field; terms above `k` are ignored.
pub fn normal_form(field: &VectorField, k: usize) -> Result<NormalFormResult, NormalizerError> {
    normalize_with(field, &[], k).map(|(r, _)| r)
}

/// Normalizes `field` and carries `companions` along through the same
/// sequence of coordinate changes.
pub(crate) fn normalize_with(
    field: &VectorField,
    companions: &[VectorField],
    k: usize,
) -> Result<(NormalFormResult, Vec<VectorField>), NormalizerError> {
    let a = check_input(field, k)?;
    let a_s = sn_decompose(&a).semisimple;
    let n = field.dim();
    let mut fields = vec![field.clone().with_degree(k)];
    fields.extend(companions.iter().map(|c| c.clone().with_degree(k)));
    let mut frame = Frame::new(fields, k);
    let mut remainders = Vec::new();
    let mut generators = Vec::new();
    let mut solution_dims = Vec::new();
    for m in 2..=k {
        let basis = GradedBasis::new(n, m);
        let c = basis.coords(frame.fields[0].components());
        let (h, remainder, dim) = solve_degree(&a, &a_s, n, m, &c)?;
        if h.iter().any(|p| !p.is_zero()) {
            frame.apply(&h)?;
        }
        let after = basis.coords(frame.fields[0].components());
        let expect = remainder_vector(&remainder, basis.len());
        if after != expect {
            return Err(NormalizerError::Internal {
                degree: m,
                what: "degree part after the step differs from the resonant remainder".into(),
            });
        }
        remainders.push(remainder);
        generators.push((m, h));
        solution_dims.push((m, dim));
    }
    let (mut fields, transformation) = frame.finish();
    let normalized = fields.remove(0);
    Ok((
        NormalFormResult {
            normalized,
            transformation,
            remainders,
            generators,
            solution_dims,
            degree: k,
        },
        fields,
    ))
}

fn remainder_vector(r: &DegreeRemainder, size: usize) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0.into()); size];
    let basis = GradedBasis::new(r.basis.first().map_or(1, Vec::len), r.degree);
    for (z, field) in r.coords.iter().zip(&r.basis) {
        for (o, v) in out.iter_mut().zip(basis.coords(field)) {
            *o += z * v;
        }
    }
    out
}

/// First degree `≤ k` at which `[X, Y]` has a nonzero term.
pub fn first_noncommuting_degree(x: &VectorField, y: &VectorField, k: usize) -> Result<Option<usize>, NormalizerError> {
    let br = lie_bracket(&x.truncated(k), &y.truncated(k))?;
    Ok((0..=k).find(|&m| br.homogeneous(m).iter().any(|p| !p.is_zero())))
}
