use super::frame::Frame;
use super::{first_noncommuting_degree, remainder_vector, DegreeRemainder, NormalFormResult, NormalizerError};
use crate::algebra::{AlgebraError, Polynomial, VectorField};
use crate::homological::{ad_matrix, GradedBasis, Splitting};
use crate::matalg::{sn_decompose, solve_linear_ranked, LinearSolution, RatMatrix};
use crate::scalar::Rational;

/// Two commuting fields brought to normal form by one transformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointNormalForm {
    pub x: NormalFormResult,
    pub y: NormalFormResult,
    /// `dim (Ker ad_{A_s} ∩ Ker ad_{B_s})` on `V_m`, per degree.
    pub joint_kernel_dims: Vec<(usize, usize)>,
}

impl JointNormalForm {
    pub fn both_linear(&self) -> bool {
        self.x.is_linear() && self.y.is_linear()
    }
}

/// Joint normal form of commuting `X`, `Y`: after the shared change of
/// coordinates both nonlinear parts lie in `Ker ad_{A_s} ∩ Ker ad_{B_s}`
/// degree by degree. At each degree the generator solves
/// `P ad_A h = −P X_m`, `P ad_B h = −P Y_m` with `P` the projection onto
/// the image sum along the joint kernel.
pub fn joint_normal_form(x: &VectorField, y: &VectorField, k: usize) -> Result<JointNormalForm, NormalizerError> {
    if x.dim() != y.dim() {
        return Err(AlgebraError::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        }
        .into());
    }
    if k < 2 {
        return Err(NormalizerError::DegreeTooLow(k));
    }
    if x.has_constant_terms() || y.has_constant_terms() {
        return Err(NormalizerError::ConstantTerm);
    }
    let (a, b) = (x.linear_part(), y.linear_part());
    if a.is_zero() && b.is_zero() {
        return Err(NormalizerError::NoLinearPart);
    }
    if let Some(degree) = first_noncommuting_degree(x, y, k)? {
        return Err(NormalizerError::NonCommuting { degree });
    }
    let a_s = sn_decompose(&a).semisimple;
    let b_s = sn_decompose(&b).semisimple;
    let n = x.dim();
    let mut frame = Frame::new(vec![x.clone().with_degree(k), y.clone().with_degree(k)], k);
    let mut rx = Vec::new();
    let mut ry = Vec::new();
    let mut generators = Vec::new();
    let mut dims = Vec::new();
    let mut kdims = Vec::new();
    for m in 2..=k {
        let basis = GradedBasis::new(n, m);
        let ad_as = ad_matrix(&a_s, m);
        let ad_bs = ad_matrix(&b_s, m);
        let split = Splitting::joint(&[&ad_as, &ad_bs], m)?;
        let cx = basis.coords(frame.fields[0].components());
        let cy = basis.coords(frame.fields[1].components());
        let (zx, _, ix) = split.decompose(&cx);
        let (zy, _, iy) = split.decompose(&cy);
        let ad_a = if a == a_s { ad_as } else { ad_matrix(&a, m) };
        let ad_b = if b == b_s { ad_bs } else { ad_matrix(&b, m) };
        let p = split.image_projector();
        let stacked = stack2(&p.mul(&ad_a), &p.mul(&ad_b));
        let rhs: Vec<Rational> = ix.iter().chain(&iy).map(|v| -v).collect();
        let (sol, rank) = solve_linear_ranked(&stacked, &rhs);
        let h = match sol {
            LinearSolution::Solved(h) => basis.vector(&h),
            LinearSolution::Infeasible { .. } => {
                return Err(NormalizerError::Internal {
                    degree: m,
                    what: "joint homological system infeasible".into(),
                })
            }
        };
        if h.iter().any(|q| !q.is_zero()) {
            frame.apply(&h)?;
        }
        let kernel_fields: Vec<Vec<Polynomial>> = split.kernel().iter().map(|v| basis.vector(v)).collect();
        let remx = DegreeRemainder {
            degree: m,
            basis: kernel_fields.clone(),
            coords: zx,
        };
        let remy = DegreeRemainder {
            degree: m,
            basis: kernel_fields,
            coords: zy,
        };
        for (idx, rem) in [(0, &remx), (1, &remy)] {
            if basis.coords(frame.fields[idx].components()) != remainder_vector(rem, basis.len()) {
                return Err(NormalizerError::Internal {
                    degree: m,
                    what: "joint step left a component outside the joint kernel".into(),
                });
            }
        }
        rx.push(remx);
        ry.push(remy);
        generators.push((m, h));
        dims.push((m, basis.len() - rank));
        kdims.push((m, split.kernel_dim()));
    }
    let (mut fields, transformation) = frame.finish();
    let ny = fields.pop().expect("two fields");
    let nx = fields.pop().expect("two fields");
    Ok(JointNormalForm {
        x: NormalFormResult {
            normalized: nx,
            transformation: transformation.clone(),
            remainders: rx,
            generators: generators.clone(),
            solution_dims: dims.clone(),
            degree: k,
        },
        y: NormalFormResult {
            normalized: ny,
            transformation,
            remainders: ry,
            generators,
            solution_dims: dims,
            degree: k,
        },
        joint_kernel_dims: kdims,
    })
}

fn stack2(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| a.row(i).to_vec())
        .chain((0..b.rows()).map(|i| b.row(i).to_vec()))
        .collect();
    RatMatrix::from_rows(&rows)
}
