use super::{first_noncommuting_degree, normalize_with, NormalFormResult, NormalizerError};
use crate::algebra::{AlgebraError, NearIdentityMap, VectorField};
use crate::matalg::RatMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    LinearThrough(usize),
    ObstructedAt(usize),
}

impl Verdict {
    pub fn is_linear(&self) -> bool {
        matches!(self, Verdict::LinearThrough(_))
    }
}

/// Outcome of linearizing `X` through a symmetry `Y` with `(DY)(0) = I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationCertificate {
    pub verdict: Verdict,
    /// Original → linearizing coordinates (the unique normalizer of `Y`).
    pub transformation: NearIdentityMap,
    pub normalized_x: VectorField,
    pub normalized_y: VectorField,
    /// Whether `Y` became the dilation field through the working degree.
    pub symmetry_linearized: bool,
    /// Linear part of the transformed `X`.
    pub linear_part: RatMatrix,
    /// The normalization of `Y` (per-degree solution dimensions included).
    pub y_normal_form: NormalFormResult,
}

/// Normalizes the symmetry `Y` (its linear part is the identity, so every
/// homological operator `ad_I = (m − 1)·Id` is invertible and the
/// transformation is unique) and applies the same transformation to `X`.
pub fn linearize_via_symmetry(
    x: &VectorField,
    y: &VectorField,
    k: usize,
) -> Result<LinearizationCertificate, NormalizerError> {
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
    if !y.linear_part().is_identity() {
        return Err(NormalizerError::SymmetryNotIdentity);
    }
    if x.has_constant_terms() {
        return Err(NormalizerError::ConstantTerm);
    }
    if let Some(degree) = first_noncommuting_degree(x, y, k)? {
        return Err(NormalizerError::NonCommuting { degree });
    }
    let (ynf, mut carried) = normalize_with(y, std::slice::from_ref(x), k)?;
    let nx = carried.pop().expect("one companion");
    let symmetry_linearized = ynf.normalized == VectorField::dilation(x.dim(), k);
    let verdict = match nx.first_nonlinear_degree() {
        None => Verdict::LinearThrough(k),
        Some(d) => Verdict::ObstructedAt(d),
    };
    Ok(LinearizationCertificate {
        verdict,
        transformation: ynf.transformation.clone(),
        linear_part: nx.linear_part(),
        normalized_x: nx,
        normalized_y: ynf.normalized.clone(),
        symmetry_linearized,
        y_normal_form: ynf,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;

    fn field(n: usize, comps: &[&[(i64, &[u32])]], k: usize) -> VectorField {
        VectorField::new(comps.iter().map(|t| Polynomial::from_int_terms(n, t)).collect(), k).unwrap()
    }

    #[test]
    fn example_one() {
        let x = field(2, &[&[(1, &[1, 0])], &[(3, &[0, 1]), (-1, &[2, 0])]], 5);
        let y = field(2, &[&[(1, &[1, 0])], &[(1, &[0, 1]), (1, &[2, 0])]], 5);
        let c = linearize_via_symmetry(&x, &y, 5).unwrap();
        assert_eq!(c.verdict, Verdict::LinearThrough(5));
        assert!(c.symmetry_linearized);
        assert_eq!(c.linear_part, RatMatrix::from_i64(&[&[1, 0], &[0, 3]]));
        assert!(c.y_normal_form.solution_dims.iter().all(|&(_, d)| d == 0));
    }

    #[test]
    fn example_two() {
        let x = field(2, &[&[(1, &[1, 0]), (1, &[4, 1])], &[(-2, &[0, 1]), (-1, &[3, 2])]], 9);
        let y = field(2, &[&[(1, &[1, 0]), (4, &[4, 1])], &[(1, &[0, 1]), (-4, &[3, 2])]], 9);
        let c = linearize_via_symmetry(&x, &y, 9).unwrap();
        assert_eq!(c.verdict, Verdict::LinearThrough(9));
    }

    #[test]
    fn symmetry_must_have_identity_linear_part() {
        let x = VectorField::dilation(2, 3);
        let y = VectorField::linear(&RatMatrix::from_i64(&[&[2, 0], &[0, 1]]), 3);
        assert_eq!(
            linearize_via_symmetry(&x, &y, 3),
            Err(NormalizerError::SymmetryNotIdentity)
        );
    }
}
