use num_traits::{One, Zero};

use super::field::{jacobian, poly_mat_vec, PolyMatrix};
use super::{AlgebraError, Monomial, Polynomial, Substitution, VectorField};

/// Near-identity polynomial change of coordinates `u = φ(x)` together with
/// its inverse `x = ψ(u)`, both truncated at `degree`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NearIdentityMap {
    forward: Vec<Polynomial>,
    inverse: Vec<Polynomial>,
    degree: usize,
}

impl NearIdentityMap {
    /// Validates `forward` and computes its truncated inverse.
    pub fn new(forward: Vec<Polynomial>, degree: usize) -> Result<Self, AlgebraError> {
        let forward: Vec<Polynomial> = forward.into_iter().map(|p| p.truncated(degree)).collect();
        let inverse = invert_map(&forward, degree)?;
        Ok(Self {
            forward,
            inverse,
            degree,
        })
    }

    pub(crate) fn from_parts(forward: Vec<Polynomial>, inverse: Vec<Polynomial>, degree: usize) -> Self {
        Self {
            forward,
            inverse,
            degree,
        }
    }

    pub fn identity(n: usize, degree: usize) -> Self {
        let id: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
        Self {
            forward: id.clone(),
            inverse: id,
            degree,
        }
    }

    pub fn dim(&self) -> usize {
        self.forward.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn forward(&self) -> &[Polynomial] {
        &self.forward
    }

    pub fn inverse(&self) -> &[Polynomial] {
        &self.inverse
    }

    pub fn is_identity(&self) -> bool {
        self.forward
            .iter()
            .enumerate()
            .all(|(i, p)| *p == Polynomial::var(self.dim(), i))
    }

    /// The map with forward and inverse swapped.
    pub fn inverted(&self) -> NearIdentityMap {
        Self {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            degree: self.degree,
        }
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &NearIdentityMap) -> Result<NearIdentityMap, AlgebraError> {
        let k = self.degree.min(other.degree);
        let mut fwd = Substitution::new(&self.forward, k)?;
        let forward = other.forward.iter().map(|p| fwd.apply(p)).collect();
        let mut inv = Substitution::new(&other.inverse, k)?;
        let inverse = self.inverse.iter().map(|p| inv.apply(p)).collect();
        Ok(Self {
            forward,
            inverse,
            degree: k,
        })
    }

    /// Expresses `field` (given in the source coordinates x) in the target
    /// coordinates u = φ(x): g(u) = (Dφ · f)(ψ(u)).
    pub fn transport(&self, field: &VectorField) -> Result<VectorField, AlgebraError> {
        if field.dim() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                left: field.dim(),
                right: self.dim(),
            });
        }
        let k = field.degree().min(self.degree);
        let j = jacobian(&self.forward);
        let pushed = poly_mat_vec(&j, field.components(), k);
        let mut sub = Substitution::new(&self.inverse, k)?;
        VectorField::new(pushed.iter().map(|p| sub.apply(p)).collect(), k)
    }

    pub fn apply_f64(&self, x: &[f64]) -> Vec<f64> {
        self.forward.iter().map(|p| p.eval_f64(x)).collect()
    }

    pub fn apply_inverse_f64(&self, u: &[f64]) -> Vec<f64> {
        self.inverse.iter().map(|p| p.eval_f64(u)).collect()
    }
}

/// Checks that `map` has no constant terms and identity linear part.
pub fn check_near_identity(map: &[Polynomial]) -> Result<(), AlgebraError> {
    let n = map.len();
    for (i, p) in map.iter().enumerate() {
        if p.nvars() != n {
            return Err(AlgebraError::DimensionMismatch {
                left: n,
                right: p.nvars(),
            });
        }
        if !p.coeff(&Monomial::one(n)).is_zero() {
            return Err(AlgebraError::NotNearIdentity { component: i });
        }
        for j in 0..n {
            let c = p.coeff(&Monomial::var(n, j));
            let ok = if i == j { c.is_one() } else { c.is_zero() };
            if !ok {
                return Err(AlgebraError::NotNearIdentity { component: i });
            }
        }
    }
    Ok(())
}

/// Truncated inverse of a near-identity map φ(x) = x + N(x): the fixed
/// point of ψ ↦ u − N(ψ(u)), which gains at least one degree per pass.
pub fn invert_map(forward: &[Polynomial], k: usize) -> Result<Vec<Polynomial>, AlgebraError> {
    check_near_identity(forward)?;
    let n = forward.len();
    let id: Vec<Polynomial> = (0..n).map(|i| Polynomial::var(n, i)).collect();
    let nonlinear: Vec<Polynomial> = forward
        .iter()
        .zip(&id)
        .map(|(p, x)| p.sub(x).truncated(k))
        .collect();
    if nonlinear.iter().all(Polynomial::is_zero) {
        return Ok(id);
    }
    let gain = nonlinear
        .iter()
        .filter_map(Polynomial::min_degree)
        .min()
        .unwrap_or(2)
        .saturating_sub(1)
        .max(1);
    let mut psi = id.clone();
    // accuracy after t passes is 1 + t·gain
    let passes = (k.saturating_sub(1)).div_ceil(gain) + 1;
    for _ in 0..passes {
        let mut sub = Substitution::new(&psi, k)?;
        let next: Vec<Polynomial> = id
            .iter()
            .zip(&nonlinear)
            .map(|(x, q)| x.sub(&sub.apply(q)))
            .collect();
        if next == psi {
            break;
        }
        psi = next;
    }
    Ok(psi)
}

/// `J⁻¹` as the truncated Neumann series of `(I + N)⁻¹`, `N = J − I`.
pub fn jacobian_inverse(j: &PolyMatrix, k: usize) -> PolyMatrix {
    let n = j.len();
    let nvars = j.first().and_then(|r| r.first()).map_or(n, Polynomial::nvars);
    let eye = |r: usize, c: usize| {
        if r == c {
            Polynomial::constant(nvars, num_traits::One::one())
        } else {
            Polynomial::zero(nvars)
        }
    };
    let nil: PolyMatrix = (0..n)
        .map(|r| (0..n).map(|c| j[r][c].sub(&eye(r, c))).collect())
        .collect();
    // Horner: M ← I − N·M, each pass fixes one more degree
    let mut m: PolyMatrix = (0..n).map(|r| (0..n).map(|c| eye(r, c)).collect()).collect();
    for _ in 0..=k {
        let mut next: PolyMatrix = vec![vec![Polynomial::zero(nvars); n]; n];
        for r in 0..n {
            for c in 0..n {
                let mut acc = eye(r, c);
                for t in 0..n {
                    if !nil[r][t].is_zero() && !m[t][c].is_zero() {
                        acc = acc.sub(&nil[r][t].mul_trunc(&m[t][c], k));
                    }
                }
                next[r][c] = acc;
            }
        }
        if next == m {
            break;
        }
        m = next;
    }
    m
}

/// Pushes a field given in y-coordinates through y = φ(x):
/// f(x) = J⁻¹(x) · field(φ(x)), truncated at `k`.
pub fn pushforward(field: &VectorField, phi: &[Polynomial], k: usize) -> Result<VectorField, AlgebraError> {
    if field.dim() != phi.len() {
        return Err(AlgebraError::DimensionMismatch {
            left: field.dim(),
            right: phi.len(),
        });
    }
    check_near_identity(phi)?;
    let k = k.min(field.degree());
    let mut sub = Substitution::new(phi, k)?;
    let composed: Vec<Polynomial> = field.components().iter().map(|p| sub.apply(p)).collect();
    let jinv = jacobian_inverse(&jacobian(phi), k);
    VectorField::new(poly_mat_vec(&jinv, &composed, k), k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn one_d(terms: &[(i64, &[u32])]) -> Polynomial {
        Polynomial::from_int_terms(1, terms)
    }

    #[test]
    fn identity_inverts_to_identity() {
        let id = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        assert_eq!(invert_map(&id, 6).unwrap(), id);
    }

    #[test]
    fn catalan_inverse() {
        // y = x + x²  ⇒  x = y − y² + 2y³ − 5y⁴ + …
        let phi = vec![one_d(&[(1, &[1]), (1, &[2])])];
        let psi = invert_map(&phi, 4).unwrap();
        assert_eq!(psi[0], one_d(&[(1, &[1]), (-1, &[2]), (2, &[3]), (-5, &[4])]));
        let back = phi[0].substitute(&psi, 4).unwrap();
        assert_eq!(back, Polynomial::var(1, 0));
    }

    #[test]
    fn rejects_non_identity_linear_part() {
        let phi = vec![one_d(&[(2, &[1])])];
        assert!(matches!(
            invert_map(&phi, 3),
            Err(AlgebraError::NotNearIdentity { component: 0 })
        ));
    }

    #[test]
    fn pushforward_one_dimensional() {
        // ẏ = y through y = x + x²: ẋ = (x + x²)/(1 + 2x) = x − x² + 2x³ − 4x⁴ + …
        let f = VectorField::new(vec![Polynomial::var(1, 0)], 4).unwrap();
        let phi = vec![one_d(&[(1, &[1]), (1, &[2])])];
        let g = pushforward(&f, &phi, 4).unwrap();
        assert_eq!(
            g.component(0),
            &one_d(&[(1, &[1]), (-1, &[2]), (2, &[3]), (-4, &[4])])
        );
    }

    #[test]
    fn pushforward_identity_is_noop() {
        let f = VectorField::new(
            vec![
                Polynomial::from_int_terms(2, &[(1, &[1, 0]), (3, &[2, 1])]),
                Polynomial::from_int_terms(2, &[(-2, &[0, 1]), (1, &[0, 3])]),
            ],
            5,
        )
        .unwrap();
        let id = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        assert_eq!(pushforward(&f, &id, 5).unwrap(), f);
    }

    #[test]
    fn transport_agrees_with_pushforward_of_inverse() {
        let f = VectorField::new(
            vec![
                Polynomial::from_int_terms(2, &[(1, &[1, 0]), (1, &[1, 1])]),
                Polynomial::from_int_terms(2, &[(3, &[0, 1]), (-1, &[2, 0])]),
            ],
            6,
        )
        .unwrap();
        let map = NearIdentityMap::new(
            vec![
                Polynomial::from_int_terms(2, &[(1, &[1, 0]), (2, &[0, 2])]),
                Polynomial::from_int_terms(2, &[(1, &[0, 1]), (-1, &[2, 0]), (1, &[1, 2])]),
            ],
            6,
        )
        .unwrap();
        let a = map.transport(&f).unwrap();
        // f lives in x; the new field lives in u; pushforward along x = ψ(u)
        let b = pushforward(&f, map.inverse(), 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn neumann_inverse_of_shear() {
        let phi = vec![
            Polynomial::var(2, 0),
            Polynomial::from_int_terms(2, &[(1, &[0, 1]), (1, &[2, 0])]),
        ];
        let jinv = jacobian_inverse(&jacobian(&phi), 4);
        assert_eq!(jinv[1][0], Polynomial::from_int_terms(2, &[(-2, &[1, 0])]));
        assert_eq!(jinv[1][1], Polynomial::constant(2, int(1)));
    }
}
