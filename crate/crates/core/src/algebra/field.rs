use num_traits::{One, Zero};

use super::{AlgebraError, Monomial, Polynomial};
use crate::matalg::RatMatrix;
use crate::scalar::Rational;

/// A square matrix of polynomials, row-major.
pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// Polynomial vector field `Σ fⁱ(x) ∂ᵢ` on ℚⁿ, truncated at a total degree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorField {
    components: Vec<Polynomial>,
    degree: usize,
}

impl VectorField {
    /// Builds a field from its components; terms above `degree` are dropped.
    pub fn new(components: Vec<Polynomial>, degree: usize) -> Result<Self, AlgebraError> {
        let n = components.len();
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        if degree == 0 {
            return Err(AlgebraError::ZeroTruncation);
        }
        if let Some(p) = components.iter().find(|p| p.nvars() != n) {
            return Err(AlgebraError::DimensionMismatch {
                left: n,
                right: p.nvars(),
            });
        }
        Ok(Self {
            components: components.into_iter().map(|p| p.truncated(degree)).collect(),
            degree,
        })
    }

    /// The linear field `x ↦ A x`.
    pub fn linear(a: &RatMatrix, degree: usize) -> Self {
        let n = a.rows();
        assert_eq!(n, a.cols(), "linear field needs a square matrix");
        let components = (0..n)
            .map(|i| {
                Polynomial::from_terms(
                    n,
                    (0..n).map(|j| (Monomial::var(n, j), a[(i, j)].clone())),
                )
            })
            .collect();
        Self {
            components,
            degree: degree.max(1),
        }
    }

    /// The dilation field `S = Σ xᵢ ∂ᵢ`.
    pub fn dilation(n: usize, degree: usize) -> Self {
        Self::linear(&RatMatrix::identity(n), degree)
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn truncated(&self, k: usize) -> VectorField {
        VectorField {
            components: self.components.iter().map(|p| p.clone().truncated(k)).collect(),
            degree: k.max(1),
        }
    }

    /// Same components, relabelled truncation degree (terms above it are dropped).
    pub fn with_degree(self, k: usize) -> VectorField {
        let k = k.max(1);
        VectorField {
            components: self.components.into_iter().map(|p| p.truncated(k)).collect(),
            degree: k,
        }
    }

    /// `(Df)(0)`: entry (i, j) is the coefficient of x_j in fⁱ.
    pub fn linear_part(&self) -> RatMatrix {
        let n = self.dim();
        let mut a = RatMatrix::zeros(n, n);
        for (i, p) in self.components.iter().enumerate() {
            for j in 0..n {
                a[(i, j)] = p.coeff(&Monomial::var(n, j));
            }
        }
        a
    }

    /// Degree-`m` homogeneous part of every component.
    pub fn homogeneous(&self, m: usize) -> Vec<Polynomial> {
        self.components.iter().map(|p| p.homogeneous_part(m)).collect()
    }

    pub fn has_constant_terms(&self) -> bool {
        let one = Monomial::one(self.dim());
        self.components.iter().any(|p| !p.coeff(&one).is_zero())
    }

    /// True when every term has degree exactly one (or the field is zero).
    pub fn is_linear(&self) -> bool {
        self.components
            .iter()
            .all(|p| p.terms().all(|(m, _)| m.degree() == 1))
    }

    /// Lowest degree ≥ 2 carrying a nonzero term.
    pub fn first_nonlinear_degree(&self) -> Option<usize> {
        self.components
            .iter()
            .flat_map(|p| p.terms().map(|(m, _)| m.degree()))
            .filter(|&d| d >= 2)
            .min()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Polynomial::is_zero)
    }

    pub fn add(&self, other: &VectorField) -> Result<VectorField, AlgebraError> {
        self.check_dim(other)?;
        let k = self.degree.min(other.degree);
        Ok(VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b).truncated(k))
                .collect(),
            degree: k,
        })
    }

    pub fn sub(&self, other: &VectorField) -> Result<VectorField, AlgebraError> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> VectorField {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
            degree: self.degree,
        }
    }

    /// Component-wise product with a scalar polynomial, truncated.
    pub fn mul_poly(&self, p: &Polynomial) -> VectorField {
        VectorField {
            components: self
                .components
                .iter()
                .map(|c| c.mul_trunc(p, self.degree))
                .collect(),
            degree: self.degree,
        }
    }

    pub fn eval_f64(&self, x: &[f64]) -> Vec<f64> {
        self.components.iter().map(|p| p.eval_f64(x)).collect()
    }

    pub fn format_with(&self, names: &[String]) -> Vec<String> {
        self.components.iter().map(|p| p.format_with(names)).collect()
    }

    fn check_dim(&self, other: &VectorField) -> Result<(), AlgebraError> {
        if self.dim() != other.dim() {
            Err(AlgebraError::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            })
        } else {
            Ok(())
        }
    }
}

/// Lie bracket `{f, g}ⁱ = fʲ ∂ⱼ gⁱ − gʲ ∂ⱼ fⁱ`, truncated at the smaller
/// of the two truncation degrees.
pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, AlgebraError> {
    x.check_dim(y)?;
    let k = x.degree.min(y.degree);
    let components = bracket_components(&x.components, &y.components, k);
    Ok(VectorField {
        components,
        degree: k,
    })
}

pub(crate) fn bracket_components(f: &[Polynomial], g: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let n = f.len();
    let mut out = vec![Polynomial::zero(n); n];
    for j in 0..n {
        if f[j].is_zero() && g[j].is_zero() {
            continue;
        }
        for i in 0..n {
            if !f[j].is_zero() {
                let dg = g[i].derivative(j);
                if !dg.is_zero() {
                    out[i].add_assign_ref(&f[j].mul_trunc(&dg, k));
                }
            }
            if !g[j].is_zero() {
                let df = f[i].derivative(j);
                if !df.is_zero() {
                    out[i].add_assign_ref(&g[j].mul_trunc(&df, k).neg());
                }
            }
        }
    }
    out
}

/// Degree-`m` part of the bracket of two polynomial vectors, computed from
/// the pairs of homogeneous pieces that can contribute to it.
pub(crate) fn bracket_degree_part(f: &[Polynomial], g: &[Polynomial], m: usize) -> Vec<Polynomial> {
    let n = f.len();
    let mut out = vec![Polynomial::zero(n); n];
    for a in 0..=m + 1 {
        let b = m + 1 - a;
        let fa: Vec<Polynomial> = f.iter().map(|p| p.homogeneous_part(a)).collect();
        if fa.iter().all(Polynomial::is_zero) {
            continue;
        }
        let gb: Vec<Polynomial> = g.iter().map(|p| p.homogeneous_part(b)).collect();
        if gb.iter().all(Polynomial::is_zero) {
            continue;
        }
        let part = bracket_components(&fa, &gb, m);
        for (o, p) in out.iter_mut().zip(part) {
            o.add_assign_ref(&p.homogeneous_part(m));
        }
    }
    out
}

/// `J_ij = ∂φᵢ/∂x_j`.
pub fn jacobian(map: &[Polynomial]) -> PolyMatrix {
    map.iter()
        .map(|p| (0..p.nvars()).map(|j| p.derivative(j)).collect())
        .collect()
}

/// Matrix–vector product of polynomial objects, truncated at `k`.
pub(crate) fn poly_mat_vec(m: &PolyMatrix, v: &[Polynomial], k: usize) -> Vec<Polynomial> {
    let n = v.first().map_or(0, Polynomial::nvars);
    m.iter()
        .map(|row| {
            let mut acc = Polynomial::zero(n);
            for (a, b) in row.iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    acc.add_assign_ref(&a.mul_trunc(b, k));
                }
            }
            acc
        })
        .collect()
}
