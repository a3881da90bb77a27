//! Symmetries of a polynomial vector field.
//!
//! [`find_symmetry`] solves `[X, Y] = 0` degree by degree for a `Y` with a
//! prescribed linear part `B`: at degree `m` the unknown `G_m` enters only
//! through `ad_A G_m`, and everything else is already known. When a degree
//! is infeasible the search stops and the partial `Y` (valid through the
//! previous degree) is returned.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{bracket_degree_part, lie_bracket, AlgebraError, Monomial, Polynomial, VectorField};
use crate::homological::{ad_matrix, GradedBasis};
use crate::matalg::{solve_linear, solve_linear_ranked, LinearSolution, RatMatrix};
use crate::scalar::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("requested linear part does not commute with the field's linear part")]
    LinearPartsDoNotCommute,
    #[error("matrix is {rows}x{cols}, field dimension is {dim}")]
    Shape { rows: usize, cols: usize, dim: usize },
    #[error("the field has a nonzero constant term")]
    ConstantTerm,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeStatus {
    /// The degree-m correction is uniquely determined.
    Unique,
    /// A `d`-dimensional family of corrections; free variables were zeroed.
    Parametrized(usize),
    Obstructed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSolution {
    pub degree: usize,
    pub solution_dim: usize,
    pub status: DegreeStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryResult {
    /// The symmetry, valid through `symmetry.degree()`.
    pub symmetry: VectorField,
    pub degrees: Vec<DegreeSolution>,
    pub obstruction: Option<usize>,
    /// For an obstruction: `w` with `wᵀ ad_A = 0` and `wᵀ rhs ≠ 0`, in the
    /// graded basis of the obstructed degree.
    pub witness: Option<Vec<Rational>>,
}

impl SymmetryResult {
    pub fn is_obstructed(&self) -> bool {
        self.obstruction.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.degrees.iter().all(|d| d.status == DegreeStatus::Unique)
    }
}

/// Solves the determining equations `[X, Y] = 0` for `Y = Bx + Σ G_m`,
/// `m = 2..=k`, choosing the zero-free-variable solution at each degree.
pub fn find_symmetry(x: &VectorField, b: &RatMatrix, k: usize) -> Result<SymmetryResult, SymmetryError> {
    let n = x.dim();
    if b.rows() != n || b.cols() != n {
        return Err(SymmetryError::Shape {
            rows: b.rows(),
            cols: b.cols(),
            dim: n,
        });
    }
    if x.has_constant_terms() {
        return Err(SymmetryError::ConstantTerm);
    }
    let a = x.linear_part();
    if !a.commutator(b).is_zero() {
        return Err(SymmetryError::LinearPartsDoNotCommute);
    }
    let k = k.max(1);
    let xk = x.truncated(k);
    let mut y: Vec<Polynomial> = VectorField::linear(b, k).into_components();
    let mut degrees = Vec::new();
    for m in 2..=k {
        let basis = GradedBasis::new(n, m);
        let known = bracket_degree_part(xk.components(), &y, m);
        let rhs: Vec<Rational> = basis.coords(&known).into_iter().map(|v| -v).collect();
        let ad = ad_matrix(&a, m);
        let (sol, rank) = solve_linear_ranked(&ad, &rhs);
        let solution_dim = basis.len() - rank;
        match sol {
            LinearSolution::Solved(g) => {
                for (yi, gi) in y.iter_mut().zip(basis.vector(&g)) {
                    yi.add_assign_ref(&gi);
                }
                degrees.push(DegreeSolution {
                    degree: m,
                    solution_dim,
                    status: if solution_dim == 0 {
                        DegreeStatus::Unique
                    } else {
                        DegreeStatus::Parametrized(solution_dim)
                    },
                });
            }
            LinearSolution::Infeasible { witness } => {
                degrees.push(DegreeSolution {
                    degree: m,
                    solution_dim,
                    status: DegreeStatus::Obstructed,
                });
                return Ok(SymmetryResult {
                    symmetry: VectorField::new(y, m - 1)?,
                    degrees,
                    obstruction: Some(m),
                    witness: Some(witness),
                });
            }
        }
    }
    Ok(SymmetryResult {
        symmetry: VectorField::new(y, k)?,
        degrees,
        obstruction: None,
        witness: None,
    })
}

/// The linear fields `x ↦ A^j x`, `j = 0..=max_power`; `j = 0` is the
/// dilation field. All of them commute with each other and with `Ax`.
pub fn power_symmetries(a: &RatMatrix, max_power: usize, k: usize) -> Vec<VectorField> {
    let mut out = Vec::with_capacity(max_power + 1);
    let mut p = RatMatrix::identity(a.rows());
    for _ in 0..=max_power {
        out.push(VectorField::linear(&p, k));
        p = p.mul(a);
    }
    out
}

/// One entry of a commutator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairBracket {
    pub i: usize,
    pub j: usize,
    pub bracket: VectorField,
    pub vanishes: bool,
    /// Linear part of the bracket equals the matrix identity
    /// `D[Yᵢ, Yⱼ](0) = (DYⱼ)(0)(DYᵢ)(0) − (DYᵢ)(0)(DYⱼ)(0)` (the sign follows
    /// from the component formula of the bracket).
    pub linear_part_ok: bool,
    /// Coefficients expressing the bracket in the given fields, if it lies
    /// in their ℚ-span through the truncation degree.
    pub in_span: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorReport {
    pub pairs: Vec<PairBracket>,
    /// Every bracket lies in the ℚ-span of the fields.
    pub closes: bool,
    pub all_commute: bool,
}

/// All pairwise brackets of a list of fields, with the linear-part identity
/// and a closure check (structure constants over ℚ).
pub fn commutator_report(fields: &[VectorField]) -> Result<CommutatorReport, SymmetryError> {
    let mut pairs = Vec::new();
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let br = lie_bracket(&fields[i], &fields[j])?;
            let (li, lj) = (fields[i].linear_part(), fields[j].linear_part());
            let linear_part_ok = br.linear_part() == lj.mul(&li).sub(&li.mul(&lj));
            let in_span = span_coefficients(fields, &br);
            pairs.push(PairBracket {
                i,
                j,
                vanishes: br.is_zero(),
                bracket: br,
                linear_part_ok,
                in_span,
            });
        }
    }
    Ok(CommutatorReport {
        closes: pairs.iter().all(|p| p.in_span.is_some()),
        all_commute: pairs.iter().all(|p| p.vanishes),
        pairs,
    })
}

fn span_coefficients(fields: &[VectorField], target: &VectorField) -> Option<Vec<Rational>> {
    let k = target.degree();
    let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let all = fields.iter().chain(std::iter::once(target));
    for f in all {
        for (r, p) in f.components().iter().enumerate() {
            for (mono, _) in p.terms() {
                if mono.degree() <= k {
                    let next = keys.len();
                    keys.entry((r, mono.clone())).or_insert(next);
                }
            }
        }
    }
    let mut order: Vec<(&(usize, Monomial), &usize)> = keys.iter().collect();
    order.sort_by_key(|(_, &i)| i);
    let coords = |f: &VectorField| -> Vec<Rational> {
        order
            .iter()
            .map(|((r, mono), _)| f.component(*r).coeff(mono))
            .collect()
    };
    if keys.is_empty() {
        return Some(vec![Rational::from_integer(0.into()); fields.len()]);
    }
    let cols: Vec<Vec<Rational>> = fields.iter().map(|f| coords(&f.truncated(k))).collect();
    let m = RatMatrix::from_columns(keys.len(), &cols);
    solve_linear(&m, &coords(target)).solution().map(<[Rational]>::to_vec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: usize, comps: &[&[(i64, &[u32])]], k: usize) -> VectorField {
        VectorField::new(comps.iter().map(|t| Polynomial::from_int_terms(n, t)).collect(), k).unwrap()
    }

    fn example_one(k: usize) -> VectorField {
        field(2, &[&[(1, &[1, 0])], &[(3, &[0, 1]), (-1, &[2, 0])]], k)
    }

    #[test]
    fn example_one_symmetry() {
        let r = find_symmetry(&example_one(5), &RatMatrix::identity(2), 5).unwrap();
        assert!(r.obstruction.is_none());
        let expected = field(2, &[&[(1, &[1, 0])], &[(1, &[0, 1]), (1, &[2, 0])]], 5);
        assert_eq!(r.symmetry, expected);
        // x³ e₂ is resonant for diag(1, 3): a one-parameter family at degree 3
        assert_eq!(r.degrees[1].status, DegreeStatus::Parametrized(1));
    }

    #[test]
    fn linear_field_gets_the_dilation() {
        let x = VectorField::linear(&RatMatrix::from_i64(&[&[2, 1], &[0, -1]]), 4);
        let r = find_symmetry(&x, &RatMatrix::identity(2), 4).unwrap();
        assert_eq!(r.symmetry, VectorField::dilation(2, 4));
    }

    #[test]
    fn resonant_quadratic_obstructs() {
        let x = field(2, &[&[(1, &[1, 0])], &[(2, &[0, 1]), (1, &[2, 0])]], 4);
        let r = find_symmetry(&x, &RatMatrix::identity(2), 4).unwrap();
        assert_eq!(r.obstruction, Some(2));
        assert_eq!(r.symmetry.degree(), 1);
        assert!(lie_bracket(&x.truncated(1), &r.symmetry).unwrap().is_zero());
    }

    #[test]
    fn non_commuting_target_rejected() {
        let x = VectorField::linear(&RatMatrix::from_i64(&[&[1, 1], &[0, 2]]), 3);
        let b = RatMatrix::from_i64(&[&[1, 0], &[0, 2]]);
        assert_eq!(find_symmetry(&x, &b, 3), Err(SymmetryError::LinearPartsDoNotCommute));
    }

    #[test]
    fn powers_commute() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, 3]]);
        let ps = power_symmetries(&a, 3, 4);
        assert_eq!(ps[0], VectorField::dilation(2, 4));
        assert_eq!(ps[2].linear_part(), RatMatrix::from_i64(&[&[1, 0], &[0, 9]]));
        let mut all = ps.clone();
        all.push(VectorField::linear(&a, 4));
        assert!(commutator_report(&all).unwrap().all_commute);
    }

    #[test]
    fn planar_bracket_table() {
        // X = (−y, x), Z = (x, y), Y = r²X + Z
        let xr = field(2, &[&[(-1, &[0, 1])], &[(1, &[1, 0])]], 5);
        let z = VectorField::dilation(2, 5);
        let y = field(
            2,
            &[
                &[(1, &[1, 0]), (-1, &[2, 1]), (-1, &[0, 3])],
                &[(1, &[0, 1]), (1, &[3, 0]), (1, &[1, 2])],
            ],
            5,
        );
        let r = commutator_report(&[y.clone(), z.clone()]).unwrap();
        let br = &r.pairs[0].bracket;
        let r2x = field(
            2,
            &[&[(2, &[2, 1]), (2, &[0, 3])], &[(-2, &[3, 0]), (-2, &[1, 2])]],
            5,
        );
        assert_eq!(*br, r2x);
        assert!(r.pairs[0].linear_part_ok);
        assert!(lie_bracket(&xr, &z).unwrap().is_zero());
        // r²X = Y − Z, so the pair closes: [Y, Z] = −2Y + 2Z
        assert!(r.closes);
        assert_eq!(r.pairs[0].in_span, Some(vec![Rational::from_integer((-2).into()), Rational::from_integer(2.into())]));
    }
}
