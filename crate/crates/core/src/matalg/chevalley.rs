use super::rref::{inverse, solve_linear, LinearSolution};
use super::upoly::{char_poly, UPoly};
use super::RatMatrix;
use crate::scalar::Rational;

/// Jordan–Chevalley splitting `A = S + N` with `S` semisimple, `N`
/// nilpotent and `[S, N] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SNDecomposition {
    pub semisimple: RatMatrix,
    pub nilpotent: RatMatrix,
}

impl SNDecomposition {
    pub fn is_semisimple(&self) -> bool {
        self.nilpotent.is_zero()
    }
}

/// Computes the decomposition over ℚ with the Newton iteration
/// `S ← S − q(S)·q′(S)⁻¹`, where `q` is the squarefree part of the
/// characteristic polynomial. `S` stays a polynomial in `A` throughout.
pub fn sn_decompose(a: &RatMatrix) -> SNDecomposition {
    assert!(a.is_square(), "S+N decomposition needs a square matrix");
    let q = char_poly(a).squarefree_part();
    let dq = q.derivative();
    let mut s = a.clone();
    // quadratic convergence in the q-adic sense: ⌈log₂ n⌉ + 1 steps suffice,
    // the loop exits as soon as q(S) vanishes
    for _ in 0..=a.rows().max(1) {
        let qs = q.eval_matrix(&s);
        if qs.is_zero() {
            break;
        }
        let dinv = inverse(&dq.eval_matrix(&s))
            .expect("q'(S) is invertible because q is squarefree");
        s = s.sub(&qs.mul(&dinv));
    }
    debug_assert!(q.eval_matrix(&s).is_zero());
    let nilpotent = a.sub(&s);
    SNDecomposition {
        semisimple: s,
        nilpotent,
    }
}

/// Minimal polynomial via the first linear dependency among
/// `I, M, M², …` (flattened), monic.
pub fn minimal_polynomial(m: &RatMatrix) -> UPoly {
    let n = m.rows();
    let flat = |p: &RatMatrix| -> Vec<Rational> { (0..n).flat_map(|i| p.row(i).to_vec()).collect() };
    let mut powers = vec![flat(&RatMatrix::identity(n))];
    let mut cur = RatMatrix::identity(n);
    for d in 1..=n {
        cur = cur.mul(m);
        let target = flat(&cur);
        let basis = RatMatrix::from_columns(n * n, &powers);
        if let LinearSolution::Solved(c) = solve_linear(&basis, &target) {
            let mut coeffs: Vec<Rational> = c.into_iter().map(|v| -v).collect();
            coeffs.push(num_traits::One::one());
            debug_assert_eq!(coeffs.len(), d + 1);
            return UPoly::new(coeffs);
        }
        powers.push(target);
    }
    unreachable!("Cayley–Hamilton bounds the minimal polynomial degree by n")
}

/// True when the polynomial has no repeated factor.
pub fn is_squarefree(p: &UPoly) -> bool {
    p.gcd(&p.derivative()).degree().unwrap_or(0) == 0
}

/// Smallest `j ≤ n` with `N^j = 0`, if any.
pub fn nilpotency_index(nil: &RatMatrix) -> Option<usize> {
    let n = nil.rows();
    let mut p = RatMatrix::identity(n);
    for j in 0..=n {
        if p.is_zero() {
            return Some(j);
        }
        p = p.mul(nil);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &RatMatrix) -> SNDecomposition {
        let d = sn_decompose(a);
        assert_eq!(d.semisimple.add(&d.nilpotent), *a);
        assert!(d.semisimple.commutator(&d.nilpotent).is_zero());
        assert!(nilpotency_index(&d.nilpotent).is_some());
        assert!(is_squarefree(&minimal_polynomial(&d.semisimple)));
        d
    }

    #[test]
    fn diagonal_is_semisimple() {
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, -2]]);
        let d = check(&a);
        assert_eq!(d.semisimple, a);
        assert!(d.nilpotent.is_zero());
    }

    #[test]
    fn jordan_block() {
        let a = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let d = check(&a);
        assert!(d.semisimple.is_identity());
        assert_eq!(d.nilpotent, RatMatrix::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn rotation_is_semisimple() {
        let a = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let d = check(&a);
        assert_eq!(d.semisimple, a);
    }

    #[test]
    fn mixed_blocks() {
        // a 2×2 Jordan block at 2 conjugated by an integer matrix, plus a 3
        let a = RatMatrix::from_i64(&[&[3, 1, 0], &[-1, 1, 0], &[4, 2, 3]]);
        let d = check(&a);
        assert!(!d.nilpotent.is_zero());
    }

    #[test]
    fn minimal_polynomial_of_identity() {
        assert_eq!(
            minimal_polynomial(&RatMatrix::identity(3)),
            UPoly::from_i64(&[-1, 1])
        );
    }
}
