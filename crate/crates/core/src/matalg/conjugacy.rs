use super::eigen::split_squarefree;
use super::rref::rank;
use super::upoly::{char_poly, UPoly};
use super::RatMatrix;

/// One similarity invariant compared between two matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub name: String,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub equivalent: bool,
    pub checks: Vec<InvariantCheck>,
    /// Name of the first invariant that differs.
    pub first_failure: Option<String>,
    /// False when some factor of the characteristic polynomial could not be
    /// split over ℚ, so its rank sequence mixes several eigenvalues.
    pub complete: bool,
}

/// Necessary condition for `B ~ B̃`: equal characteristic polynomials, and
/// equal ranks of `f(B)^j` for every rational irreducible factor `f` found
/// and `j = 1..n`. For factors split into distinct eigenvalues this is the
/// full set of similarity invariants.
pub fn conjugacy_necessary_check(b: &RatMatrix, bt: &RatMatrix) -> ConjugacyReport {
    let mut checks = Vec::new();
    if b.rows() != bt.rows() || !b.is_square() || !bt.is_square() {
        let c = InvariantCheck {
            name: "size".into(),
            left: format!("{}x{}", b.rows(), b.cols()),
            right: format!("{}x{}", bt.rows(), bt.cols()),
            equal: false,
        };
        return finish(vec![c], true);
    }
    let n = b.rows();
    let pb = char_poly(b);
    let pt = char_poly(bt);
    checks.push(InvariantCheck {
        name: "characteristic polynomial".into(),
        left: pb.to_string(),
        right: pt.to_string(),
        equal: pb == pt,
    });
    if pb != pt {
        return finish(checks, true);
    }
    let mut complete = true;
    let mut factors: Vec<UPoly> = Vec::new();
    for (a, _) in pb.squarefree_decomposition() {
        let split = split_squarefree(&a);
        complete &= split.rest.is_none();
        factors.extend(split.factors());
    }
    for f in &factors {
        let fb = f.eval_matrix(b);
        let ft = f.eval_matrix(bt);
        let (mut pb_j, mut pt_j) = (fb.clone(), ft.clone());
        for j in 1..=n {
            let (rb, rt) = (rank(&pb_j), rank(&pt_j));
            checks.push(InvariantCheck {
                name: format!("rank ({f})(B)^{j}"),
                left: rb.to_string(),
                right: rt.to_string(),
                equal: rb == rt,
            });
            if rb != rt {
                return finish(checks, complete);
            }
            if rb == 0 {
                break;
            }
            pb_j = pb_j.mul(&fb);
            pt_j = pt_j.mul(&ft);
        }
    }
    finish(checks, complete)
}

fn finish(checks: Vec<InvariantCheck>, complete: bool) -> ConjugacyReport {
    let first_failure = checks.iter().find(|c| !c.equal).map(|c| c.name.clone());
    ConjugacyReport {
        equivalent: first_failure.is_none(),
        checks,
        first_failure,
        complete,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn scaled_identity_differs() {
        let a = RatMatrix::diagonal(&[rat(1, 3)]);
        let r = conjugacy_necessary_check(&a, &RatMatrix::identity(1));
        assert!(!r.equivalent);
        assert_eq!(r.first_failure.as_deref(), Some("characteristic polynomial"));
    }

    #[test]
    fn reflexive() {
        let m = RatMatrix::from_i64(&[&[2, 1, 0], &[0, 2, 0], &[1, 1, 5]]);
        assert!(conjugacy_necessary_check(&m, &m).equivalent);
    }

    #[test]
    fn jordan_block_is_not_identity() {
        let j = RatMatrix::from_i64(&[&[1, 1], &[0, 1]]);
        let r = conjugacy_necessary_check(&j, &RatMatrix::identity(2));
        assert!(!r.equivalent);
        assert!(r.first_failure.unwrap().starts_with("rank"));
    }

    #[test]
    fn rotation_scaling_against_identity() {
        // [[a, −b], [b, a]] with a = 1
        let same = RatMatrix::from_rows(&[vec![int(1), int(0)], vec![int(0), int(1)]]);
        assert!(conjugacy_necessary_check(&same, &RatMatrix::identity(2)).equivalent);
        let rot = RatMatrix::from_rows(&[vec![int(1), int(-2)], vec![int(2), int(1)]]);
        assert!(!conjugacy_necessary_check(&rot, &RatMatrix::identity(2)).equivalent);
    }

    #[test]
    fn similar_matrices_pass() {
        let m = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let p = RatMatrix::from_i64(&[&[1, 2], &[1, 3]]);
        let pinv = crate::matalg::inverse(&p).unwrap();
        let conj = p.mul(&m).mul(&pinv);
        assert!(conjugacy_necessary_check(&m, &conj).equivalent);
    }
}
