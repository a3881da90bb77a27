//! Invariants of the polynomial and vector-field layer.

use pdnf_core::algebra::{invert_map, lie_bracket, pushforward, Monomial, Polynomial, VectorField};
use pdnf_core::matalg::RatMatrix;
use pdnf_core::scalar::{int, rat, Rational};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(p, q)| rat(p, q))
}

/// Random polynomial in `n` variables with terms of degree `lo..=hi`.
fn poly(n: usize, lo: usize, hi: usize) -> impl Strategy<Value = Polynomial> {
    let monos: Vec<Monomial> = (lo..=hi).flat_map(|d| Monomial::all_of_degree(n, d)).collect();
    let len = monos.len();
    proptest::collection::vec((0..len.max(1), rational()), 0..6).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().filter(|_| len > 0).map(|(i, c)| (monos[i].clone(), c)))
    })
}

fn field(n: usize, k: usize) -> impl Strategy<Value = VectorField> {
    proptest::collection::vec(poly(n, 1, k), n).prop_map(move |c| VectorField::new(c, k).unwrap())
}

fn near_identity(n: usize, k: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    proptest::collection::vec(poly(n, 2, k.min(3)), n).prop_map(move |hs| {
        hs.into_iter()
            .enumerate()
            .map(|(i, h)| Polynomial::var(n, i).add(&h))
            .collect()
    })
}

fn int_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
        RatMatrix::from_rows(&v.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    })
}

fn dim_and_degree() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 2usize..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bracket_is_antisymmetric(((x, y), _) in dim_and_degree().prop_flat_map(|(n, k)| ((field(n, k), field(n, k)), Just(k)))) {
        let xy = lie_bracket(&x, &y).unwrap();
        let yx = lie_bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).unwrap().is_zero());
    }

    #[test]
    fn jacobi_identity((x, y, z) in dim_and_degree().prop_flat_map(|(n, k)| (field(n, k), field(n, k), field(n, k)))) {
        let b = |a: &VectorField, c: &VectorField| lie_bracket(a, c).unwrap();
        let sum = b(&b(&x, &y), &z).add(&b(&b(&y, &z), &x)).unwrap().add(&b(&b(&z, &x), &y)).unwrap();
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn bracket_linear_part_is_matrix_commutator((x, y) in dim_and_degree().prop_flat_map(|(n, k)| (field(n, k), field(n, k)))) {
        let (a, b) = (x.linear_part(), y.linear_part());
        prop_assert_eq!(lie_bracket(&x, &y).unwrap().linear_part(), b.mul(&a).sub(&a.mul(&b)));
    }

    #[test]
    fn inversion_is_an_involution(phi in (1usize..=3).prop_flat_map(|n| near_identity(n, 5))) {
        let k = 5;
        let psi = invert_map(&phi, k).unwrap();
        let back = invert_map(&psi, k).unwrap();
        let truncated: Vec<Polynomial> = phi.iter().map(|p| p.clone().truncated(k)).collect();
        prop_assert_eq!(back, truncated);
        // and ψ∘φ = id through k
        let n = phi.len();
        for (i, p) in psi.iter().enumerate() {
            prop_assert_eq!(p.substitute(&phi, k).unwrap(), Polynomial::var(n, i));
        }
    }

    #[test]
    fn pushforward_is_functorial((f, phi, psi) in (1usize..=3).prop_flat_map(|n| (field(n, 4), near_identity(n, 4), near_identity(n, 4)))) {
        let k = 4;
        // z = ψ(y), y = φ(x)
        let step = pushforward(&pushforward(&f, &psi, k).unwrap(), &phi, k).unwrap();
        let composed: Vec<Polynomial> = psi.iter().map(|p| p.substitute(&phi, k).unwrap()).collect();
        prop_assert_eq!(step, pushforward(&f, &composed, k).unwrap());
    }

    #[test]
    fn commutation_survives_coordinate_changes((a, phi) in (1usize..=3).prop_flat_map(|n| (int_matrix(n), near_identity(n, 4)))) {
        let k = 4;
        let x = VectorField::linear(&a, k);
        let y = VectorField::linear(&a.mul(&a), k);
        prop_assert!(lie_bracket(&x, &y).unwrap().is_zero());
        let (px, py) = (pushforward(&x, &phi, k).unwrap(), pushforward(&y, &phi, k).unwrap());
        prop_assert!(lie_bracket(&px, &py).unwrap().is_zero());
    }

    #[test]
    fn multiplication_distributes((p, q, r) in (1usize..=3).prop_flat_map(|n| (poly(n, 0, 3), poly(n, 0, 3), poly(n, 0, 3)))) {
        let k = 5;
        prop_assert_eq!(p.mul_trunc(&q.add(&r), k), p.mul_trunc(&q, k).add(&p.mul_trunc(&r, k)));
        prop_assert_eq!(p.mul_trunc(&q, k), q.mul_trunc(&p, k));
    }
}

#[test]
fn dilation_commutes_with_linear_fields() {
    let a = RatMatrix::from_rows(&[vec![rat(1, 2), int(-1)], vec![int(1), rat(1, 2)]]);
    let s = VectorField::dilation(2, 4);
    assert!(lie_bracket(&s, &VectorField::linear(&a, 4)).unwrap().is_zero());
}
