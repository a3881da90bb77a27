//! Invariants of the linear-algebra, homological, normalizer, symmetry and
//! convergence layers.

use pdnf_core::algebra::{lie_bracket, pushforward, Monomial, Polynomial, VectorField};
use pdnf_core::convergence::{bruno_omega, classify_convergence, poincare_domain, ClassifyInput};
use pdnf_core::homological::{ad_kernel_dim, ad_matrix, enumerate_resonances, resonant_subspace};
use pdnf_core::matalg::{
    char_poly, conjugacy_necessary_check, eigenvalues, inverse, is_squarefree, minimal_polynomial, sn_decompose,
    solve_linear, EigenData, LinearSolution, RatMatrix, DEFAULT_EIGEN_TOL,
};
use pdnf_core::normalizer::{linearize_via_symmetry, normal_form, Verdict};
use pdnf_core::scalar::{int, rat, Gaussian, Rational};
use pdnf_core::symmetry::find_symmetry;
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(rational(), rows * cols)
        .prop_map(move |v| RatMatrix::from_rows(&v.chunks(cols).map(<[Rational]>::to_vec).collect::<Vec<_>>()))
}

fn square() -> impl Strategy<Value = RatMatrix> {
    (1usize..=4).prop_flat_map(|n| matrix(n, n))
}

fn int_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(-2i64..=2, n * n).prop_map(move |v| {
        RatMatrix::from_rows(&v.chunks(n).map(|r| r.iter().map(|&x| int(x)).collect()).collect::<Vec<_>>())
    })
}

fn nonzero_spectrum() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec((1i64..=3, any::<bool>()).prop_map(|(v, s)| if s { v } else { -v }), 1..=3)
}

fn diag(d: &[i64]) -> RatMatrix {
    RatMatrix::diagonal(&d.iter().map(|&v| int(v)).collect::<Vec<_>>())
}

fn apply(m: &RatMatrix, x: &[Rational]) -> Vec<Rational> {
    m.mul_vec(x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chevalley_invariants(a in square()) {
        let n = a.rows() as u32;
        let d = sn_decompose(&a);
        prop_assert_eq!(d.semisimple.add(&d.nilpotent), a);
        prop_assert!(d.semisimple.commutator(&d.nilpotent).is_zero());
        prop_assert!(d.nilpotent.pow(n).is_zero());
        prop_assert!(is_squarefree(&minimal_polynomial(&d.semisimple)));
    }

    #[test]
    fn solve_linear_is_sound((m, rhs) in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| (matrix(r, c), proptest::collection::vec(rational(), r)))) {
        match solve_linear(&m, &rhs) {
            LinearSolution::Solved(x) => prop_assert_eq!(apply(&m, &x), rhs),
            LinearSolution::Infeasible { witness } => {
                let wm = apply(&m.transpose(), &witness);
                prop_assert!(wm.iter().all(Zero::is_zero));
                let wr = witness.iter().zip(&rhs).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
                prop_assert!(!wr.is_zero());
            }
        }
    }

    #[test]
    fn exact_eigenvalues_are_roots(a in square()) {
        let eig = eigenvalues(&a, DEFAULT_EIGEN_TOL);
        prop_assert_eq!(eig.len(), a.rows());
        let p = char_poly(&a);
        for v in eig.values.iter().filter_map(|v| v.exact()) {
            prop_assert!(p.eval_gaussian(v).is_zero());
        }
    }

    #[test]
    fn conjugacy_is_an_equivalence((a, p, q) in (1usize..=3).prop_flat_map(|n| (int_matrix(n), matrix(n, n), matrix(n, n)))) {
        prop_assert!(conjugacy_necessary_check(&a, &a).equivalent);
        if let (Some(pi), Some(qi)) = (inverse(&p), inverse(&q)) {
            let b = p.mul(&a).mul(&pi);
            let c = q.mul(&b).mul(&qi);
            prop_assert!(conjugacy_necessary_check(&a, &b).equivalent);
            prop_assert!(conjugacy_necessary_check(&b, &a).equivalent);
            prop_assert!(conjugacy_necessary_check(&b, &c).equivalent);
            prop_assert!(conjugacy_necessary_check(&a, &c).equivalent);
        }
    }

    #[test]
    fn conjugacy_is_symmetric((a, b) in (1usize..=3).prop_flat_map(|n| (int_matrix(n), int_matrix(n)))) {
        prop_assert_eq!(
            conjugacy_necessary_check(&a, &b).equivalent,
            conjugacy_necessary_check(&b, &a).equivalent
        );
    }

    #[test]
    fn ad_is_linear_and_a_homomorphism((a, b, m) in (1usize..=3).prop_flat_map(|n| (int_matrix(n), int_matrix(n), 2usize..=4))) {
        prop_assert_eq!(ad_matrix(&a.add(&b), m), ad_matrix(&a, m).add(&ad_matrix(&b, m)));
        // the linear field [Ax, Bx] has matrix BA − AB
        let c = b.mul(&a).sub(&a.mul(&b));
        prop_assert_eq!(ad_matrix(&c, m), ad_matrix(&a, m).commutator(&ad_matrix(&b, m)));
    }

    #[test]
    fn kernel_dimension_matches_resonance_count((l, m) in (nonzero_spectrum(), 2usize..=5)) {
        let a = diag(&l);
        let records = enumerate_resonances(&eigenvalues(&a, DEFAULT_EIGEN_TOL), m);
        let at_m = records.iter().filter(|r| r.degree == m).count();
        prop_assert_eq!(ad_kernel_dim(&a, m), at_m);
        let rs = resonant_subspace(&a, m).unwrap();
        prop_assert_eq!(rs.dim() + rs.rank, rs.basis.len());
    }

    #[test]
    fn omega_is_non_increasing_and_bounded_below(l in proptest::collection::vec((-6i64..=6, 1i64..=3), 1..=3)) {
        let vals: Vec<Gaussian> = l.iter().map(|&(p, q)| Gaussian::real(rat(p, q))).collect();
        let d = l.iter().fold(1i64, |acc, &(_, q)| num_integer::lcm(acc, q));
        let omega = bruno_omega(&EigenData::from_exact(vals), 5, 40);
        let defined: Vec<f64> = omega.entries.iter().filter_map(|e| e.omega).collect();
        for w in defined.windows(2) {
            prop_assert!(w[1] <= w[0]);
        }
        for w in &defined {
            prop_assert!(*w > 0.0);
            prop_assert!(*w >= 1.0 / d as f64 - 1e-12);
        }
    }

    #[test]
    fn poincare_domain_is_scale_invariant((l, s) in (proptest::collection::vec((-5i64..=5, 1i64..=3), 1..=3), (1i64..=5, 1i64..=5))) {
        let base: Vec<Gaussian> = l
            .iter()
            .flat_map(|&(p, q)| [Gaussian::new(rat(p, q), rat(q, 2)), Gaussian::new(rat(p, q), rat(-q, 2))])
            .collect();
        let c = rat(s.0, s.1);
        let scaled: Vec<Gaussian> = base.iter().map(|g| g.scale(&c)).collect();
        prop_assert_eq!(
            poincare_domain(&EigenData::from_exact(base)),
            poincare_domain(&EigenData::from_exact(scaled))
        );
    }

    #[test]
    fn normal_form_round_trips((l, comps) in (proptest::collection::vec(-3i64..=3, 2), proptest::collection::vec(proptest::collection::vec((0usize..7, -3i64..=3), 0..4), 2))) {
        let k = 4;
        let monos: Vec<Monomial> = (2..=3).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
        prop_assume!(l.iter().any(|&v| v != 0));
        let mut fields = Vec::new();
        for (i, terms) in comps.iter().enumerate() {
            let mut p = Polynomial::var(2, i).scale(&int(l[i]));
            for &(j, c) in terms {
                p.add_term(monos[j].clone(), int(c));
            }
            fields.push(p);
        }
        let x = VectorField::new(fields, k).unwrap();
        let nf = normal_form(&x, k).unwrap();
        prop_assert!(nf.roundtrip_holds(&x).unwrap());
        // every remainder lies in the resonant subspace
        let a = diag(&l);
        for m in 2..=k {
            let part = nf.normalized.homogeneous(m);
            let coords = pdnf_core::homological::GradedBasis::new(2, m).coords(&part);
            let image = ad_matrix(&a, m).mul_vec(&coords);
            prop_assert!(image.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn symmetry_results_are_sound((a, phi_terms) in (int_matrix(2), proptest::collection::vec((0usize..7, -2i64..=2), 0..4))) {
        prop_assume!(!a.is_zero());
        let k = 4;
        let monos: Vec<Monomial> = (2..=3).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
        let mut x = VectorField::linear(&a, k).into_components();
        for (t, &(j, c)) in phi_terms.iter().enumerate() {
            x[t % 2].add_term(monos[j].clone(), int(c));
        }
        let x = VectorField::new(x, k).unwrap();
        let s = find_symmetry(&x, &RatMatrix::identity(2), k).unwrap();
        let d = s.symmetry.degree();
        let bracket = lie_bracket(&x.truncated(d), &s.symmetry).unwrap();
        prop_assert!(bracket.is_zero(), "bracket nonzero through degree {}", d);
        prop_assert!(s.symmetry.linear_part().is_identity());
    }

    #[test]
    fn transported_dilation_linearizes((a, phi_terms) in (int_matrix(2), proptest::collection::vec((0usize..7, -2i64..=2), 0..4))) {
        prop_assume!(!a.is_zero());
        let k = 5;
        let monos: Vec<Monomial> = (2..=3).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
        let mut phi = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        for (t, &(j, c)) in phi_terms.iter().enumerate() {
            phi[t % 2].add_term(monos[j].clone(), int(c));
        }
        let x = pushforward(&VectorField::linear(&a, k), &phi, k).unwrap();
        let y = pushforward(&VectorField::dilation(2, k), &phi, k).unwrap();
        let c = linearize_via_symmetry(&x, &y, k).unwrap();
        prop_assert_eq!(c.verdict, Verdict::LinearThrough(k));
        prop_assert!(c.symmetry_linearized);
        prop_assert!(c.y_normal_form.solution_dims.iter().all(|&(_, d)| d == 0));
    }

    #[test]
    fn failed_symmetry_never_yields_convergence((x_terms, y_terms) in (proptest::collection::vec((0usize..7, -2i64..=2), 1..4), proptest::collection::vec((0usize..7, -2i64..=2), 1..4))) {
        let k = 4;
        let monos: Vec<Monomial> = (2..=3).flat_map(|d| Monomial::all_of_degree(2, d)).collect();
        let build = |lin: &RatMatrix, terms: &[(usize, i64)]| {
            let mut c = VectorField::linear(lin, k).into_components();
            for (t, &(j, v)) in terms.iter().enumerate() {
                c[t % 2].add_term(monos[j].clone(), int(v));
            }
            VectorField::new(c, k).unwrap()
        };
        let x = build(&diag(&[1, 3]), &x_terms);
        let y = build(&RatMatrix::identity(2), &y_terms);
        let r = classify_convergence(&ClassifyInput::new(&x, Some(&y), k));
        if r.symmetry_commutes == Some(false) {
            prop_assert!(!r.classification.is_convergent());
        }
    }
}
