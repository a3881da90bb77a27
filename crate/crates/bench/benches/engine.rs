use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use pdnf_bench::{dense_matrix, example5, field_and_symmetry};
use pdnf_core::algebra::lie_bracket;
use pdnf_core::convergence::{bruno_omega, classify_convergence, ClassifyInput};
use pdnf_core::fixtures;
use pdnf_core::homological::{ad_matrix, resonant_subspace};
use pdnf_core::matalg::{eigenvalues, rank, DEFAULT_EIGEN_TOL};
use pdnf_core::normalizer::{linearize_via_symmetry, normal_form};
use pdnf_core::symmetry::find_symmetry;
use pdnf_core::RatMatrix;

fn algebra(c: &mut Criterion) {
    let (x, y) = example5(12);
    c.bench_function("lie_bracket/example5/k12", |b| b.iter(|| lie_bracket(black_box(&x), black_box(&y))));
}

fn homological(c: &mut Criterion) {
    let mut g = c.benchmark_group("ad_matrix_rank");
    let a = dense_matrix(3);
    for m in [4usize, 6, 8] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| rank(&ad_matrix(black_box(&a), m)))
        });
    }
    g.finish();
    let rot = RatMatrix::from_i64(&[&[0, -1, 0], &[1, 0, 0], &[0, 0, 2]]);
    c.bench_function("resonant_subspace/rotation/m6", |b| b.iter(|| resonant_subspace(black_box(&rot), 6)));
    c.bench_function("eigenvalues/dense6", |b| {
        let m = dense_matrix(6);
        b.iter(|| eigenvalues(black_box(&m), DEFAULT_EIGEN_TOL))
    });
}

fn normalizer(c: &mut Criterion) {
    let mut g = c.benchmark_group("normalizer");
    g.sample_size(10);
    let (x2, _) = field_and_symmetry(fixtures::EXAMPLE2, 8);
    g.bench_function("normal_form/example2/k8", |b| b.iter(|| normal_form(black_box(&x2), 8)));
    let (x5, y5) = example5(10);
    g.bench_function("linearize/example5/k10", |b| {
        b.iter(|| linearize_via_symmetry(black_box(&x5), black_box(&y5), 10))
    });
    let (x1, _) = field_and_symmetry(fixtures::EXAMPLE1, 10);
    g.bench_function("find_symmetry/example1/k10", |b| {
        b.iter(|| find_symmetry(black_box(&x1), &RatMatrix::identity(2), 10))
    });
    g.finish();
}

fn convergence(c: &mut Criterion) {
    let eig = eigenvalues(&RatMatrix::from_i64(&[&[1, 0, 0], &[0, -3, 0], &[0, 0, 9]]), DEFAULT_EIGEN_TOL);
    c.bench_function("bruno_omega/3d/k6", |b| b.iter(|| bruno_omega(black_box(&eig), 6, 40)));
    let (x3, y3) = field_and_symmetry(fixtures::EXAMPLE3, 6);
    let y3 = y3.expect("example 3 declares a symmetry");
    c.bench_function("classify/example3/k6", |b| {
        b.iter(|| classify_convergence(&ClassifyInput::new(black_box(&x3), Some(&y3), 6)))
    });
}

criterion_group!(benches, algebra, homological, normalizer, convergence);
criterion_main!(benches);
