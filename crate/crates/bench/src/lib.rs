//! Shared workloads for the benchmarks.

use pdnf_core::algebra::VectorField;
use pdnf_core::dsl::Bindings;
use pdnf_core::fixtures::{self, Fixture};
use pdnf_core::scalar::int;
use pdnf_core::RatMatrix;

/// A fixture's field and its first declared symmetry, truncated at `k`.
pub fn field_and_symmetry(fx: Fixture, k: usize) -> (VectorField, Option<VectorField>) {
    let spec = fx.spec();
    let none = Bindings::new();
    let x = spec.instantiate(&none, k).expect("fixture instantiates");
    let y = spec
        .symmetry_names()
        .first()
        .map(|name| spec.symmetry(name, &none, k).expect("symmetry instantiates"));
    (x, y)
}

/// The example 5 field and its symmetry with identity linear part.
pub fn example5(k: usize) -> (VectorField, VectorField) {
    let (x, y) = field_and_symmetry(fixtures::EXAMPLE5, k);
    (x, y.expect("example 5 declares a symmetry"))
}

/// A dense integer matrix with distinct eigenvalues, for the linear-algebra benchmarks.
pub fn dense_matrix(n: usize) -> RatMatrix {
    let rows: Vec<Vec<_>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Equal => int(i as i64 + 1),
                    std::cmp::Ordering::Less => int(((i * 7 + j * 3) % 5) as i64 - 2),
                    std::cmp::Ordering::Greater => int(0),
                })
                .collect()
        })
        .collect();
    RatMatrix::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn workloads_build() {
        let (x, y) = example5(6);
        assert_eq!((x.dim(), y.dim()), (3, 3));
        assert_eq!(dense_matrix(4).rows(), 4);
        assert!(field_and_symmetry(fixtures::RESONANT, 4).1.is_none());
    }
}
