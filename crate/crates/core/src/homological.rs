//! The graded linear algebra of normal-form theory.
//!
//! `V_m` is the space of homogeneous degree-`m` polynomial vector fields in
//! `n` variables. [`GradedBasis`] fixes an ordered basis of it (component
//! major, graded-lex inside a component), [`ad_matrix`] writes the
//! homological operator `h ↦ {Ax, h}` in that basis, and [`Splitting`]
//! decomposes vectors along `Ker ⊕ Im` for a semisimple operator (or a
//! commuting family of them).

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;
use thiserror::Error;

use crate::algebra::{Monomial, Polynomial};
use crate::matalg::{
    dot, inverse, rref_kernel_image, EigenData, Eigenvalue, RatMatrix,
};
use crate::scalar::{Gaussian, Rational};

/// Tolerance on `|Σ mᵢλᵢ − λ_r|` when the spectrum is only known numerically.
pub const APPROX_RESONANCE_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologicalError {
    #[error("Ker ⊕ Im does not span V_{degree}: the operator is not semisimple on this degree")]
    SpanCheck { degree: usize },
    #[error("operator list is empty")]
    NoOperators,
}

/// Ordered basis of `V_m`: element `i` is `x^α e_r` with
/// `r = i / N`, `α` the `(i mod N)`-th degree-`m` monomial.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    n: usize,
    m: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(n: usize, m: usize) -> Self {
        assert!(n >= 1, "dimension must be positive");
        let monomials = Monomial::all_of_degree(n, m);
        let index = monomials.iter().enumerate().map(|(i, mo)| (mo.clone(), i)).collect();
        Self {
            n,
            m,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.n * self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// `(monomial, component)` of basis element `i`.
    pub fn element(&self, i: usize) -> (&Monomial, usize) {
        let per = self.monomials.len();
        (&self.monomials[i % per], i / per)
    }

    pub fn index_of(&self, mono: &Monomial, component: usize) -> Option<usize> {
        self.index
            .get(mono)
            .map(|&j| component * self.monomials.len() + j)
    }

    /// Coordinates of the degree-`m` part of a polynomial vector.
    pub fn coords(&self, v: &[Polynomial]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.len()];
        for (r, p) in v.iter().enumerate() {
            for (mono, c) in p.terms() {
                if mono.degree() == self.m {
                    let i = self.index_of(mono, r).expect("degree-m monomial is indexed");
                    out[i] = c.clone();
                }
            }
        }
        out
    }

    /// The homogeneous polynomial vector with the given coordinates.
    pub fn vector(&self, coords: &[Rational]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(self.n); self.n];
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let (mono, r) = self.element(i);
                out[r].add_term(mono.clone(), c.clone());
            }
        }
        out
    }
}

/// Convenience constructor mirroring the operation name.
pub fn graded_basis(n: usize, m: usize) -> GradedBasis {
    GradedBasis::new(n, m)
}

/// Matrix of `h ↦ {Ax, h} = Dh·Ax − A·h` on `V_m`.
pub fn ad_matrix(a: &RatMatrix, m: usize) -> RatMatrix {
    let n = a.rows();
    let basis = GradedBasis::new(n, m);
    let size = basis.len();
    let mut out = RatMatrix::zeros(size, size);
    for col in 0..size {
        let (mono, r) = basis.element(col);
        // Dh·Ax: only component r, Σ_j α_j x^{α−e_j} (Ax)_j
        for j in 0..n {
            let Some(lower) = mono.div_var(j) else {
                continue;
            };
            let alpha_j = Rational::from_integer(mono.exponent(j).into());
            for l in 0..n {
                let c = &a[(j, l)];
                if c.is_zero() {
                    continue;
                }
                let target = lower.mul_var(l);
                let row = basis.index_of(&target, r).expect("degree preserved");
                out[(row, col)] += &alpha_j * c;
            }
        }
        // −A·h: x^α in every component i, coefficient −A_ir
        for i in 0..n {
            let c = &a[(i, r)];
            if !c.is_zero() {
                let row = basis.index_of(mono, i).expect("same monomial");
                out[(row, col)] -= c;
            }
        }
    }
    out
}

/// Decomposition `V = K ⊕ W` where `K` is the joint kernel of a commuting
/// family of operators and `W` the sum of their images. The projection
/// along `W` onto `K` is `c ↦ K (LᵀK)⁻¹ Lᵀ c`, with `L` a basis of the
/// annihilator of `W`; `LᵀK` is invertible exactly when the sum is direct
/// and spanning.
#[derive(Clone, Debug)]
pub struct Splitting {
    size: usize,
    kernel: Vec<Vec<Rational>>,
    annihilator: Vec<Vec<Rational>>,
    gram_inv: RatMatrix,
    image_rank: usize,
}

impl Splitting {
    /// Splitting for a single operator.
    pub fn new(op: &RatMatrix, degree: usize) -> Result<Self, HomologicalError> {
        Self::joint(&[op], degree)
    }

    /// Splitting for the joint kernel of several operators on one space.
    pub fn joint(ops: &[&RatMatrix], degree: usize) -> Result<Self, HomologicalError> {
        let first = ops.first().ok_or(HomologicalError::NoOperators)?;
        let size = first.cols();
        let stacked = stack(ops.iter().copied());
        let transposed: Vec<RatMatrix> = ops.iter().map(|m| m.transpose()).collect();
        let stacked_t = stack(transposed.iter());
        let ki = rref_kernel_image(&stacked);
        let kernel = ki.kernel;
        let annihilator = rref_kernel_image(&stacked_t).kernel;
        if annihilator.len() != kernel.len() {
            return Err(HomologicalError::SpanCheck { degree });
        }
        let d = kernel.len();
        let mut gram = RatMatrix::zeros(d, d);
        for (i, l) in annihilator.iter().enumerate() {
            for (j, k) in kernel.iter().enumerate() {
                gram[(i, j)] = dot(l, k);
            }
        }
        let gram_inv = inverse(&gram).ok_or(HomologicalError::SpanCheck { degree })?;
        Ok(Self {
            size,
            image_rank: size - d,
            kernel,
            annihilator,
            gram_inv,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kernel(&self) -> &[Vec<Rational>] {
        &self.kernel
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel.len()
    }

    pub fn image_rank(&self) -> usize {
        self.image_rank
    }

    /// Coordinates `z` of the kernel component of `c` in the kernel basis.
    pub fn kernel_coords(&self, c: &[Rational]) -> Vec<Rational> {
        let lc: Vec<Rational> = self.annihilator.iter().map(|l| dot(l, c)).collect();
        self.gram_inv.mul_vec(&lc)
    }

    /// `(kernel coordinates, kernel component, image component)` of `c`.
    pub fn decompose(&self, c: &[Rational]) -> (Vec<Rational>, Vec<Rational>, Vec<Rational>) {
        let z = self.kernel_coords(c);
        let mut kpart = vec![Rational::zero(); self.size];
        for (zi, k) in z.iter().zip(&self.kernel) {
            if zi.is_zero() {
                continue;
            }
            for (acc, kv) in kpart.iter_mut().zip(k) {
                if !kv.is_zero() {
                    *acc += zi * kv;
                }
            }
        }
        let ipart = c.iter().zip(&kpart).map(|(a, b)| a - b).collect();
        (z, kpart, ipart)
    }

    /// Projection onto the image sum, along the kernel.
    pub fn project_image(&self, c: &[Rational]) -> Vec<Rational> {
        self.decompose(c).2
    }

    /// Matrix of [`Splitting::project_image`].
    pub fn image_projector(&self) -> RatMatrix {
        let mut p = RatMatrix::identity(self.size);
        // P = I − K G⁻¹ Lᵀ
        let d = self.kernel.len();
        for i in 0..d {
            for j in 0..d {
                let g = &self.gram_inv[(i, j)];
                if g.is_zero() {
                    continue;
                }
                for (r, kv) in self.kernel[i].iter().enumerate() {
                    if kv.is_zero() {
                        continue;
                    }
                    let kg = kv * g;
                    for (c, lv) in self.annihilator[j].iter().enumerate() {
                        if !lv.is_zero() {
                            p[(r, c)] -= &kg * lv;
                        }
                    }
                }
            }
        }
        p
    }

    /// Whether `c` lies in the kernel (its image component vanishes).
    pub fn contains_in_kernel(&self, c: &[Rational]) -> bool {
        self.project_image(c).iter().all(Zero::is_zero)
    }
}

fn stack<'a>(ops: impl Iterator<Item = &'a RatMatrix>) -> RatMatrix {
    let ops: Vec<&RatMatrix> = ops.collect();
    let cols = ops[0].cols();
    let rows: Vec<Vec<Rational>> = ops
        .iter()
        .flat_map(|m| (0..m.rows()).map(|i| m.row(i).to_vec()))
        .collect();
    if rows.is_empty() {
        RatMatrix::zeros(0, cols)
    } else {
        RatMatrix::from_rows(&rows)
    }
}

/// Kernel of `ad_{A_s}` on `V_m`, together with its complement data.
#[derive(Clone, Debug)]
pub struct ResonantSubspace {
    pub basis: GradedBasis,
    pub kernel: Vec<Vec<Rational>>,
    pub image: Vec<Vec<Rational>>,
    pub rank: usize,
    pub splitting: Splitting,
}

impl ResonantSubspace {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// Kernel basis vectors as polynomial vectors.
    pub fn fields(&self) -> Vec<Vec<Polynomial>> {
        self.kernel.iter().map(|k| self.basis.vector(k)).collect()
    }
}

/// Resonant subspace `Ker(ad_{A_s}) ⊆ V_m`, with the image basis and a
/// check that the two span `V_m` (fails for non-semisimple input).
pub fn resonant_subspace(a_s: &RatMatrix, m: usize) -> Result<ResonantSubspace, HomologicalError> {
    let ad = ad_matrix(a_s, m);
    let ki = rref_kernel_image(&ad);
    let splitting = Splitting::new(&ad, m)?;
    Ok(ResonantSubspace {
        basis: GradedBasis::new(a_s.rows(), m),
        kernel: ki.kernel,
        image: ki.image,
        rank: ki.rank,
        splitting,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum Residual {
    Exact(Gaussian),
    Approx(f64),
}

/// A solution of `Σ mᵢλᵢ = λ_r` with `Σ mᵢ ≥ 2`. `component` is 0-based.
#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceRecord {
    pub multi_index: Vec<u32>,
    pub component: usize,
    pub degree: usize,
    pub residual: Residual,
}

impl ResonanceRecord {
    pub fn is_exact(&self) -> bool {
        matches!(self.residual, Residual::Exact(_))
    }
}

/// All resonances of degree `2..=k`, ordered by degree, then component,
/// then graded-lex monomial order. Exact spectra give exact residuals
/// (always zero); a spectrum with any numeric entry is handled numerically
/// with [`APPROX_RESONANCE_TOL`].
pub fn enumerate_resonances(eig: &EigenData, k: usize) -> Vec<ResonanceRecord> {
    let n = eig.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let exact = eig.exact_values();
    let approx: Vec<Complex64> = eig.values.iter().map(Eigenvalue::to_complex).collect();
    for m in 2..=k {
        let monos = Monomial::all_of_degree(n, m);
        for r in 0..n {
            for mono in &monos {
                let residual = match &exact {
                    Some(l) => {
                        let mut acc = Gaussian::zero();
                        for (i, li) in l.iter().enumerate() {
                            let e = mono.exponent(i);
                            if e > 0 {
                                acc = &acc + &li.scale(&Rational::from_integer(e.into()));
                            }
                        }
                        let res = &acc - &l[r];
                        if !res.is_zero() {
                            continue;
                        }
                        Residual::Exact(res)
                    }
                    None => {
                        let s: Complex64 = approx
                            .iter()
                            .enumerate()
                            .map(|(i, l)| l * f64::from(mono.exponent(i)))
                            .sum();
                        let res = (s - approx[r]).norm();
                        if res > APPROX_RESONANCE_TOL {
                            continue;
                        }
                        Residual::Approx(res)
                    }
                };
                out.push(ResonanceRecord {
                    multi_index: mono.exponents().to_vec(),
                    component: r,
                    degree: m,
                    residual,
                });
            }
        }
    }
    out
}

/// `dim Ker(ad_A)` on `V_m`.
pub fn ad_kernel_dim(a: &RatMatrix, m: usize) -> usize {
    let ad = ad_matrix(a, m);
    ad.cols() - crate::matalg::rank(&ad)
}

/// Dimension of the joint kernel of `ad_A` and `ad_B` on `V_m`.
pub fn joint_kernel_dim(a: &RatMatrix, b: &RatMatrix, m: usize) -> usize {
    let stacked = stack([ad_matrix(a, m), ad_matrix(b, m)].iter());
    stacked.cols() - crate::matalg::rank(&stacked)
}
