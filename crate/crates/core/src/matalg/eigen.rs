use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::{char_poly, UPoly};
use super::RatMatrix;
use crate::scalar::{common_denominator, rational_sqrt, to_f64, Gaussian, Rational};

/// Default acceptance bound on the relative residual of a numeric root.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-10;

/// Coefficients bigger than this make the rational-root search skip
/// (divisor enumeration is by trial division).
const RATIONAL_ROOT_BOUND: u64 = 1_000_000_000_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    Exact(Gaussian),
    Approx { re: f64, im: f64, err: f64 },
}

impl Eigenvalue {
    pub fn is_exact(&self) -> bool {
        matches!(self, Eigenvalue::Exact(_))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Eigenvalue::Exact(g) => g.to_complex(),
            Eigenvalue::Approx { re, im, .. } => Complex64::new(*re, *im),
        }
    }

    pub fn exact(&self) -> Option<&Gaussian> {
        match self {
            Eigenvalue::Exact(g) => Some(g),
            Eigenvalue::Approx { .. } => None,
        }
    }

    /// Sign of the real part: exact when possible.
    pub fn re_signum(&self) -> i32 {
        match self {
            Eigenvalue::Exact(g) => {
                if g.re.is_positive() {
                    1
                } else if g.re.is_negative() {
                    -1
                } else {
                    0
                }
            }
            Eigenvalue::Approx { re, err, .. } => {
                if *re > *err {
                    1
                } else if *re < -*err {
                    -1
                } else {
                    0
                }
            }
        }
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Eigenvalue::Exact(g) => write!(f, "{g}"),
            Eigenvalue::Approx { re, im, .. } => {
                if *im == 0.0 {
                    write!(f, "~{re:.12}")
                } else {
                    write!(f, "~{re:.12} {} {:.12}*i", if *im < 0.0 { '-' } else { '+' }, im.abs())
                }
            }
        }
    }
}

/// Spectrum with multiplicity, in a deterministic order.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    pub values: Vec<Eigenvalue>,
    pub exact: bool,
    pub char_poly: UPoly,
}

impl EigenData {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.values.iter().map(Eigenvalue::to_complex).collect()
    }

    /// Exact values when every eigenvalue is exact.
    pub fn exact_values(&self) -> Option<Vec<Gaussian>> {
        self.values.iter().map(|v| v.exact().cloned()).collect()
    }

    /// Exact data from a conjugation-closed list of Gaussian rationals; the
    /// characteristic polynomial is rebuilt from the roots.
    pub fn from_exact(values: Vec<Gaussian>) -> Self {
        let mut cp = UPoly::one();
        for z in &values {
            if z.is_real() {
                cp = cp.mul(&UPoly::linear_root(&z.re));
            } else if z.im.is_positive() {
                cp = cp.mul(&quadratic_of(z));
            }
        }
        Self {
            values: values.into_iter().map(Eigenvalue::Exact).collect(),
            exact: true,
            char_poly: cp,
        }
    }
}

/// Monic `(t − z)(t − z̄)`.
fn quadratic_of(z: &Gaussian) -> UPoly {
    UPoly::new(vec![z.norm_sqr(), -(&z.re + &z.re), Rational::one()])
}

fn cmp_gaussian(a: &Gaussian, b: &Gaussian) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| b.im.cmp(&a.im))
}

/// Distinct monic factors of a squarefree polynomial over ℚ: its rational
/// roots, irreducible quadratic factors that could be located, and one
/// leftover that was not split further.
#[derive(Clone, Debug, Default)]
pub struct RationalSplit {
    pub roots: Vec<Rational>,
    pub quadratics: Vec<UPoly>,
    pub rest: Option<UPoly>,
}

impl RationalSplit {
    /// All factors as polynomials.
    pub fn factors(&self) -> Vec<UPoly> {
        let mut out: Vec<UPoly> = self.roots.iter().map(UPoly::linear_root).collect();
        out.extend(self.quadratics.iter().cloned());
        out.extend(self.rest.iter().cloned());
        out
    }
}

/// Splits a squarefree monic polynomial as far as rational roots and
/// rational quadratic factors allow.
pub fn split_squarefree(q: &UPoly) -> RationalSplit {
    let mut split = RationalSplit::default();
    let mut rest = q.monic();
    if rest.degree().unwrap_or(0) == 0 {
        return split;
    }
    while rest.coeff(0).is_zero() && rest.degree().unwrap_or(0) > 0 {
        split.roots.push(Rational::zero());
        rest = rest.div_exact(&UPoly::from_i64(&[0, 1])).expect("t divides");
    }
    for r in rational_roots(&rest) {
        rest = rest.div_exact(&UPoly::linear_root(&r)).expect("verified root");
        split.roots.push(r);
    }
    split.roots.sort();
    match rest.degree().unwrap_or(0) {
        0 => {}
        2 => split.quadratics.push(rest),
        _ => {
            while rest.degree().unwrap_or(0) >= 4 {
                match find_quadratic_factor(&rest) {
                    Some(f) => {
                        rest = rest.div_exact(&f).expect("verified factor");
                        split.quadratics.push(f);
                    }
                    None => break,
                }
            }
            if rest.degree() == Some(2) {
                split.quadratics.push(rest);
            } else if rest.degree().unwrap_or(0) > 0 {
                split.rest = Some(rest);
            }
        }
    }
    split
}

/// Rational roots by the rational-root theorem on the integer-scaled
/// polynomial; skipped when the coefficients are too large to enumerate.
fn rational_roots(p: &UPoly) -> Vec<Rational> {
    let d = common_denominator(p.coeffs().iter());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(d.clone())).to_integer())
        .collect();
    let (Some(c0), Some(cn)) = (ints.first(), ints.last()) else {
        return Vec::new();
    };
    if c0.is_zero() {
        return Vec::new();
    }
    let (Some(a0), Some(an)) = (c0.abs().to_u64(), cn.abs().to_u64()) else {
        return Vec::new();
    };
    if a0 > RATIONAL_ROOT_BOUND || an > RATIONAL_ROOT_BOUND {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut rest = p.clone();
    for num in divisors(a0) {
        for den in divisors(an) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let r = Rational::new(BigInt::from(num) * sign, BigInt::from(den));
                if rest.degree().unwrap_or(0) > 0 && rest.eval(&r).is_zero() {
                    rest = rest.div_exact(&UPoly::linear_root(&r)).expect("root");
                    roots.push(r);
                }
            }
        }
    }
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions).
pub(crate) fn rationalize(x: f64, max_den: i64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-13 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(Rational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Looks for a rational quadratic factor among pairs of numeric roots.
fn find_quadratic_factor(p: &UPoly) -> Option<UPoly> {
    let roots = numeric_roots(p);
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let s = roots[i] + roots[j];
            let pr = roots[i] * roots[j];
            if s.im.abs() > 1e-7 || pr.im.abs() > 1e-7 {
                continue;
            }
            let (Some(b), Some(c)) = (rationalize(-s.re, 1_000_000), rationalize(pr.re, 1_000_000)) else {
                continue;
            };
            let f = UPoly::new(vec![c, b, Rational::one()]);
            if p.div_exact(&f).is_some() {
                return Some(f);
            }
        }
    }
    None
}

/// Roots of a polynomial from the companion matrix, refined by Newton.
pub(crate) fn numeric_roots(p: &UPoly) -> Vec<Complex64> {
    let Some(d) = p.degree() else {
        return Vec::new();
    };
    if d == 0 {
        return Vec::new();
    }
    let c = p.monic().to_f64();
    let companion = DMatrix::<f64>::from_fn(d, d, |i, j| {
        if j == d - 1 {
            -c[i]
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let dp = p.derivative();
    companion
        .complex_eigenvalues()
        .iter()
        .map(|&z0| {
            let mut z = z0;
            for _ in 0..50 {
                let fz = p.eval_complex(z);
                let dz = dp.eval_complex(z);
                if dz.norm() == 0.0 {
                    break;
                }
                let step = fz / dz;
                z -= step;
                if step.norm() <= 1e-16 * z.norm().max(1.0) {
                    break;
                }
            }
            z
        })
        .collect()
}

/// Residual of `p(z)` relative to `Σ|cᵢ||z|^i`.
fn relative_residual(p: &UPoly, z: Complex64) -> f64 {
    let scale: f64 = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| to_f64(c).abs() * z.norm().powi(i as i32))
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        p.eval_complex(z).norm() / scale
    }
}

/// Eigenvalues with multiplicity. Exact whenever the characteristic
/// polynomial splits over ℚ(i) through rational roots and quadratic factors
/// with a perfect-square discriminant magnitude; numeric otherwise, with the
/// relative residual reported as the error bound.
pub fn eigenvalues(m: &RatMatrix, tol: f64) -> EigenData {
    let cp = char_poly(m);
    let mut exact_vals: Vec<Gaussian> = Vec::new();
    let mut approx_vals: Vec<(Complex64, f64)> = Vec::new();
    for (factor, mult) in cp.squarefree_decomposition() {
        let split = split_squarefree(&factor);
        for r in &split.roots {
            exact_vals.extend(std::iter::repeat_n(Gaussian::real(r.clone()), mult));
        }
        for q in &split.quadratics {
            match gaussian_roots(q) {
                Some((z, w)) => {
                    for _ in 0..mult {
                        exact_vals.push(z.clone());
                        exact_vals.push(w.clone());
                    }
                }
                None => push_numeric(q, mult, tol, &mut approx_vals),
            }
        }
        if let Some(rest) = &split.rest {
            push_numeric(rest, mult, tol, &mut approx_vals);
        }
    }
    exact_vals.sort_by(cmp_gaussian);
    approx_vals.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then_with(|| b.0.im.total_cmp(&a.0.im))
    });
    let exact = approx_vals.is_empty();
    let mut values: Vec<Eigenvalue> = exact_vals.into_iter().map(Eigenvalue::Exact).collect();
    values.extend(approx_vals.into_iter().map(|(z, err)| Eigenvalue::Approx {
        re: z.re,
        im: z.im,
        err,
    }));
    EigenData {
        values,
        exact,
        char_poly: cp,
    }
}

fn push_numeric(p: &UPoly, mult: usize, tol: f64, out: &mut Vec<(Complex64, f64)>) {
    for z in numeric_roots(p) {
        let mut z = z;
        // snap conjugate-symmetric noise on real roots
        if z.im.abs() < 1e-14 * z.re.abs().max(1.0) {
            z.im = 0.0;
        }
        let err = relative_residual(p, z);
        debug_assert!(err <= tol.max(1e-6), "numeric root residual {err} above tolerance");
        for _ in 0..mult {
            out.push((z, err));
        }
    }
}

/// Exact roots of a monic quadratic in ℚ(i), if they exist.
fn gaussian_roots(q: &UPoly) -> Option<(Gaussian, Gaussian)> {
    let b = q.coeff(1);
    let c = q.coeff(0);
    let disc = &b * &b - Rational::from_integer(4.into()) * &c;
    let half = Rational::new(1.into(), 2.into());
    let re = -&b * &half;
    if disc.is_negative() {
        let s = rational_sqrt(&-disc)?;
        let im = s * &half;
        Some((Gaussian::new(re.clone(), im.clone()), Gaussian::new(re, -im)))
    } else {
        let s = rational_sqrt(&disc)?;
        let d = s * &half;
        Some((Gaussian::real(&re - &d), Gaussian::real(re + d)))
    }
}
