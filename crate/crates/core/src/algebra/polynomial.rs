use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Monomial};
use crate::scalar::{format_rational, to_f64, Rational};

/// Sparse multivariate polynomial over ℚ.
///
/// Terms are kept in graded-lex order and zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

/// The arithmetic kinds accepted by [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Multiply the first operand by the second, which must be a constant.
    Scale,
}

/// Exact polynomial arithmetic truncated at total degree `k`.
pub fn poly_arith(
    a: &Polynomial,
    b: &Polynomial,
    op: ArithOp,
    k: usize,
) -> Result<Polynomial, AlgebraError> {
    if a.nvars != b.nvars {
        return Err(AlgebraError::DimensionMismatch {
            left: a.nvars,
            right: b.nvars,
        });
    }
    Ok(match op {
        ArithOp::Add => a.add(b).truncated(k),
        ArithOp::Sub => a.sub(b).truncated(k),
        ArithOp::Mul => a.mul_trunc(b, k),
        ArithOp::Scale => {
            let c = b.as_constant().ok_or(AlgebraError::NonConstantScale)?;
            a.scale(&c).truncated(k)
        }
    })
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_terms(nvars, [(Monomial::one(nvars), c)])
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_terms(nvars, [(Monomial::var(nvars, i), Rational::one())])
    }

    /// Builds a polynomial, merging repeated monomials and dropping zeros.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity does not match polynomial");
            p.add_term(m, c);
        }
        p
    }

    /// Convenience for tests and fixtures: integer coefficients and exponent arrays.
    pub fn from_int_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            nvars,
            terms
                .iter()
                .map(|(c, e)| (Monomial::new(e.iter().copied()), Rational::from_integer((*c).into()))),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest total degree present; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    /// Lowest total degree present, `None` for zero.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    /// Drops every term of total degree above `k`.
    pub fn truncated(mut self, k: usize) -> Polynomial {
        self.truncate(k);
        self
    }

    pub fn truncate(&mut self, k: usize) {
        // first monomial of degree k+1 in graded order is (k+1, 0, …, 0)
        if self.nvars == 0 {
            return;
        }
        let mut bound = Monomial::one(self.nvars);
        bound = (0..=k).fold(bound, |m, _| m.mul_var(0));
        let _ = self.terms.split_off(&bound);
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Product truncated at total degree `k`; pairs exceeding `k` are never formed.
    pub fn mul_trunc(&self, other: &Polynomial, k: usize) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            if da > k {
                break;
            }
            for (mb, cb) in &other.terms {
                if da + mb.degree() > k {
                    break;
                }
                let c = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|e| *e += &c)
                    .or_insert(c);
            }
        }
        Polynomial {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Product with `x_i`, then truncation at `k`.
    pub fn mul_var_trunc(&self, i: usize, k: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < k)
                .map(|(m, c)| (m.mul_var(i), c.clone()))
                .collect(),
        }
    }

    /// ∂/∂x_i.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some(dm) = m.div_var(i) {
                let e = m.exponent(i);
                out.terms.insert(dm, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Substitutes `map[i]` for `x_i`, truncating at total degree `k`.
    pub fn substitute(&self, map: &[Polynomial], k: usize) -> Result<Polynomial, AlgebraError> {
        let mut sub = Substitution::new(map, k)?;
        if self.nvars != map.len() {
            return Err(AlgebraError::ArityMismatch {
                expected: self.nvars,
                found: map.len(),
            });
        }
        Ok(sub.apply(self))
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = to_f64(c);
                for (i, &e) in m.exponents().iter().enumerate() {
                    v *= x[i].powi(e as i32);
                }
                v
            })
            .sum()
    }

    pub fn eval_rational(&self, x: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    v *= &x[i];
                }
            }
            acc += v;
        }
        acc
    }

    /// Human-readable form using the given variable names, highest degree last.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.format_with(names);
            if m.degree() == 0 {
                out.push_str(&format_rational(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format_rational(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

/// Default variable names: `x, y, z` for n ≤ 3, otherwise `x1, x2, …`.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Reusable substitution `x_i ↦ map[i]` with a cache of monomial images, so
/// several polynomials (the components of a field or map) share the work.
pub struct Substitution<'a> {
    map: &'a [Polynomial],
    k: usize,
    cache: HashMap<Monomial, Polynomial>,
}

impl<'a> Substitution<'a> {
    pub fn new(map: &'a [Polynomial], k: usize) -> Result<Self, AlgebraError> {
        let m = map.first().map_or(0, Polynomial::nvars);
        if let Some(bad) = map.iter().find(|p| p.nvars() != m) {
            return Err(AlgebraError::DimensionMismatch {
                left: m,
                right: bad.nvars(),
            });
        }
        Ok(Self {
            map,
            k,
            cache: HashMap::new(),
        })
    }

    fn target_nvars(&self) -> usize {
        self.map.first().map_or(0, Polynomial::nvars)
    }

    fn image(&mut self, m: &Monomial) -> Polynomial {
        if let Some(p) = self.cache.get(m) {
            return p.clone();
        }
        let img = match (0..m.nvars()).rev().find(|&i| m.exponent(i) > 0) {
            None => Polynomial::constant(self.target_nvars(), Rational::one()),
            Some(i) => {
                let lower = m.div_var(i).unwrap();
                let base = self.image(&lower);
                base.mul_trunc(&self.map[i], self.k)
            }
        };
        self.cache.insert(m.clone(), img.clone());
        img
    }

    pub fn apply(&mut self, p: &Polynomial) -> Polynomial {
        assert_eq!(p.nvars(), self.map.len(), "substitution arity mismatch");
        let mut out = Polynomial::zero(self.target_nvars());
        for (m, c) in p.terms() {
            let img = self.image(m);
            for (mm, cc) in img.terms() {
                out.add_term(mm.clone(), cc * c);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn names2() -> Vec<String> {
        default_var_names(2)
    }

    #[test]
    fn difference_of_squares() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = poly_arith(&x.add(&y), &x.sub(&y), ArithOp::Mul, 2).unwrap();
        assert_eq!(p.format_with(&names2()), "x^2 - y^2");
    }

    #[test]
    fn annihilation() {
        let p = Polynomial::from_int_terms(2, &[(3, &[2, 1]), (-1, &[0, 1])]);
        let z = Polynomial::zero(2);
        assert!(poly_arith(&p, &z, ArithOp::Mul, 5).unwrap().is_zero());
    }

    #[test]
    fn truncated_series_product() {
        // long multiplication: (x + x²)(1 − 2x + 4x² − 8x³) through degree 4
        let a = Polynomial::from_int_terms(1, &[(1, &[1]), (1, &[2])]);
        let b = Polynomial::from_int_terms(1, &[(1, &[0]), (-2, &[1]), (4, &[2]), (-8, &[3])]);
        let p = poly_arith(&a, &b, ArithOp::Mul, 4).unwrap();
        let expected = Polynomial::from_int_terms(1, &[(1, &[1]), (-1, &[2]), (2, &[3]), (-4, &[4])]);
        assert_eq!(p, expected);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Polynomial::var(2, 0);
        let b = Polynomial::var(3, 0);
        assert!(matches!(
            poly_arith(&a, &b, ArithOp::Add, 3),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn scale_requires_constant() {
        let a = Polynomial::var(2, 0);
        let half = Polynomial::constant(2, rat(1, 2));
        let p = poly_arith(&a, &half, ArithOp::Scale, 3).unwrap();
        assert_eq!(p.coeff(&Monomial::var(2, 0)), rat(1, 2));
        assert!(poly_arith(&a, &a, ArithOp::Scale, 3).is_err());
    }

    #[test]
    fn substitution_basics() {
        let y = Polynomial::var(2, 1);
        let map = vec![
            Polynomial::var(2, 0),
            Polynomial::from_int_terms(2, &[(1, &[0, 1]), (1, &[2, 0])]),
        ];
        assert_eq!(y.substitute(&map, 4).unwrap().format_with(&names2()), "y + x^2");
        let x2 = Polynomial::from_int_terms(2, &[(1, &[2, 0])]);
        let id = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
        assert_eq!(x2.substitute(&id, 4).unwrap(), x2);
        assert!(x2.substitute(&map[..1], 4).is_err());
    }

    #[test]
    fn derivative_and_truncation() {
        let p = Polynomial::from_int_terms(2, &[(3, &[2, 1]), (1, &[0, 1]), (5, &[4, 0])]);
        assert_eq!(
            p.derivative(0),
            Polynomial::from_int_terms(2, &[(6, &[1, 1]), (20, &[3, 0])])
        );
        assert_eq!(p.clone().truncated(3).degree(), 3);
        assert_eq!(p.clone().truncated(3).len(), 2);
        assert_eq!(p.homogeneous_part(4).len(), 1);
        assert_eq!(p.coeff(&Monomial::new([4, 0])), int(5));
    }
}
