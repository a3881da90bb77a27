use std::fmt;

use num_traits::{One, Signed, Zero};

use super::RatMatrix;
use crate::scalar::{format_rational, Gaussian, Rational};

/// Dense univariate polynomial over ℚ, coefficients from the constant term
/// upward, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `t − r`.
    pub fn linear_root(r: &Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Exact quotient when `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    /// `p / gcd(p, p′)`, monic: same roots, each simple.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Yun's squarefree decomposition `p = lc · ∏ aᵢ^i`; returns the
    /// nonconstant `(aᵢ, i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(UPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.monic();
        let dp = p.derivative();
        let b = p.gcd(&dp);
        let mut c = p.div_exact(&b).expect("gcd divides");
        let mut d = dp.div_exact(&b).expect("gcd divides").sub(&c.derivative());
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let a = c.gcd(&d);
            c = c.div_exact(&a).expect("gcd divides");
            d = d.div_exact(&a).expect("gcd divides").sub(&c.derivative());
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, i));
            }
            i += 1;
        }
        out
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_gaussian(&self, z: &Gaussian) -> Gaussian {
        self.coeffs
            .iter()
            .rev()
            .fold(Gaussian::zero(), |acc, c| &(&acc * z) + &Gaussian::real(c.clone()))
    }

    pub fn eval_complex(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, c| {
                acc * z + crate::scalar::to_f64(c)
            })
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &RatMatrix) -> RatMatrix {
        let n = m.rows();
        let mut acc = RatMatrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            if !c.is_zero() {
                for i in 0..n {
                    acc[(i, i)] += c;
                }
            }
        }
        acc
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::scalar::to_f64).collect()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_one() && i > 0 {
                String::new()
            } else if i > 0 {
                format!("{}*", format_rational(&a))
            } else {
                format_rational(&a)
            };
            match i {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}t")?,
                _ => write!(f, "{coef}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

/// Monic `det(tI − M)` by the Faddeev–LeVerrier recurrence.
pub fn char_poly(m: &RatMatrix) -> UPoly {
    assert!(m.is_square(), "characteristic polynomial needs a square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        mk = m.mul(&mk);
        for i in 0..n {
            mk[(i, i)] += &coeffs[n - k + 1];
        }
        let tr = m.mul(&mk).trace();
        coeffs[n - k] = -tr / Rational::from_integer((k as i64).into());
    }
    UPoly::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn char_poly_of_diagonal() {
        let m = RatMatrix::from_i64(&[&[1, 0], &[0, 3]]);
        assert_eq!(char_poly(&m), UPoly::from_i64(&[3, -4, 1]));
    }

    #[test]
    fn char_poly_of_rotation_block() {
        let a = rat(1, 2);
        let m = RatMatrix::from_rows(&[vec![a.clone(), int(-1)], vec![int(1), a]]);
        assert_eq!(
            char_poly(&m),
            UPoly::new(vec![rat(5, 4), int(-1), int(1)])
        );
    }

    #[test]
    fn char_poly_of_nilpotent() {
        let m = RatMatrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(char_poly(&m), UPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn cayley_hamilton_3x3() {
        let m = RatMatrix::from_i64(&[&[2, -1, 4], &[0, 3, 1], &[5, 7, -2]]);
        assert!(char_poly(&m).eval_matrix(&m).is_zero());
    }

    #[test]
    fn division_and_gcd() {
        // (t−1)²(t+2)
        let p = UPoly::from_i64(&[2, -3, 0, 1]);
        let (q, r) = p.divrem(&UPoly::from_i64(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(q, UPoly::from_i64(&[-2, 1, 1]));
        assert_eq!(p.gcd(&p.derivative()), UPoly::from_i64(&[-1, 1]));
        assert_eq!(p.squarefree_part(), UPoly::from_i64(&[-2, 1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (t−1)²(t+2)·t³
        let p = UPoly::from_i64(&[2, -3, 0, 1])
            .mul(&UPoly::from_i64(&[0, 0, 0, 1]));
        let dec = p.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![
                (UPoly::from_i64(&[2, 1]), 1),
                (UPoly::from_i64(&[-1, 1]), 2),
                (UPoly::from_i64(&[0, 1]), 3)
            ]
        );
    }

    #[test]
    fn display() {
        assert_eq!(UPoly::from_i64(&[3, -4, 1]).to_string(), "t^2 - 4*t + 3");
        assert_eq!(UPoly::zero().to_string(), "0");
    }
}
