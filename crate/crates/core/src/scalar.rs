//! Exact scalars: arbitrary-precision rationals and the Gaussian-rational
//! extension ℚ(i) used by the eigenvalue machinery.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// The default coefficient field ℚ. Always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion used only by the numerical diagnostics.
pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // huge numerator/denominator: scale through the bit lengths
        let n = q.numer().bits() as i64;
        let d = q.denom().bits() as i64;
        let shift = n.max(d) - 60;
        let num = (q.numer() >> shift.max(0) as usize).to_f64().unwrap_or(0.0);
        let den = (q.denom() >> shift.max(0) as usize).to_f64().unwrap_or(1.0);
        if den == 0.0 {
            f64::INFINITY * num.signum()
        } else {
            num / den
        }
    })
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `-p`, or `p/q` (integers of any size).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rational::new(n, d))
            }
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

/// Exact square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// An element `re + im·i` of ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self {
            re,
            im: Rational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// |z|², exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn abs_f64(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(to_f64(&self.re), to_f64(&self.im))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            None
        } else {
            Some(Self::new(&self.re / &n, -&self.im / &n))
        }
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", format_rational(&self.re));
        }
        let im_abs = self.im.abs();
        let im_str = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", format_rational(&im_abs))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{im_str}")
            } else {
                write!(f, "{im_str}")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {im_str}", format_rational(&self.re))
        }
    }
}

impl Add for &Gaussian {
    type Output = Gaussian;
    fn add(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Gaussian {
    type Output = Gaussian;
    fn sub(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Gaussian {
    type Output = Gaussian;
    fn mul(self, rhs: &Gaussian) -> Gaussian {
        Gaussian::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Gaussian {
    type Output = Gaussian;
    // multiplication by the inverse is the definition of division here
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Gaussian) -> Gaussian {
        let inv = rhs.inv().expect("division by zero Gaussian rational");
        self * &inv
    }
}

impl Neg for &Gaussian {
    type Output = Gaussian;
    fn neg(self) -> Gaussian {
        Gaussian::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        let q = rat(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(format_rational(&q), "-3/2");
        assert_eq!(parse_rational("-3/2"), Some(q));
        assert_eq!(parse_rational("7"), Some(int(7)));
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn gaussian_arithmetic() {
        let a = Gaussian::new(rat(1, 2), int(1));
        let b = a.conj();
        let p = &a * &b;
        assert_eq!(p, Gaussian::real(rat(5, 4)));
        assert_eq!(&(&a / &a), &Gaussian::real(int(1)));
        assert_eq!(a.to_string(), "1/2 + i");
        assert_eq!(b.to_string(), "1/2 - i");
    }

    #[test]
    fn huge_rationals_convert() {
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-9);
    }
}
