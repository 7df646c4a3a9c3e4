//! Exact Gaussian-rational arithmetic: complex numbers with rational
//! real and imaginary parts, used as the exact coefficient field.

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// |x|^2 as a rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Exact square root in Q(i), if one exists. The principal-ish choice
    /// (nonnegative real part; positive imaginary part when purely imaginary)
    /// is returned.
    pub fn sqrt(&self) -> Option<GaussianRational> {
        if self.is_zero() {
            return Some(GaussianRational::from_i64(0));
        }
        if self.im.is_zero() {
            let a = &self.re;
            return if a.is_positive() {
                rational_sqrt(a).map(|s| GaussianRational::new(s, BigRational::zero()))
            } else {
                rational_sqrt(&-a.clone()).map(|s| GaussianRational::new(BigRational::zero(), s))
            };
        }
        // s = p + qi with p^2 - q^2 = re, 2pq = im; p^2 = (re + |x|)/2.
        let r = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let p_sq = (&self.re + &r) / &two;
        let p = rational_sqrt(&p_sq)?;
        if p.is_zero() {
            return None;
        }
        let q = &self.im / (&two * &p);
        let cand = GaussianRational::new(p, q);
        if &cand * &cand == *self {
            Some(cand)
        } else {
            None
        }
    }
}

/// Rational square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    if x.is_zero() {
        return Some(BigRational::zero());
    }
    let (num, den) = (x.numer(), x.denom());
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Continued-fraction reconstruction of a rational with denominator at most
/// `max_den` within `tol` of `x`, if one exists.
pub fn rational_reconstruct(x: f64, max_den: u64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0i64, x.round() as i64, 1i64);
    let mut frac = x - x.round();
    for _ in 0..40 {
        let cand = BigRational::new(BigInt::from(p1), BigInt::from(q1));
        if (ratio_to_f64(&cand) - x).abs() <= tol {
            return Some(cand);
        }
        if frac.abs() < 1e-18 {
            break;
        }
        let inv = 1.0 / frac;
        let a = inv.round();
        frac = inv - a;
        let (np, nq) = (
            (a as i64).checked_mul(p1)?.checked_add(p0)?,
            (a as i64).checked_mul(q1)?.checked_add(q0)?,
        );
        if nq.unsigned_abs() > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, np, nq);
    }
    let cand = BigRational::new(BigInt::from(p1), BigInt::from(q1));
    if (ratio_to_f64(&cand) - x).abs() <= tol {
        Some(cand)
    } else {
        None
    }
}

/// Nearest-f64 conversion that survives very large numerators/denominators.
pub fn ratio_to_f64(x: &BigRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() || x.numer().bits() > 1000 {
            return v;
        }
    }
    // Scale both parts down to comparable magnitude and divide.
    let nb = x.numer().bits() as i64;
    let db = x.denom().bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n = x.numer() >> shift;
    let d = x.denom() >> shift;
    let nf = n.to_f64().unwrap_or(if x.numer().sign() == Sign::Minus {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let df = d.to_f64().unwrap_or(f64::INFINITY);
    nf / df
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational::from_i64(0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_i64(1)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        GaussianRational::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        GaussianRational::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for GaussianRational {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let c = rhs.conj();
        let p = &self * &c;
        GaussianRational::new(p.re / &n, p.im / &n)
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational::new(-self.re, -self.im)
    }
}

fn fmt_ratio(x: &BigRational) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_ratio(&self.re))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", fmt_ratio(&self.re), fmt_ratio(&-self.im.clone()))
        } else {
            write!(f, "{}+{}i", fmt_ratio(&self.re), fmt_ratio(&self.im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn field_ops() {
        let a = GaussianRational::new(q(1, 2), q(1, 3));
        let b = GaussianRational::new(q(-2, 1), q(1, 1));
        let prod = &a * &b;
        let back = prod / b;
        assert_eq!(back, a);
    }

    #[test]
    fn sqrt_of_perfect_squares() {
        let x = GaussianRational::new(q(9, 4), q(0, 1));
        assert_eq!(x.sqrt().unwrap(), GaussianRational::new(q(3, 2), q(0, 1)));

        let neg = GaussianRational::from_i64(-4);
        let s = neg.sqrt().unwrap();
        assert_eq!(&s * &s, neg);

        // (1+2i)^2 = -3+4i
        let y = GaussianRational::new(q(-3, 1), q(4, 1));
        let s = y.sqrt().unwrap();
        assert_eq!(&s * &s, y);

        let z = GaussianRational::from_i64(2);
        assert!(z.sqrt().is_none());
    }

    #[test]
    fn big_ratio_to_f64() {
        let huge = BigRational::new(BigInt::from(10).pow(400u32), BigInt::from(10).pow(398u32));
        assert!((ratio_to_f64(&huge) - 100.0).abs() < 1e-9);
    }
}
