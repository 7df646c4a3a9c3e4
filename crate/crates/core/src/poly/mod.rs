//! Complex univariate polynomials with a dual representation: exact
//! Gaussian-rational coefficients are preserved end to end whenever the
//! inputs are exact, floating otherwise. Structural decisions (GCD,
//! square-ness, resultants) run in whichever arithmetic the operands carry.

pub mod generic;
pub mod parse;
pub mod resultant;
pub mod roots;
mod square;

use crate::error::{Error, Result};
use crate::rational::GaussianRational;
use num_complex::Complex64;
use num_traits::Zero;
use std::fmt;

pub use generic::Poly;
pub use parse::{fmt_c64, parse_complex, CValue};

pub type FloatPoly = Poly<Complex64>;
pub type ExactPoly = Poly<GaussianRational>;

#[derive(Clone, Debug)]
pub enum Repr {
    Exact(ExactPoly),
    Float(FloatPoly),
}

/// A complex polynomial that remembers whether its coefficients are exact.
#[derive(Clone, Debug)]
pub struct ComplexPoly {
    repr: Repr,
}

impl ComplexPoly {
    pub fn from_exact(p: ExactPoly) -> Self {
        ComplexPoly { repr: Repr::Exact(p) }
    }

    pub fn from_float(p: FloatPoly) -> Self {
        ComplexPoly { repr: Repr::Float(p) }
    }

    pub fn zero() -> Self {
        ComplexPoly::from_exact(ExactPoly::zero())
    }

    pub fn one() -> Self {
        ComplexPoly::from_exact(ExactPoly::one())
    }

    pub fn from_i64_coeffs(cs: &[i64]) -> Self {
        ComplexPoly::from_exact(ExactPoly::from_i64_coeffs(cs))
    }

    pub fn constant(c: &CValue) -> Self {
        ComplexPoly::from_values(std::slice::from_ref(c))
    }

    /// Builds from parsed scalars; exact iff every scalar is exact.
    pub fn from_values(vs: &[CValue]) -> Self {
        if vs.iter().all(|v| v.exact.is_some()) {
            ComplexPoly::from_exact(ExactPoly::new(
                vs.iter().map(|v| v.exact.clone().unwrap()).collect(),
            ))
        } else {
            ComplexPoly::from_float(FloatPoly::new(vs.iter().map(|v| v.approx).collect()))
        }
    }

    /// Parses the canonical text form: comma-separated coefficients,
    /// ascending degree.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.iter().all(|p| p.trim().is_empty()) {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let vs: Result<Vec<CValue>> = parts.iter().map(|p| parse_complex(p)).collect();
        Ok(ComplexPoly::from_values(&vs?))
    }

    pub fn exactness(&self) -> bool {
        matches!(self.repr, Repr::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&ExactPoly> {
        match &self.repr {
            Repr::Exact(p) => Some(p),
            Repr::Float(_) => None,
        }
    }

    pub fn to_float(&self) -> FloatPoly {
        match &self.repr {
            Repr::Exact(p) => FloatPoly::new(p.coeffs().iter().map(|c| c.to_c64()).collect()),
            Repr::Float(p) => p.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Exact(p) => p.is_zero(),
            Repr::Float(p) => p.is_zero(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Exact(p) => p.degree(),
            Repr::Float(p) => p.degree(),
        }
    }

    pub fn coeff_c64(&self, k: usize) -> Complex64 {
        match &self.repr {
            Repr::Exact(p) => p.coeff(k).to_c64(),
            Repr::Float(p) => p.coeff(k),
        }
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        match &self.repr {
            Repr::Exact(p) => p.max_coeff_magnitude(),
            Repr::Float(p) => p.max_coeff_magnitude(),
        }
    }

    /// Horner evaluation in floating arithmetic.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match &self.repr {
            Repr::Exact(p) => {
                let mut acc = Complex64::zero();
                for c in p.coeffs().iter().rev() {
                    acc = acc * z + c.to_c64();
                }
                acc
            }
            Repr::Float(p) => p.eval(&z),
        }
    }

    /// Exact Horner evaluation; available when the polynomial is exact.
    pub fn eval_exact(&self, z: &GaussianRational) -> Option<GaussianRational> {
        self.as_exact().map(|p| p.eval(z))
    }

    pub fn derivative(&self) -> Self {
        match &self.repr {
            Repr::Exact(p) => ComplexPoly::from_exact(p.derivative()),
            Repr::Float(p) => ComplexPoly::from_float(p.derivative()),
        }
    }

    pub fn monic(&self) -> Self {
        match &self.repr {
            Repr::Exact(p) => ComplexPoly::from_exact(p.monic()),
            Repr::Float(p) => ComplexPoly::from_float(p.monic()),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Exact(p) => ComplexPoly::from_exact(-p),
            Repr::Float(p) => ComplexPoly::from_float(-p),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => ComplexPoly::from_exact(a + b),
            _ => ComplexPoly::from_float(&self.to_float() + &other.to_float()),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => ComplexPoly::from_exact(a * b),
            _ => ComplexPoly::from_float(&self.to_float() * &other.to_float()),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        match &self.repr {
            Repr::Exact(p) => ComplexPoly::from_exact(p.pow(e)),
            Repr::Float(p) => ComplexPoly::from_float(p.pow(e)),
        }
    }

    pub fn scale(&self, s: &CValue) -> Self {
        match (&self.repr, &s.exact) {
            (Repr::Exact(p), Some(se)) => ComplexPoly::from_exact(p.scale(se)),
            _ => ComplexPoly::from_float(self.to_float().scale(&s.approx)),
        }
    }

    /// p(z + a); stays exact when both the polynomial and the shift are.
    pub fn shift(&self, a: &CValue) -> Self {
        match (&self.repr, &a.exact) {
            (Repr::Exact(p), Some(ae)) => ComplexPoly::from_exact(p.shift(ae)),
            _ => ComplexPoly::from_float(self.to_float().shift(&a.approx)),
        }
    }

    /// Monic GCD; exact Euclid when both operands are exact, a
    /// tolerance-thresholded remainder sequence otherwise.
    pub fn gcd(&self, other: &Self) -> Self {
        match (&self.repr, &other.repr) {
            (Repr::Exact(a), Repr::Exact(b)) => ComplexPoly::from_exact(a.gcd(b, 0.0)),
            _ => ComplexPoly::from_float(self.to_float().gcd(&other.to_float(), 1e-9)),
        }
    }

    /// All roots with multiplicities. Exact inputs are first split into
    /// square-free factors (exact multiplicity structure, well-conditioned
    /// simple roots); floating inputs use clustering at
    /// `1e-6 * (1 + max |root|)`.
    pub fn roots(&self, seed: u64) -> Result<RootList> {
        if self.is_zero() {
            return Err(Error::PreconditionFailed(
                "roots of the zero polynomial".into(),
            ));
        }
        if self.degree() == Some(0) {
            return Ok(RootList { roots: vec![] });
        }
        let eps = 1e-13;
        match &self.repr {
            Repr::Exact(p) => {
                let mut out: Vec<(Complex64, usize)> = Vec::new();
                for (factor, mult) in p.squarefree_decomposition(0.0) {
                    let f = ComplexPoly::from_exact(factor).to_float();
                    let rs = roots::all_roots(f.coeffs(), eps, seed, None)?;
                    out.extend(rs.into_iter().map(|r| (r, mult)));
                }
                sort_roots(&mut out);
                debug_assert_eq!(
                    out.iter().map(|(_, m)| m).sum::<usize>(),
                    p.degree().unwrap()
                );
                Ok(RootList { roots: out })
            }
            Repr::Float(p) => {
                let raw = roots::all_roots(p.coeffs(), eps, seed, None)?;
                let mut out = cluster_roots(&raw);
                roots::polish_clusters(p.coeffs(), &mut out);
                sort_roots(&mut out);
                Ok(RootList { roots: out })
            }
        }
    }

    /// The roots of odd multiplicity.
    pub fn odd_multiplicity_roots(&self, seed: u64) -> Result<RootList> {
        let all = self.roots(seed)?;
        Ok(RootList {
            roots: all.roots.into_iter().filter(|(_, m)| m % 2 == 1).collect(),
        })
    }

    /// Perfect-square detection with witness; see [`square`].
    pub fn is_perfect_square(&self, tol: f64, seed: u64) -> (bool, Option<ComplexPoly>) {
        square::is_perfect_square(self, tol, seed)
    }
}

impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Exact(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
            Repr::Float(p) => {
                if p.is_zero() {
                    return write!(f, "0");
                }
                let parts: Vec<String> = p.coeffs().iter().map(|c| fmt_c64(*c)).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Roots with multiplicities; multiplicities sum to the degree.
#[derive(Clone, Debug)]
pub struct RootList {
    pub roots: Vec<(Complex64, usize)>,
}

impl RootList {
    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }

    /// Roots repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for (r, m) in &self.roots {
            out.extend(std::iter::repeat(*r).take(*m));
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

fn sort_roots(roots: &mut [(Complex64, usize)]) {
    roots.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Greedy clustering: roots within `1e-6 * (1 + max |root|)` of a cluster
/// centroid collapse into one root of higher multiplicity.
pub fn cluster_roots(raw: &[Complex64]) -> Vec<(Complex64, usize)> {
    let max_norm = raw.iter().map(|r| r.norm()).fold(0.0, f64::max);
    let radius = 1e-6 * (1.0 + max_norm);
    let mut sorted: Vec<Complex64> = raw.to_vec();
    sorted.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for r in sorted {
        match clusters
            .iter_mut()
            .find(|(center, _)| (*center - r).norm() <= radius)
        {
            Some((center, count)) => {
                // Running centroid.
                *center = (*center * (*count as f64) + r) / (*count as f64 + 1.0);
                *count += 1;
            }
            None => clusters.push((r, 1)),
        }
    }
    clusters
}

/// A polynomial in an elimination variable `w` whose coefficients are
/// complex polynomials in z, ascending in w.
#[derive(Clone, Debug)]
pub struct BiPoly {
    w_coeffs: Vec<ComplexPoly>,
}

impl BiPoly {
    pub fn new(mut w_coeffs: Vec<ComplexPoly>) -> Self {
        while w_coeffs.last().map_or(false, |p| p.is_zero()) {
            w_coeffs.pop();
        }
        BiPoly { w_coeffs }
    }

    pub fn degree_w(&self) -> Option<usize> {
        if self.w_coeffs.is_empty() {
            None
        } else {
            Some(self.w_coeffs.len() - 1)
        }
    }

    pub fn w_coeffs(&self) -> &[ComplexPoly] {
        &self.w_coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.w_coeffs.iter().all(|p| p.exactness())
    }
}

/// Res_w(A, B) as a polynomial in z. Identically-zero resultants are an
/// error (the two families share a factor for every z); use
/// [`resultant_w_allow_zero`] when a zero resultant is an answer rather
/// than a failure.
pub fn resultant_w(a: &BiPoly, b: &BiPoly) -> Result<ComplexPoly> {
    let r = resultant_w_allow_zero(a, b)?;
    if r.is_zero() {
        return Err(Error::DegenerateFamily(
            "Res_w(A, B) is identically zero".into(),
        ));
    }
    Ok(r)
}

pub fn resultant_w_allow_zero(a: &BiPoly, b: &BiPoly) -> Result<ComplexPoly> {
    if a.degree_w().is_none() || b.degree_w().is_none() {
        return Err(Error::PreconditionFailed(
            "resultant of a zero polynomial in w".into(),
        ));
    }
    if a.is_exact() && b.is_exact() {
        let ae: Vec<ExactPoly> = a.w_coeffs.iter().map(|p| p.as_exact().unwrap().clone()).collect();
        let be: Vec<ExactPoly> = b.w_coeffs.iter().map(|p| p.as_exact().unwrap().clone()).collect();
        Ok(ComplexPoly::from_exact(resultant::resultant_w(&ae, &be)))
    } else {
        let af: Vec<FloatPoly> = a.w_coeffs.iter().map(|p| p.to_float()).collect();
        let bf: Vec<FloatPoly> = b.w_coeffs.iter().map(|p| p.to_float()).collect();
        let raw = resultant::resultant_w(&af, &bf);
        let trim = 1e-9 * raw.max_coeff_magnitude();
        Ok(ComplexPoly::from_float(raw.trim_below(trim)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p = ComplexPoly::parse("0,-1,1").unwrap();
        assert!(p.exactness());
        assert_eq!(p.degree(), Some(2));
        assert_eq!(p.to_string(), "0,-1,1");

        let q = ComplexPoly::parse("1/2, 0, 1+2i").unwrap();
        assert!(q.exactness());
        assert_eq!(q.to_string(), "1/2,0,1+2i");

        let r = ComplexPoly::parse("0.5,1").unwrap();
        assert!(!r.exactness());
        assert_eq!(r.to_string(), "0.5,1");
    }

    #[test]
    fn eval_both_paths_agree() {
        let p = ComplexPoly::parse("1/3,-2,0,5").unwrap();
        let z = parse_complex("1/2+1/4i").unwrap();
        let exact = p.eval_exact(z.exact.as_ref().unwrap()).unwrap().to_c64();
        let float = p.eval(z.approx);
        assert!((exact - float).norm() < 1e-12 * (1.0 + exact.norm()));
    }

    #[test]
    fn eval_examples() {
        // z^2 - 1 at 1 is 0; (z-1)^2 at 3 is 4.
        let p = ComplexPoly::parse("-1,0,1").unwrap();
        assert_eq!(p.eval(Complex64::new(1.0, 0.0)), Complex64::zero());
        let q = ComplexPoly::parse("1,-2,1").unwrap();
        assert_eq!(q.eval(Complex64::new(3.0, 0.0)), Complex64::new(4.0, 0.0));
    }

    #[test]
    fn roots_with_multiplicity() {
        // z^2 - z: simple roots 0 and 1.
        let p = ComplexPoly::parse("0,-1,1").unwrap();
        let rl = p.roots(0).unwrap();
        assert_eq!(rl.roots.len(), 2);
        assert!((rl.roots[0].0 - Complex64::zero()).norm() < 1e-12);
        assert!((rl.roots[1].0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(rl.roots.iter().all(|&(_, m)| m == 1));

        // (z-1)^2
        let q = ComplexPoly::parse("1,-2,1").unwrap();
        let rl = q.roots(0).unwrap();
        assert_eq!(rl.roots.len(), 1);
        assert_eq!(rl.roots[0].1, 2);

        // z^3 (z-2)^2: odd-multiplicity roots are only z = 0.
        let f = ComplexPoly::from_i64_coeffs(&[0, 0, 0, 4, -4, 1]);
        let odd = f.odd_multiplicity_roots(0).unwrap();
        assert_eq!(odd.roots.len(), 1);
        assert_eq!(odd.roots[0].1, 3);
        assert!(odd.roots[0].0.norm() < 1e-9);
    }

    #[test]
    fn gcd_examples() {
        let g = ComplexPoly::parse("-1,1").unwrap(); // z - 1
        let a = ComplexPoly::parse("-1,0,1").unwrap(); // z^2 - 1
        assert_eq!(a.gcd(&g).to_string(), "-1,1");

        // gcd(z^2, z^3) = z^2
        let z2 = ComplexPoly::from_i64_coeffs(&[0, 0, 1]);
        let z3 = ComplexPoly::from_i64_coeffs(&[0, 0, 0, 1]);
        assert_eq!(z2.gcd(&z3).to_string(), "0,0,1");

        // gcd((z-1)^2 (z+2), (z-1)(z+3)) = z - 1
        let p = g.mul(&g).mul(&ComplexPoly::parse("2,1").unwrap());
        let q = g.mul(&ComplexPoly::parse("3,1").unwrap());
        assert_eq!(p.gcd(&q).to_string(), "-1,1");
    }

    #[test]
    fn resultant_of_linears() {
        // Res_w(w - a, w - b) = a - b with a = 5, b = 2 constants.
        let a = BiPoly::new(vec![ComplexPoly::from_i64_coeffs(&[-5]), ComplexPoly::one()]);
        let b = BiPoly::new(vec![ComplexPoly::from_i64_coeffs(&[-2]), ComplexPoly::one()]);
        let r = resultant_w(&a, &b).unwrap();
        assert_eq!(r.degree(), Some(0));
        assert!((r.coeff_c64(0).norm() - 3.0).abs() < 1e-12);
    }
}
