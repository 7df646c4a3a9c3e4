//! Dense univariate polynomials over a coefficient field `K`, ascending
//! degree order, trailing zeros trimmed.

use crate::scalar::Coeff;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Coeff> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial c * x^k.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    pub fn from_i64_coeffs(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| K::from_i64(c)).collect())
    }

    /// lc * prod (x - r_i).
    pub fn from_roots(lc: K, roots: &[K]) -> Self {
        let mut p = Poly::constant(lc);
        for r in roots {
            p = &p * &Poly::new(vec![-r.clone(), K::one()]);
        }
        p
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> K {
        self.coeffs.get(k).cloned().unwrap_or_else(K::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, z: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let d: Vec<K> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| K::from_i64(i as i64) * c.clone())
            .collect();
        Poly::new(d)
    }

    pub fn scale(&self, s: &K) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => {
                let inv = K::one() / lc.clone();
                self.scale(&inv)
            }
        }
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    /// Zero out coefficients with magnitude <= tol, then re-trim.
    pub fn trim_below(&self, tol: f64) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| if c.magnitude() <= tol { K::zero() } else { c.clone() })
                .collect(),
        )
    }

    /// Quotient and remainder; divisor must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.degree().map_or(true, |d| d < dd) {
            return (Poly::zero(), self.clone());
        }
        let nd = self.degree().unwrap();
        let lc_inv = K::one() / divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let q = rem[k + dd].clone() * lc_inv.clone();
            quot[k] = q.clone();
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * dc.clone();
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Exact division; panics if the remainder is nonzero (exact types).
    pub fn exact_div(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        if K::EXACT {
            assert!(r.is_zero(), "exact_div with nonzero remainder");
        }
        q
    }

    /// Euclidean GCD, monic result. Exact over exact fields; over floating
    /// coefficients remainders below `tol` (absolute, on monic-normalized
    /// operands) are treated as zero.
    pub fn gcd(&self, other: &Self, tol: f64) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.is_zero() {
            return b;
        }
        loop {
            if b.is_zero() {
                return a.monic();
            }
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let (_, r) = a.div_rem(&b);
            let r = if K::EXACT { r } else { r.trim_below(tol) };
            a = b;
            b = match r.leading() {
                None => Poly::zero(),
                Some(_) => r.monic(),
            };
        }
    }

    /// p(q(x)).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    /// p(x + a).
    pub fn shift(&self, a: &K) -> Self {
        self.compose(&Poly::new(vec![a.clone(), K::one()]))
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Yun's square-free decomposition: f = lc * prod out_i.0 ^ out_i.1 with
    /// the factors monic, square-free and pairwise coprime. Meaningful over
    /// exact coefficients; `tol` feeds the inner GCDs otherwise.
    pub fn squarefree_decomposition(&self, tol: f64) -> Vec<(Poly<K>, usize)> {
        let f = self.monic();
        if f.degree().map_or(true, |d| d == 0) {
            return vec![];
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp, tol);
        let mut b = f.exact_div(&a0);
        let mut d = &fp.exact_div(&a0) - &b.derivative();
        let mut out = Vec::new();
        let mut i = 1usize;
        while b.degree().map_or(false, |deg| deg > 0) {
            let ai = b.gcd(&d, tol);
            if ai.degree().map_or(false, |deg| deg > 0) {
                out.push((ai.monic(), i));
            }
            b = b.exact_div(&ai);
            d = &d.exact_div(&ai) - &b.derivative();
            i += 1;
        }
        out
    }
}

impl<K: Coeff> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<K: Coeff> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(out)
    }
}

impl<K: Coeff> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<K: Coeff> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<K: Coeff> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::GaussianRational;
    use num_complex::Complex64;

    type PE = Poly<GaussianRational>;
    type PF = Poly<Complex64>;

    #[test]
    fn arithmetic_and_eval() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let p = PE::from_roots(
            GaussianRational::from_i64(1),
            &[GaussianRational::from_i64(1), GaussianRational::from_i64(-2)],
        );
        assert_eq!(p, PE::from_i64_coeffs(&[-2, 1, 1]));
        assert_eq!(p.eval(&GaussianRational::from_i64(3)), GaussianRational::from_i64(10));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = PE::from_i64_coeffs(&[1, 0, -3, 2, 5]);
        let b = PE::from_i64_coeffs(&[2, -1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn exact_gcd() {
        let g = PE::from_i64_coeffs(&[-1, 1]); // x - 1
        let p = &PE::from_i64_coeffs(&[2, 1]) * &g;
        let q = &PE::from_i64_coeffs(&[3, 0, 1]) * &g;
        assert_eq!(p.gcd(&q, 0.0), g.monic());
    }

    #[test]
    fn float_gcd_with_noise() {
        let g = PF::new(vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)]);
        let p = &PF::from_i64_coeffs(&[2, 1]) * &g;
        let q = &PF::from_i64_coeffs(&[3, 0, 1]) * &g;
        let got = p.gcd(&q, 1e-10);
        assert_eq!(got.degree(), Some(1));
        assert!((got.coeff(0) + Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn yun_decomposition() {
        // x^3 (x - 2)^2 (x + 1)
        let x = PE::from_i64_coeffs(&[0, 1]);
        let f = &(&x.pow(3) * &PE::from_i64_coeffs(&[-2, 1]).pow(2)) * &PE::from_i64_coeffs(&[1, 1]);
        let dec = f.squarefree_decomposition(0.0);
        let mut by_mult: Vec<(usize, PE)> = dec.into_iter().map(|(p, m)| (m, p)).collect();
        by_mult.sort_by_key(|(m, _)| *m);
        assert_eq!(by_mult.len(), 3);
        assert_eq!(by_mult[0], (1, PE::from_i64_coeffs(&[1, 1])));
        assert_eq!(by_mult[1], (2, PE::from_i64_coeffs(&[-2, 1])));
        assert_eq!(by_mult[2], (3, x));
    }
}
