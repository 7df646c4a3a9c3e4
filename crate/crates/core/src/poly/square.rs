//! Perfect-square detection: p = s^2 over C iff every root has even
//! multiplicity (the leading coefficient always has a complex square
//! root). The exact path decides through the GCD-based square-free
//! decomposition; the floating path through clustered roots plus a
//! coefficient-level verification of the witness.

use super::{cluster_roots, ComplexPoly, ExactPoly, FloatPoly};
use crate::poly::roots::all_roots;
use num_complex::Complex64;
use num_traits::One;

/// Returns (true, Some(s)) with p = s^2 (within `tol` relative on
/// coefficients for floating inputs), choosing the witness whose leading
/// coefficient has argument in [0, pi).
pub fn is_perfect_square(p: &ComplexPoly, tol: f64, seed: u64) -> (bool, Option<ComplexPoly>) {
    if p.is_zero() {
        return (false, None);
    }
    let deg = p.degree().unwrap();
    if deg % 2 == 1 {
        return (false, None);
    }
    match p.as_exact() {
        Some(pe) => exact_path(p, pe),
        None => float_path(p, tol, seed),
    }
}

fn exact_path(_p: &ComplexPoly, pe: &ExactPoly) -> (bool, Option<ComplexPoly>) {
    let dec = pe.squarefree_decomposition(0.0);
    if dec.iter().any(|(_, mult)| mult % 2 == 1) {
        return (false, None);
    }
    let mut half = ExactPoly::one();
    for (factor, mult) in &dec {
        half = &half * &factor.pow(mult / 2);
    }
    let lc = pe.leading().unwrap().clone();
    let witness = match lc.sqrt() {
        Some(sqrt_lc) => ComplexPoly::from_exact(half.scale(&sqrt_lc)),
        None => {
            // Square over C but the leading coefficient has no square root
            // in Q(i); the witness falls back to floating coefficients.
            let sqrt_lc = lc.to_c64().sqrt();
            ComplexPoly::from_float(ComplexPoly::from_exact(half).to_float().scale(&sqrt_lc))
        }
    };
    (true, Some(normalize_arg(witness)))
}

fn float_path(p: &ComplexPoly, tol: f64, seed: u64) -> (bool, Option<ComplexPoly>) {
    let pf = p.to_float();
    let raw = match all_roots(pf.coeffs(), 1e-13, seed, None) {
        Ok(r) => r,
        Err(_) => return (false, None),
    };
    let mut clusters = cluster_roots(&raw);
    crate::poly::roots::polish_clusters(pf.coeffs(), &mut clusters);
    if clusters.iter().any(|(_, m)| m % 2 == 1) {
        return (false, None);
    }
    let lc = *pf.leading().unwrap();
    let mut witness = FloatPoly::constant(lc.sqrt());
    for (root, mult) in &clusters {
        witness = &witness * &FloatPoly::from_roots(Complex64::one(), &vec![*root; mult / 2]);
    }
    // Verify the reconstruction coefficient-wise.
    let square = &witness * &witness;
    let scale = pf.max_coeff_magnitude().max(1.0);
    let n = square.coeffs().len().max(pf.coeffs().len());
    for k in 0..n {
        if (square.coeff(k) - pf.coeff(k)).norm() > tol * scale {
            return (false, None);
        }
    }
    (true, Some(normalize_arg(ComplexPoly::from_float(witness))))
}

/// Flip the sign so the leading coefficient's argument lies in [0, pi).
fn normalize_arg(witness: ComplexPoly) -> ComplexPoly {
    let deg = witness.degree().unwrap_or(0);
    let lead = witness.coeff_c64(deg);
    let arg = lead.arg();
    if (0.0..std::f64::consts::PI).contains(&arg) {
        witness
    } else {
        witness.neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_square_with_witness() {
        // (z-1)^2
        let p = ComplexPoly::parse("1,-2,1").unwrap();
        let (ok, w) = is_perfect_square(&p, 1e-10, 0);
        assert!(ok);
        assert_eq!(w.unwrap().to_string(), "-1,1");
    }

    #[test]
    fn simple_roots_are_not_square() {
        let p = ComplexPoly::parse("0,-1,1").unwrap(); // z^2 - z
        let (ok, w) = is_perfect_square(&p, 1e-10, 0);
        assert!(!ok);
        assert!(w.is_none());
    }

    #[test]
    fn scaled_square() {
        // 4 (z^2+1)^2 = 4 z^4 + 8 z^2 + 4, witness 2(z^2+1)
        let p = ComplexPoly::parse("4,0,8,0,4").unwrap();
        let (ok, w) = is_perfect_square(&p, 1e-10, 0);
        assert!(ok);
        assert_eq!(w.unwrap().to_string(), "2,0,2");
    }

    #[test]
    fn negative_constant_is_square_over_c() {
        let p = ComplexPoly::parse("-1").unwrap();
        let (ok, w) = is_perfect_square(&p, 1e-10, 0);
        assert!(ok);
        assert_eq!(w.unwrap().to_string(), "0+1i"); // i, arg pi/2
    }

    #[test]
    fn irrational_lead_gets_float_witness() {
        // 2 (z-1)^2: square over C, sqrt(2) irrational.
        let p = ComplexPoly::parse("2,-4,2").unwrap();
        let (ok, w) = is_perfect_square(&p, 1e-10, 0);
        assert!(ok);
        let w = w.unwrap();
        assert!(!w.exactness());
        let sq = w.mul(&w);
        assert!((sq.coeff_c64(2).re - 2.0).abs() < 1e-12);
    }

    #[test]
    fn float_path_square() {
        let s = ComplexPoly::parse("0.5,1.5,1").unwrap();
        let p = s.mul(&s);
        let (ok, w) = is_perfect_square(&p, 1e-8, 0);
        assert!(ok);
        let w2 = w.unwrap();
        let diff = w2.mul(&w2).sub(&p);
        assert!(diff.max_coeff_magnitude() < 1e-8);
    }
}
