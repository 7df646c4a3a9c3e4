//! The inverse-dynamics contradiction for T(z) = (c + sqrt(gamma(z)))^2
//! with gamma having at least two distinct roots: two separated points
//! z3', z4' both map onto the same pair [(c+eps)^2, (3c+eps)^2], so a
//! continuous inverse defined by a group element would have to send
//! (3c+eps)^2 to both [z3', z3'] and [z4', z4'].

use crate::dynamics::QuadDynamics;
use crate::error::{Error, Result};
use crate::multiset::CMultiset;
use crate::poly::{fmt_c64, ComplexPoly, CValue};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SufficiencyReport {
    #[serde(serialize_with = "crate::ser::c64")]
    pub c: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub eps_used: Complex64,
    pub perturbations: usize,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z1: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z2: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z1_prime: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z2_prime: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z3_prime: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z4_prime: Complex64,
    /// The common image pair [(c+eps)^2, (3c+eps)^2].
    #[serde(serialize_with = "crate::ser::c64_vec")]
    pub image_pair: Vec<Complex64>,
    /// Largest bottleneck distance between T(z3'), T(z4') and the pair.
    pub max_image_distance: f64,
    pub certificate: String,
}

/// Build T(z) = (c +/- sqrt(gamma(z)))^2 as a dynamics: p1 = -(c^2 + gamma),
/// p0 = (c^2 - gamma)^2.
pub fn constant_alpha_dynamics(c: &CValue, gamma: &ComplexPoly) -> QuadDynamics {
    let c_sq = CValue {
        approx: c.approx * c.approx,
        exact: c.exact.clone().map(|e| &e * &e),
    };
    let c_sq_poly = ComplexPoly::constant(&c_sq);
    let p1 = c_sq_poly.add(gamma).neg();
    let diff = c_sq_poly.sub(gamma);
    let p0 = diff.mul(&diff);
    QuadDynamics::new(p1, p0)
}

pub fn sufficiency_probe(
    c: &CValue,
    gamma: &ComplexPoly,
    eps: Complex64,
    seed: u64,
) -> Result<SufficiencyReport> {
    if c.approx.norm() == 0.0 {
        return Err(Error::PreconditionFailed("c must be nonzero".into()));
    }
    if eps.norm() == 0.0 {
        return Err(Error::PreconditionFailed("eps must be nonzero".into()));
    }
    let gamma_roots = gamma.roots(seed)?;
    let distinct: Vec<Complex64> = gamma_roots.roots.iter().map(|(r, _)| *r).collect();
    if distinct.len() < 2 {
        return Err(Error::PreconditionFailed(
            "gamma must have at least two distinct roots".into(),
        ));
    }
    // The two most separated roots.
    let (mut z1, mut z2, mut best) = (distinct[0], distinct[0], -1.0);
    for i in 0..distinct.len() {
        for j in i + 1..distinct.len() {
            let d = (distinct[i] - distinct[j]).norm();
            if d > best {
                best = d;
                z1 = distinct[i];
                z2 = distinct[j];
            }
        }
    }
    let min_sep = {
        let mut m = f64::INFINITY;
        for i in 0..distinct.len() {
            for j in i + 1..distinct.len() {
                m = m.min((distinct[i] - distinct[j]).norm());
            }
        }
        m
    };
    if eps.norm() >= 0.01 * min_sep {
        return Err(Error::PreconditionFailed(format!(
            "|eps| = {:.3e} is not small against the root separation {:.3e}",
            eps.norm(),
            min_sep
        )));
    }

    let dynamics = constant_alpha_dynamics(c, gamma);
    let gamma_f = gamma.to_float();
    let c_val = c.approx;

    let mut eps_used = eps;
    let mut perturbations = 0usize;
    let (z3p, z4p, z1p, z2p) = loop {
        // Points sent to pairs containing (c + eps)^2.
        let near = shifted_roots(&gamma_f, eps_used * eps_used, seed)?;
        let z1p = nearest(&near, z1);
        let z2p = nearest(&near, z2);
        let far_target = (2.0 * c_val + eps_used) * (2.0 * c_val + eps_used);
        let far = shifted_roots(&gamma_f, far_target, seed)?;
        let far_sep_tol = 1e-6 * (1.0 + far.iter().map(|z| z.norm()).fold(0.0, f64::max));
        // The two most separated candidates.
        let mut pick: Option<(Complex64, Complex64, f64)> = None;
        for i in 0..far.len() {
            for j in i + 1..far.len() {
                let d = (far[i] - far[j]).norm();
                if pick.as_ref().map_or(true, |(_, _, pd)| d > *pd) {
                    pick = Some((far[i], far[j], d));
                }
            }
        }
        match pick {
            Some((a, b, d)) if d > far_sep_tol => break (a, b, z1p, z2p),
            _ => {
                perturbations += 1;
                if perturbations > 10 {
                    return Err(Error::RootProximity(format!(
                        "z3' and z4' stayed coincident after {perturbations} eps perturbations"
                    )));
                }
                eps_used *= Complex64::from_polar(1.13, std::f64::consts::PI / 7.0);
            }
        }
    };

    let plus = (c_val + eps_used) * (c_val + eps_used);
    let triple = 3.0 * c_val + eps_used;
    let far_image = triple * triple;
    let pair = CMultiset::new(vec![plus, far_image]);
    let mut max_dist: f64 = 0.0;
    for z in [z3p, z4p] {
        let image = dynamics.eval_t(z);
        max_dist = max_dist.max(image.distance(&pair)?);
    }
    let tol = 1e-7 * (1.0 + plus.norm().max(far_image.norm()));
    if max_dist > tol {
        return Err(Error::RootProximity(format!(
            "images of z3', z4' miss the expected pair by {max_dist:.3e}"
        )));
    }

    let certificate = format!(
        "both {} and {} map to the pair [{}, {}]; a continuous inverse dynamics with \
         E(z) = [z, z] in its composite would have to send {} to both [{}, {}] and [{}, {}], \
         which is impossible",
        fmt_c64(z3p),
        fmt_c64(z4p),
        fmt_c64(plus),
        fmt_c64(far_image),
        fmt_c64(far_image),
        fmt_c64(z3p),
        fmt_c64(z3p),
        fmt_c64(z4p),
        fmt_c64(z4p),
    );

    Ok(SufficiencyReport {
        c: c_val,
        eps_used,
        perturbations,
        z1,
        z2,
        z1_prime: z1p,
        z2_prime: z2p,
        z3_prime: z3p,
        z4_prime: z4p,
        image_pair: vec![plus, far_image],
        max_image_distance: max_dist,
        certificate,
    })
}

/// Roots of gamma(z) - target.
fn shifted_roots(
    gamma_f: &crate::poly::FloatPoly,
    target: Complex64,
    seed: u64,
) -> Result<Vec<Complex64>> {
    let mut coeffs = gamma_f.coeffs().to_vec();
    if coeffs.is_empty() {
        coeffs.push(-target);
    } else {
        coeffs[0] -= target;
    }
    crate::poly::roots::all_roots(&coeffs, 1e-13, seed, None)
}

fn nearest(candidates: &[Complex64], to: Complex64) -> Complex64 {
    *candidates
        .iter()
        .min_by(|a, b| {
            (*a - to)
                .norm()
                .partial_cmp(&(*b - to).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_complex;

    #[test]
    fn probe_on_two_root_gamma() {
        // c = 1, gamma = z(z-1), eps = 1e-3.
        let c = parse_complex("1").unwrap();
        let gamma = ComplexPoly::parse("0,-1,1").unwrap();
        let rep = sufficiency_probe(&c, &gamma, Complex64::new(1e-3, 0.0), 0).unwrap();
        assert!(rep.max_image_distance <= 1e-7);
        assert!((rep.z1_prime - rep.z1).norm() < 0.05);
        assert!((rep.z2_prime - rep.z2).norm() < 0.05);
        assert!((rep.z3_prime - rep.z4_prime).norm() > 0.1);
        assert!(rep.certificate.contains("impossible"));
    }

    #[test]
    fn double_root_gamma_is_rejected() {
        let c = parse_complex("1").unwrap();
        let gamma = ComplexPoly::parse("0,0,1").unwrap(); // z^2
        let err = sufficiency_probe(&c, &gamma, Complex64::new(1e-3, 0.0), 0).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailed(_)));
    }

    #[test]
    fn probe_with_c_two() {
        let c = parse_complex("2").unwrap();
        let gamma = ComplexPoly::parse("-1,0,1").unwrap(); // (z-1)(z+1)
        let rep = sufficiency_probe(&c, &gamma, Complex64::new(1e-3, 0.0), 0).unwrap();
        assert!(rep.max_image_distance <= 1e-7);
    }

    #[test]
    fn constant_alpha_dynamics_shape() {
        // c = 1, gamma = z(z-1): T = (1 +/- sqrt(z^2 - z))^2.
        let c = parse_complex("1").unwrap();
        let gamma = ComplexPoly::parse("0,-1,1").unwrap();
        let t = constant_alpha_dynamics(&c, &gamma);
        // p0 = (1 - z^2 + z)^2 must be a perfect square by construction.
        let (ok, _) = t.p0().is_perfect_square(1e-9, 0);
        assert!(ok);
        // At a gamma root, the image pair is [c^2, c^2].
        let img = t.eval_t(Complex64::new(1.0, 0.0));
        assert!(img.diagonal_distance().unwrap() < 1e-9);
        assert!((img.values()[0] - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}
