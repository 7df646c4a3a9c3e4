//! Polynomial root extraction: closed forms for degree <= 2, the
//! Aberth-Ehrlich simultaneous iteration above that, with deterministic
//! perturbation restarts and Newton polishing.

use crate::error::{Error, Result};
use num_complex::Complex;
use num_traits::{Float, FloatConst};

/// Both roots of a*x^2 + b*x + c, cancellation free: the larger-magnitude
/// root is computed from the stable sign choice and the other recovered
/// from the product of roots.
pub fn quadratic_roots<F: Float>(
    a: Complex<F>,
    b: Complex<F>,
    c: Complex<F>,
) -> (Complex<F>, Complex<F>) {
    debug_assert!(a.norm() > F::zero());
    let four = F::from(4.0).unwrap();
    let two = F::from(2.0).unwrap();
    let disc = b * b - a * c * four;
    let s = disc.sqrt();
    // Pick the sign that adds |b| and |s| constructively.
    let dot = b.re * s.re + b.im * s.im;
    let s = if dot >= F::zero() { s } else { -s };
    let q = -(b + s) / two;
    if q.norm() == F::zero() {
        (Complex::new(F::zero(), F::zero()), -b / a)
    } else {
        (q / a, c / q)
    }
}

fn horner<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> Complex<F> {
    let mut acc = Complex::new(F::zero(), F::zero());
    for c in coeffs.iter().rev() {
        acc = acc * z + *c;
    }
    acc
}

/// Horner value plus a running bound on its floating-point error; once
/// |p(z)| drops under the bound the value is indistinguishable from zero.
fn horner_with_bound<F: Float>(coeffs: &[Complex<F>], z: Complex<F>) -> (Complex<F>, F) {
    let mut acc = Complex::new(F::zero(), F::zero());
    let mut mag = F::zero();
    let zn = z.norm();
    for c in coeffs.iter().rev() {
        acc = acc * z + *c;
        mag = mag * zn + c.norm();
    }
    let n = F::from(4 * coeffs.len()).unwrap();
    (acc, n * F::epsilon() * mag)
}

fn derivative_coeffs<F: Float>(coeffs: &[Complex<F>]) -> Vec<Complex<F>> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| *c * Complex::new(F::from(i).unwrap(), F::zero()))
        .collect()
}

fn initial_guesses<F: Float + FloatConst>(
    coeffs: &[Complex<F>],
    restart: usize,
    seed: u64,
) -> Vec<Complex<F>> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let mut radius = F::one();
    for c in &coeffs[..n] {
        let m = (*c / lc).norm();
        if m > radius {
            radius = m;
        }
    }
    radius = radius + F::one();
    let jitter = F::from(1.0 + 0.17 * restart as f64).unwrap();
    let offset =
        F::from(0.37 + 0.761 * restart as f64 + 1e-3 * ((seed % 997) as f64)).unwrap();
    let tau = F::TAU();
    (0..n)
        .map(|j| {
            let theta = tau * F::from(j).unwrap() / F::from(n).unwrap() + offset;
            Complex::from_polar(radius * jitter, theta)
        })
        .collect()
}

fn aberth_iterate<F: Float>(
    coeffs: &[Complex<F>],
    deriv: &[Complex<F>],
    guesses: &mut [Complex<F>],
    eps: F,
    max_iter: usize,
) -> bool {
    let n = guesses.len();
    for _ in 0..max_iter {
        let mut converged = true;
        for j in 0..n {
            let zj = guesses[j];
            let (pz, floor) = horner_with_bound(coeffs, zj);
            if pz.norm() <= floor {
                // At the attainable accuracy for this arithmetic.
                continue;
            }
            let dz = horner(deriv, zj);
            if dz.norm() == F::zero() {
                // Sitting on a critical point; nudge off it.
                guesses[j] = zj + Complex::new(eps + eps, eps);
                converged = false;
                continue;
            }
            let w = pz / dz;
            let mut sum = Complex::new(F::zero(), F::zero());
            for (k, zk) in guesses.iter().enumerate() {
                if k != j {
                    let d = zj - *zk;
                    if d.norm() == F::zero() {
                        continue;
                    }
                    sum = sum + d.finv();
                }
            }
            let denom = Complex::new(F::one(), F::zero()) - w * sum;
            let delta = if denom.norm() < F::epsilon() { w } else { w / denom };
            guesses[j] = zj - delta;
            if delta.norm() > eps * (F::one() + guesses[j].norm()) {
                converged = false;
            }
        }
        if converged {
            return true;
        }
    }
    false
}

fn newton_polish<F: Float>(coeffs: &[Complex<F>], deriv: &[Complex<F>], root: Complex<F>) -> Complex<F> {
    let mut best = root;
    let mut best_res = horner(coeffs, best).norm();
    let mut z = root;
    for _ in 0..4 {
        let (pz, floor) = horner_with_bound(coeffs, z);
        if pz.norm() <= floor {
            break;
        }
        let dz = horner(deriv, z);
        if dz.norm() == F::zero() {
            break;
        }
        z = z - pz / dz;
        let res = horner(coeffs, z).norm();
        if res < best_res {
            best = z;
            best_res = res;
        }
    }
    best
}

/// Refine clustered root representatives: a root of multiplicity m is a
/// simple root of the (m-1)-th derivative, where Newton converges
/// quadratically again.
pub fn polish_clusters<F: Float>(coeffs: &[Complex<F>], clusters: &mut [(Complex<F>, usize)]) {
    for (center, mult) in clusters.iter_mut() {
        let mut cs = coeffs.to_vec();
        for _ in 0..*mult - 1 {
            cs = derivative_coeffs(&cs);
        }
        let deriv = derivative_coeffs(&cs);
        *center = newton_polish(&cs, &deriv, *center);
    }
}

/// All complex roots of the polynomial (ascending coefficients, not all
/// zero), unordered, repeated according to multiplicity. `hint` warm-starts
/// the iteration (useful when tracking roots along a path).
pub fn all_roots<F: Float + FloatConst>(
    coeffs: &[Complex<F>],
    eps: F,
    seed: u64,
    hint: Option<&[Complex<F>]>,
) -> Result<Vec<Complex<F>>> {
    const MAX_ITER: usize = 400;
    const RESTARTS: usize = 6;

    let mut cs: Vec<Complex<F>> = coeffs.to_vec();
    while cs.last().map_or(false, |c| c.norm() == F::zero()) {
        cs.pop();
    }
    assert!(!cs.is_empty(), "root extraction of the zero polynomial");

    // Exact zeros at the bottom are roots at the origin.
    let mut zeros_at_origin = 0usize;
    while zeros_at_origin + 1 < cs.len() && cs[zeros_at_origin].norm() == F::zero() {
        zeros_at_origin += 1;
    }
    let cs = &cs[zeros_at_origin..];
    let degree = cs.len() - 1;

    let mut roots: Vec<Complex<F>> =
        vec![Complex::new(F::zero(), F::zero()); zeros_at_origin];
    match degree {
        0 => {}
        1 => roots.push(-cs[0] / cs[1]),
        2 => {
            let (r1, r2) = quadratic_roots(cs[2], cs[1], cs[0]);
            roots.push(r1);
            roots.push(r2);
        }
        _ => {
            let deriv = derivative_coeffs(cs);
            let mut solved = None;
            if let Some(h) = hint {
                if h.len() >= degree {
                    let mut guesses: Vec<Complex<F>> = h[..degree].to_vec();
                    if aberth_iterate(cs, &deriv, &mut guesses, eps, 60) {
                        solved = Some(guesses);
                    }
                }
            }
            let mut restart = 0;
            while solved.is_none() && restart < RESTARTS {
                let mut guesses = initial_guesses(cs, restart, seed);
                if aberth_iterate(cs, &deriv, &mut guesses, eps, MAX_ITER) {
                    solved = Some(guesses);
                }
                restart += 1;
            }
            let found = solved.ok_or(Error::NonConvergence {
                degree,
                restarts: RESTARTS,
            })?;
            roots.extend(found.into_iter().map(|r| newton_polish(cs, &deriv, r)));
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly_from_roots(roots: &[Complex64]) -> Vec<Complex64> {
        let mut cs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); cs.len() + 1];
            for (i, a) in cs.iter().enumerate() {
                next[i + 1] += *a;
                next[i] -= *a * *r;
            }
            cs = next;
        }
        cs
    }

    #[test]
    fn quadratic_cancellation_free() {
        // x^2 - (1e8 + 1e-8)x + 1: roots 1e8 and 1e-8.
        let (r1, r2) = quadratic_roots(c(1.0, 0.0), c(-(1e8 + 1e-8), 0.0), c(1.0, 0.0));
        let (small, big) = if r1.norm() < r2.norm() { (r1, r2) } else { (r2, r1) };
        assert!((big.re - 1e8).abs() / 1e8 < 1e-14);
        assert!((small.re - 1e-8).abs() / 1e-8 < 1e-14);
    }

    #[test]
    fn recovers_scattered_roots() {
        let truth = vec![c(1.0, 0.0), c(-2.0, 0.5), c(0.0, -3.0), c(4.0, 4.0), c(0.25, 0.0)];
        let cs = poly_from_roots(&truth);
        let mut got = all_roots(&cs, 1e-13, 0, None).unwrap();
        for t in &truth {
            let (i, _) = got
                .iter()
                .enumerate()
                .min_by(|a, b| (a.1 - t).norm().partial_cmp(&(b.1 - t).norm()).unwrap())
                .unwrap();
            assert!((got[i] - t).norm() < 1e-9, "missing root {t}");
            got.remove(i);
        }
    }

    #[test]
    fn double_root_cluster() {
        // (x-1)^2 (x+2)
        let cs = poly_from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]);
        let got = all_roots(&cs, 1e-13, 0, None).unwrap();
        let near_one = got.iter().filter(|r| (*r - c(1.0, 0.0)).norm() < 1e-5).count();
        assert_eq!(near_one, 2);
    }

    #[test]
    fn origin_roots_exact() {
        // z^3 - z^2 = z^2 (z - 1)
        let cs = vec![c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)];
        let got = all_roots(&cs, 1e-13, 0, None).unwrap();
        assert_eq!(got.iter().filter(|r| r.norm() == 0.0).count(), 2);
    }
}
