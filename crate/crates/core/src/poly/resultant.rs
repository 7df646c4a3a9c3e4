//! Resultants of polynomials in an elimination variable `w` whose
//! coefficients are themselves polynomials, computed by evaluation and
//! interpolation: sample the coefficient polynomials, take Sylvester
//! determinants over the scalar field, interpolate the results.

use crate::poly::generic::Poly;
use crate::scalar::Coeff;

/// Determinant of the Sylvester matrix of two scalar coefficient vectors,
/// taken with the fixed symbolic degrees `a.len()-1` and `b.len()-1`
/// (leading entries may evaluate to zero; the symbolic degree structure is
/// what makes specialization commute with the determinant).
pub fn sylvester_det<K: Coeff>(a: &[K], b: &[K]) -> K {
    let n = a.len() - 1;
    let m = b.len() - 1;
    if n == 0 && m == 0 {
        return K::one();
    }
    if n == 0 {
        return num_traits::pow::pow(a[0].clone(), m);
    }
    if m == 0 {
        return num_traits::pow::pow(b[0].clone(), n);
    }
    let size = n + m;
    let mut mat = vec![vec![K::zero(); size]; size];
    for row in 0..m {
        for (k, c) in a.iter().enumerate() {
            mat[row][row + n - k] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in b.iter().enumerate() {
            mat[m + row][row + m - k] = c.clone();
        }
    }
    determinant(mat)
}

fn determinant<K: Coeff>(mut mat: Vec<Vec<K>>) -> K {
    let size = mat.len();
    let mut det = K::one();
    for col in 0..size {
        let pivot_row = if K::EXACT {
            (col..size).find(|&r| !mat[r][col].is_zero())
        } else {
            (col..size)
                .filter(|&r| mat[r][col].magnitude() > 0.0)
                .max_by(|&r, &s| {
                    mat[r][col]
                        .magnitude()
                        .partial_cmp(&mat[s][col].magnitude())
                        .unwrap()
                })
        };
        let Some(pr) = pivot_row else {
            return K::zero();
        };
        if pr != col {
            mat.swap(pr, col);
            det = -det;
        }
        let pivot = mat[col][col].clone();
        det = det * pivot.clone();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() / pivot.clone();
            for c in col..size {
                let sub = factor.clone() * mat[col][c].clone();
                mat[r][c] = mat[r][c].clone() - sub;
            }
        }
    }
    det
}

/// Newton interpolation through (nodes[i], values[i]); nodes must be
/// pairwise distinct.
pub fn interpolate<K: Coeff>(nodes: &[K], values: &[K]) -> Poly<K> {
    assert_eq!(nodes.len(), values.len());
    let n = nodes.len();
    let mut dd: Vec<K> = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let denom = nodes[i].clone() - nodes[i - j].clone();
            dd[i] = (dd[i].clone() - dd[i - 1].clone()) / denom;
        }
    }
    let mut poly = Poly::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let linear = Poly::new(vec![-nodes[i].clone(), K::one()]);
        poly = &(&poly * &linear) + &Poly::constant(dd[i].clone());
    }
    poly
}

/// Res_w(A, B) as a polynomial in z, where `a` and `b` list the
/// w-coefficients of A and B (ascending in w), each a polynomial in z.
/// Sampled at `(deg_w A + deg_w B) * max coefficient degree + 2` plus one
/// nodes, then interpolated. May return the zero polynomial; callers decide
/// whether that is an error.
pub fn resultant_w<K: Coeff>(a: &[Poly<K>], b: &[Poly<K>]) -> Poly<K> {
    let n = a.len() - 1;
    let m = b.len() - 1;
    let max_deg = a
        .iter()
        .chain(b.iter())
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let d_bound = (n + m) * max_deg + 2;
    let nodes = K::interp_nodes(d_bound + 1);
    let values: Vec<K> = nodes
        .iter()
        .map(|z| {
            let av: Vec<K> = a.iter().map(|p| p.eval(z)).collect();
            let bv: Vec<K> = b.iter().map(|p| p.eval(z)).collect();
            sylvester_det(&av, &bv)
        })
        .collect();
    interpolate(&nodes, &values)
}

/// Res_w(A, B) where A's w-coefficients are polynomials in an auxiliary
/// variable v and B's are polynomials in z. Returns the result organized by
/// powers of v: out[l] is the polynomial in z multiplying v^l.
pub fn resultant_w_mixed<K: Coeff>(a_in_v: &[Poly<K>], b_in_z: &[Poly<K>]) -> Vec<Poly<K>> {
    let n = a_in_v.len() - 1;
    let m = b_in_z.len() - 1;
    let dv = a_in_v.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let dz = b_in_z.iter().filter_map(|p| p.degree()).max().unwrap_or(0);
    let v_bound = m * dv + 2;
    let z_bound = n * dz + 2;
    let v_nodes = K::interp_nodes(v_bound + 1);
    let z_nodes = K::interp_nodes(z_bound + 1);

    // For each v node, a univariate resultant in z.
    let per_v: Vec<Poly<K>> = v_nodes
        .iter()
        .map(|v| {
            let av: Vec<K> = a_in_v.iter().map(|p| p.eval(v)).collect();
            let values: Vec<K> = z_nodes
                .iter()
                .map(|z| {
                    let bv: Vec<K> = b_in_z.iter().map(|p| p.eval(z)).collect();
                    sylvester_det(&av, &bv)
                })
                .collect();
            interpolate(&z_nodes, &values)
        })
        .collect();

    // Interpolate each z-coefficient across the v nodes.
    let z_len = per_v.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
    let mut out: Vec<Vec<K>> = Vec::new(); // out[l][k]: v^l z^k
    for k in 0..z_len {
        let vals: Vec<K> = per_v.iter().map(|p| p.coeff(k)).collect();
        let in_v = interpolate(&v_nodes, &vals);
        for (l, c) in in_v.coeffs().iter().enumerate() {
            while out.len() <= l {
                out.push(vec![K::zero(); z_len]);
            }
            out[l][k] = c.clone();
        }
    }
    out.into_iter().map(Poly::new).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::GaussianRational;
    use num_complex::Complex64;

    type PE = Poly<GaussianRational>;

    fn gq(n: i64) -> GaussianRational {
        GaussianRational::from_i64(n)
    }

    #[test]
    fn linear_resultant_is_difference() {
        // Res_w(w - a, w - b) = a - b up to sign; here a = z, b = 3.
        let a = vec![PE::from_i64_coeffs(&[0, -1]), PE::one()];
        let b = vec![PE::from_i64_coeffs(&[-3]), PE::one()];
        let r = resultant_w(&a, &b);
        // (z - 3) or (3 - z)
        let expect = PE::from_i64_coeffs(&[-3, 1]);
        assert!(r == expect || r == -&expect, "got {r}");
    }

    #[test]
    fn common_root_detection() {
        // A = w^2 - z, B = w - z: common root iff z^2 = z, Res = z^2 - z (up to sign)
        let a = vec![PE::from_i64_coeffs(&[0, -1]), PE::zero(), PE::one()];
        let b = vec![PE::from_i64_coeffs(&[0, -1]), PE::one()];
        let r = resultant_w(&a, &b);
        let expect = PE::from_i64_coeffs(&[0, -1, 1]);
        assert!(r == expect || r == -&expect, "got {r}");
    }

    #[test]
    fn float_matches_exact() {
        // A = w^2 + (z+1)w + z^2, B = 2w^2 + zw - 3
        let ae = vec![
            PE::from_i64_coeffs(&[0, 0, 1]),
            PE::from_i64_coeffs(&[1, 1]),
            PE::one(),
        ];
        let be = vec![
            PE::from_i64_coeffs(&[-3]),
            PE::from_i64_coeffs(&[0, 1]),
            PE::from_i64_coeffs(&[2]),
        ];
        let re = resultant_w(&ae, &be);

        let to_f = |p: &PE| {
            Poly::<Complex64>::new(p.coeffs().iter().map(|c| c.to_c64()).collect())
        };
        let af: Vec<_> = ae.iter().map(to_f).collect();
        let bf: Vec<_> = be.iter().map(to_f).collect();
        let raw = resultant_w(&af, &bf);
        let rf = raw.trim_below(1e-9 * raw.max_coeff_magnitude());

        assert_eq!(re.degree(), rf.degree());
        let scale = rf.max_coeff_magnitude();
        for (k, c) in re.coeffs().iter().enumerate() {
            assert!(
                (c.to_c64() - rf.coeff(k)).norm() <= 1e-9 * scale,
                "coefficient {k} mismatch"
            );
        }
    }
}
