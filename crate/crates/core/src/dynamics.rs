//! Two-valued dynamics T(z) = -p1(z) +/- sqrt(p1(z)^2 - p0(z)), i.e. the
//! root pair of the monic family P_z(w) = w^2 + 2 p1(z) w + p0(z).
//! Construction, evaluation, composition into the quartic family of
//! T(T(z)), degeneracy analysis, preimage counting, and normal forms.

use crate::error::{Error, Result};
use crate::multiset::CMultiset;
use crate::poly::{
    generic::Poly, parse_complex, resultant, resultant_w_allow_zero, roots::all_roots,
    roots::quadratic_roots, BiPoly, CValue, ComplexPoly, FloatPoly, RootList,
};
use crate::rational::{rational_reconstruct, GaussianRational};
use crate::sampling::sample_points;
use crate::scalar::Coeff;
use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

/// The pair (p1, p0) defining a dynamics in P_2(C).
#[derive(Clone, Debug)]
pub struct QuadDynamics {
    p1: ComplexPoly,
    p0: ComplexPoly,
    // Cached floating views; evaluation runs millions of times per trace.
    p1f: FloatPoly,
    p0f: FloatPoly,
}

impl QuadDynamics {
    pub fn new(p1: ComplexPoly, p0: ComplexPoly) -> Self {
        let p1f = p1.to_float();
        let p0f = p0.to_float();
        QuadDynamics { p1, p0, p1f, p0f }
    }

    pub fn parse(p1: &str, p0: &str) -> Result<Self> {
        Ok(QuadDynamics::new(ComplexPoly::parse(p1)?, ComplexPoly::parse(p0)?))
    }

    pub fn p1(&self) -> &ComplexPoly {
        &self.p1
    }

    pub fn p0(&self) -> &ComplexPoly {
        &self.p0
    }

    pub fn is_exact(&self) -> bool {
        self.p1.exactness() && self.p0.exactness()
    }

    /// p1^2 - p0, the expression under the radical.
    pub fn discriminant(&self) -> ComplexPoly {
        self.p1.mul(&self.p1).sub(&self.p0)
    }

    /// The defining family as a polynomial in w with coefficients in z.
    pub fn defining_family(&self) -> BiPoly {
        let two = parse_complex("2").unwrap();
        BiPoly::new(vec![self.p0.clone(), self.p1.scale(&two), ComplexPoly::one()])
    }

    /// The two images of z, cancellation free.
    pub fn eval_t(&self, z: Complex64) -> CMultiset {
        let b = self.p1f.eval(&z);
        let c = self.p0f.eval(&z);
        let (w1, w2) = quadratic_roots(Complex64::new(1.0, 0.0), b + b, c);
        CMultiset::new(vec![w1, w2])
    }

    /// T(T(z)) by direct two-step evaluation.
    pub fn eval_t_twice(&self, z: Complex64) -> CMultiset {
        let first = self.eval_t(z);
        let a = self.eval_t(first.values()[0]);
        let b = self.eval_t(first.values()[1]);
        a.concat(&b)
    }

    /// Eliminates w from {v^2 + 2 p1(w) v + p0(w), w^2 + 2 p1(z) w + p0(z)}
    /// by a resultant, yielding the monic quartic family whose roots at z
    /// form the multiset T(T(z)).
    pub fn compose(&self) -> Result<QuarticFamily> {
        if self.is_exact() {
            let p1 = self.p1.as_exact().unwrap();
            let p0 = self.p0.as_exact().unwrap();
            let rows = quartic_rows(p1, p0);
            let q = normalize_monic_quartic(rows)?;
            Ok(QuarticFamily::new(q.map(ComplexPoly::from_exact)))
        } else {
            let rows = quartic_rows(&self.p1f, &self.p0f);
            let trim = 1e-9
                * rows
                    .iter()
                    .map(|r| r.max_coeff_magnitude())
                    .fold(0.0, f64::max);
            let rows: Vec<FloatPoly> = rows.into_iter().map(|r| r.trim_below(trim)).collect();
            let q = normalize_monic_quartic(rows)?;
            Ok(QuarticFamily::new(q.map(ComplexPoly::from_float)))
        }
    }

    /// Degeneracy analysis: does the dynamics split into two single-valued
    /// polynomial maps, and does T(T(z)) generically take four distinct
    /// values?
    pub fn degeneracy(&self, seed: u64) -> Result<DegeneracyReport> {
        let (splits, _) = self.discriminant().is_perfect_square(1e-8, seed);
        let quartic = self.compose()?;
        let p = quartic.as_bipoly();
        let dp = quartic.derivative_bipoly();
        let disc_res = resultant_w_allow_zero(&p, &dp)?;
        let has_generic_four_distinct = !disc_res.is_zero();
        let exceptional_points = if has_generic_four_distinct && disc_res.degree() != Some(0) {
            disc_res.roots(seed)?
        } else {
            RootList { roots: vec![] }
        };
        Ok(DegeneracyReport {
            splits_into_single_valued: splits,
            has_generic_four_distinct,
            discriminant_resultant: disc_res,
            exceptional_points,
        })
    }

    /// Solutions z of w^2 + 2 p1(z) w + p0(z) = 0 together with the edge
    /// multiplicity of each: the multiplicity of w as a root of P_z(w)
    /// (1 or 2), independent of the multiplicity of z itself.
    pub fn preimages(&self, w: &CValue, seed: u64) -> Result<Vec<(Complex64, usize)>> {
        let two_w = CValue {
            approx: 2.0 * w.approx,
            exact: w.exact.clone().map(|e| e.clone() + e),
        };
        let w_sq = CValue {
            approx: w.approx * w.approx,
            exact: w.exact.clone().map(|e| &e * &e),
        };
        let q_w = self
            .p0
            .add(&self.p1.scale(&two_w))
            .add(&ComplexPoly::constant(&w_sq));
        if q_w.is_zero() {
            return Err(Error::IdenticallyZero);
        }
        if q_w.degree() == Some(0) {
            return Ok(vec![]);
        }
        let zs = q_w.roots(seed)?;
        let mut out = Vec::new();
        for (z, _) in zs.roots {
            let p1z = self.p1f.eval(&z);
            // P_z'(w) = 2w + 2 p1(z); w is a double image iff this vanishes.
            let crit = w.approx + p1z;
            let tol = 1e-7 * (1.0 + w.approx.norm() + p1z.norm());
            let edge = if crit.norm() <= tol { 2 } else { 1 };
            out.push((z, edge));
        }
        Ok(out)
    }

    /// Samples preimage counts over a grid of target values; strongly
    /// invertible dynamics have total edge multiplicity exactly 2
    /// everywhere.
    pub fn strong_invertibility_probe(&self, grid: &[Complex64], seed: u64) -> InvertibilityReport {
        let mut points = Vec::with_capacity(grid.len());
        let mut violations = Vec::new();
        for &w in grid {
            let wv = CValue { approx: w, exact: None };
            match self.preimages(&wv, seed) {
                Ok(pre) => {
                    let total: usize = pre.iter().map(|(_, m)| m).sum();
                    if total != 2 {
                        violations.push(InvertibilityViolation {
                            target: w,
                            total_edge_multiplicity: total,
                            preimages: pre.clone(),
                        });
                    }
                    points.push(InvertibilityPoint {
                        target: w,
                        total_edge_multiplicity: total,
                        preimages: pre,
                    });
                }
                Err(Error::IdenticallyZero) => {
                    violations.push(InvertibilityViolation {
                        target: w,
                        total_edge_multiplicity: usize::MAX,
                        preimages: vec![],
                    });
                    points.push(InvertibilityPoint {
                        target: w,
                        total_edge_multiplicity: usize::MAX,
                        preimages: vec![],
                    });
                }
                Err(_) => {
                    violations.push(InvertibilityViolation {
                        target: w,
                        total_edge_multiplicity: 0,
                        preimages: vec![],
                    });
                    points.push(InvertibilityPoint {
                        target: w,
                        total_edge_multiplicity: 0,
                        preimages: vec![],
                    });
                }
            }
        }
        InvertibilityReport {
            strongly_invertible_on_grid: violations.is_empty(),
            grid_size: grid.len(),
            points,
            violations,
        }
    }

    /// When p0 = s^2, the dynamics is (sqrt(alpha) +/- sqrt(beta))^2 with
    /// alpha = (-p1 - s)/2 and beta = (-p1 + s)/2; verified by sampling.
    pub fn sqrt_square_form(&self, seed: u64) -> Result<(ComplexPoly, ComplexPoly)> {
        let (ok, witness) = self.p0.is_perfect_square(1e-8, seed);
        if !ok {
            return Err(Error::NotPerfectSquare);
        }
        let s = witness.unwrap();
        let half = parse_complex("1/2").unwrap();
        let alpha = self.p1.neg().sub(&s).scale(&half);
        let beta = self.p1.neg().add(&s).scale(&half);
        let alpha_f = alpha.to_float();
        let beta_f = beta.to_float();
        for z in sample_points(seed ^ 0x5f5f, 20, 5.0) {
            let sa = alpha_f.eval(&z).sqrt();
            let sb = beta_f.eval(&z).sqrt();
            let plus = (sa + sb) * (sa + sb);
            let minus = (sa - sb) * (sa - sb);
            let form = CMultiset::new(vec![plus, minus]);
            let direct = self.eval_t(z);
            let tol = form.default_tol(&direct);
            if form.matches(&direct, tol)?.is_none() {
                return Err(Error::PreconditionFailed(format!(
                    "sqrt-square form failed verification at z = {z}"
                )));
            }
        }
        Ok((alpha, beta))
    }

    /// Conjugates by z -> z + a so that the discriminant of the result has
    /// a root of odd multiplicity at 0: T~(z) = T(z + a) - a. Among the
    /// odd-multiplicity roots, the one of smallest magnitude (ties broken
    /// by argument) is moved to the origin.
    pub fn shift_normalize(&self, seed: u64) -> Result<(QuadDynamics, CValue)> {
        let disc = self.discriminant();
        if disc.is_perfect_square(1e-8, seed).0 {
            return Err(Error::PreconditionFailed(
                "discriminant is a perfect square; the dynamics splits into single-valued maps"
                    .into(),
            ));
        }
        let odd = disc.odd_multiplicity_roots(seed)?;
        let root = odd
            .roots
            .iter()
            .map(|(r, _)| *r)
            .min_by(|a, b| {
                (a.norm(), a.arg())
                    .partial_cmp(&(b.norm(), b.arg()))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .ok_or(Error::NoOddRoot)?;
        let a = self.snap_shift(&disc, root);
        Ok((self.conjugate_by_shift(&a), a))
    }

    /// T~ = sigma^-1 T sigma with sigma(z) = z + a:
    /// p1~(z) = p1(z+a) + a, p0~(z) = p0(z+a) + 2a p1(z+a) + a^2.
    pub fn conjugate_by_shift(&self, a: &CValue) -> QuadDynamics {
        let two_a = CValue {
            approx: 2.0 * a.approx,
            exact: a.exact.clone().map(|e| e.clone() + e),
        };
        let a_sq = CValue {
            approx: a.approx * a.approx,
            exact: a.exact.clone().map(|e| &e * &e),
        };
        let p1_shifted = self.p1.shift(a);
        let p1_new = p1_shifted.add(&ComplexPoly::constant(a));
        let p0_new = self
            .p0
            .shift(a)
            .add(&p1_shifted.scale(&two_a))
            .add(&ComplexPoly::constant(&a_sq));
        QuadDynamics::new(p1_new, p0_new)
    }

    /// Recognize a floating root as a small Gaussian rational when the
    /// dynamics is exact, so conjugation keeps exact coefficients.
    fn snap_shift(&self, disc: &ComplexPoly, root: Complex64) -> CValue {
        let float = CValue { approx: root, exact: None };
        if !self.is_exact() {
            return float;
        }
        let tol = 1e-9 * (1.0 + root.norm());
        let (Some(re), Some(im)) = (
            rational_reconstruct(root.re, 1 << 20, tol),
            rational_reconstruct(root.im, 1 << 20, tol),
        ) else {
            return float;
        };
        let cand = GaussianRational::new(re, im);
        match disc.eval_exact(&cand) {
            Some(v) if v.is_zero() => CValue {
                approx: cand.to_c64(),
                exact: Some(cand),
            },
            _ => float,
        }
    }
}

/// w-coefficients (ascending) of the two resultant inputs, mixed variables:
/// A's coefficients are polynomials in v, B's in z.
fn quartic_rows<K: Coeff>(p1: &Poly<K>, p0: &Poly<K>) -> Vec<Poly<K>> {
    let deg_w = p1
        .degree()
        .unwrap_or(0)
        .max(p0.degree().unwrap_or(0));
    let two = K::from_i64(2);
    let a_in_v: Vec<Poly<K>> = (0..=deg_w)
        .map(|k| {
            let mut cs = vec![p0.coeff(k), two.clone() * p1.coeff(k)];
            if k == 0 {
                cs.push(K::one());
            }
            Poly::new(cs)
        })
        .collect();
    let b_in_z: Vec<Poly<K>> = vec![p0.clone(), p1.scale(&two), Poly::one()];
    resultant::resultant_w_mixed(&a_in_v, &b_in_z)
}

/// The resultant rows are coefficients of v^0..v^4; the top one must be a
/// nonzero constant (B is monic in w, A monic in v), which normalizes the
/// quartic monic.
fn normalize_monic_quartic<K: Coeff>(rows: Vec<Poly<K>>) -> Result<[Poly<K>; 4]> {
    if rows.len() != 5 || rows.iter().all(|r| r.is_zero()) {
        return Err(Error::DegenerateFamily(format!(
            "composite family has v-degree {} instead of 4",
            rows.len().saturating_sub(1)
        )));
    }
    let lead = &rows[4];
    if lead.degree() != Some(0) {
        return Err(Error::DegenerateFamily(
            "leading v-coefficient of the composite family is not constant".into(),
        ));
    }
    let inv = K::one() / lead.coeff(0);
    let mut it = rows.into_iter().map(|r| r.scale(&inv));
    Ok([
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ])
}

/// Monic quartic family v^4 + q3(z) v^3 + q2(z) v^2 + q1(z) v + q0(z).
#[derive(Clone, Debug)]
pub struct QuarticFamily {
    q: [ComplexPoly; 4],
    qf: [FloatPoly; 4],
}

impl QuarticFamily {
    pub fn new(q: [ComplexPoly; 4]) -> Self {
        let qf = [
            q[0].to_float(),
            q[1].to_float(),
            q[2].to_float(),
            q[3].to_float(),
        ];
        QuarticFamily { q, qf }
    }

    /// q0..q3, ascending.
    pub fn coefficients(&self) -> &[ComplexPoly; 4] {
        &self.q
    }

    /// The four roots at z; `hint` warm-starts the solver.
    pub fn roots_at(&self, z: Complex64, seed: u64, hint: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
        let coeffs = [
            self.qf[0].eval(&z),
            self.qf[1].eval(&z),
            self.qf[2].eval(&z),
            self.qf[3].eval(&z),
            Complex64::new(1.0, 0.0),
        ];
        all_roots(&coeffs, 1e-13, seed, hint)
    }

    /// The four roots at z as a multiset: nearly coincident roots are
    /// clustered and re-polished on the matching derivative, which restores
    /// full accuracy for the repeated images a composite family can carry.
    pub fn multiset_at(&self, z: Complex64, seed: u64) -> Result<CMultiset> {
        let raw = self.roots_at(z, seed, None)?;
        let coeffs = [
            self.qf[0].eval(&z),
            self.qf[1].eval(&z),
            self.qf[2].eval(&z),
            self.qf[3].eval(&z),
            Complex64::new(1.0, 0.0),
        ];
        let mut clusters = crate::poly::cluster_roots(&raw);
        crate::poly::roots::polish_clusters(&coeffs, &mut clusters);
        let expanded: Vec<Complex64> = clusters
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat(r).take(m))
            .collect();
        Ok(CMultiset::new(expanded))
    }

    /// The family as a polynomial in v with ComplexPoly coefficients.
    pub fn as_bipoly(&self) -> BiPoly {
        BiPoly::new(vec![
            self.q[0].clone(),
            self.q[1].clone(),
            self.q[2].clone(),
            self.q[3].clone(),
            ComplexPoly::one(),
        ])
    }

    /// d/dv of the family.
    pub fn derivative_bipoly(&self) -> BiPoly {
        let scale_i = |p: &ComplexPoly, k: i64| p.scale(&parse_complex(&k.to_string()).unwrap());
        BiPoly::new(vec![
            self.q[1].clone(),
            scale_i(&self.q[2], 2),
            scale_i(&self.q[3], 3),
            ComplexPoly::from_i64_coeffs(&[4]),
        ])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegeneracyReport {
    pub splits_into_single_valued: bool,
    pub has_generic_four_distinct: bool,
    #[serde(serialize_with = "crate::ser::poly")]
    pub discriminant_resultant: ComplexPoly,
    #[serde(serialize_with = "crate::ser::roots")]
    pub exceptional_points: RootList,
}

impl DegeneracyReport {
    /// Non-degenerate in the checkable sense: not a union of two
    /// single-valued maps, and the composite generically takes four
    /// distinct values.
    pub fn is_non_degenerate(&self) -> bool {
        !self.splits_into_single_valued && self.has_generic_four_distinct
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvertibilityPoint {
    #[serde(serialize_with = "crate::ser::c64")]
    pub target: Complex64,
    pub total_edge_multiplicity: usize,
    #[serde(serialize_with = "serialize_preimages")]
    pub preimages: Vec<(Complex64, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvertibilityViolation {
    #[serde(serialize_with = "crate::ser::c64")]
    pub target: Complex64,
    pub total_edge_multiplicity: usize,
    #[serde(serialize_with = "serialize_preimages")]
    pub preimages: Vec<(Complex64, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvertibilityReport {
    pub strongly_invertible_on_grid: bool,
    pub grid_size: usize,
    pub points: Vec<InvertibilityPoint>,
    pub violations: Vec<InvertibilityViolation>,
}

fn serialize_preimages<S: serde::Serializer>(
    v: &Vec<(Complex64, usize)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for (z, m) in v {
        seq.serialize_element(&(crate::poly::fmt_c64(*z), *m))?;
    }
    seq.end()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::grid_points;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// T(z) = (1 +/- sqrt(z))^2: p1 = -(z+1), p0 = (z-1)^2.
    fn bn_like() -> QuadDynamics {
        QuadDynamics::parse("-1,-1", "1,-2,1").unwrap()
    }

    /// T(z) = -z +/- sqrt(z): p1 = z, p0 = z^2 - z.
    fn obstruction() -> QuadDynamics {
        QuadDynamics::parse("0,1", "0,-1,1").unwrap()
    }

    fn assert_multiset(got: &CMultiset, want: &[Complex64], tol: f64) {
        let want = CMultiset::new(want.to_vec());
        assert!(
            got.matches(&want, tol).unwrap().is_some(),
            "got {got}, want {want}"
        );
    }

    #[test]
    fn eval_t_examples() {
        let t = bn_like();
        assert_multiset(&t.eval_t(c(0.0, 0.0)), &[c(1.0, 0.0), c(1.0, 0.0)], 1e-12);
        assert_multiset(&t.eval_t(c(9.0, 0.0)), &[c(16.0, 0.0), c(4.0, 0.0)], 1e-12);

        let t = obstruction();
        assert_multiset(&t.eval_t(c(1.0, 0.0)), &[c(0.0, 0.0), c(-2.0, 0.0)], 1e-12);
    }

    #[test]
    fn vieta_consistency() {
        for dyn_ in [bn_like(), obstruction()] {
            for z in sample_points(7, 100, 10.0) {
                let pair = dyn_.eval_t(z);
                let sum = pair.values()[0] + pair.values()[1];
                let prod = pair.values()[0] * pair.values()[1];
                let scale = 1.0 + pair.values()[0].norm().max(pair.values()[1].norm());
                assert!((sum + 2.0 * dyn_.p1().eval(z)).norm() <= 1e-8 * scale);
                assert!((prod - dyn_.p0().eval(z)).norm() <= 1e-8 * scale * scale);
            }
        }
    }

    #[test]
    fn compose_keeps_exactness() {
        let q = bn_like().compose().unwrap();
        assert!(q.coefficients().iter().all(|p| p.exactness()));
    }

    #[test]
    fn compose_examples() {
        let q = bn_like().compose().unwrap();
        let at9 = q.multiset_at(c(9.0, 0.0), 0).unwrap();
        assert_multiset(
            &at9,
            &[c(9.0, 0.0), c(9.0, 0.0), c(25.0, 0.0), c(1.0, 0.0)],
            1e-8,
        );
        let at0 = q.multiset_at(c(0.0, 0.0), 0).unwrap();
        assert_multiset(
            &at0,
            &[c(0.0, 0.0), c(0.0, 0.0), c(4.0, 0.0), c(4.0, 0.0)],
            1e-8,
        );
    }

    #[test]
    fn compose_matches_two_step_evaluation() {
        for dyn_ in [bn_like(), obstruction()] {
            let q = dyn_.compose().unwrap();
            for z in sample_points(11, 50, 4.0) {
                let direct = dyn_.eval_t_twice(z);
                let family = q.multiset_at(z, 0).unwrap();
                let d = family.distance(&direct).unwrap();
                assert!(d <= 1e-7, "mismatch at {z}: {d}");
            }
        }
    }

    #[test]
    fn degeneracy_of_constant_pair() {
        // T = +/-1: p1 = 0, p0 = -1; discriminant 1 is a perfect square.
        let t = QuadDynamics::parse("0", "-1").unwrap();
        let rep = t.degeneracy(0).unwrap();
        assert!(rep.splits_into_single_valued);
    }

    #[test]
    fn degeneracy_of_obstruction_dynamics() {
        let rep = obstruction().degeneracy(0).unwrap();
        assert!(!rep.splits_into_single_valued);
        assert!(rep.has_generic_four_distinct);
        assert!(rep.is_non_degenerate());
    }

    #[test]
    fn bn_like_composite_always_has_repeats() {
        // T(T(z)) = [z, z, (2 +/- sqrt z)^2]: the resultant of the quartic
        // with its derivative vanishes identically.
        let rep = bn_like().degeneracy(0).unwrap();
        assert!(!rep.splits_into_single_valued);
        assert!(!rep.has_generic_four_distinct);
        assert!(rep.discriminant_resultant.is_zero());
    }

    #[test]
    fn preimage_examples() {
        let t = bn_like();
        let at0 = t.preimages(&parse_complex("0").unwrap(), 0).unwrap();
        assert_eq!(at0.len(), 1);
        assert!((at0[0].0 - c(1.0, 0.0)).norm() < 1e-9);
        assert_eq!(at0[0].1, 1);

        let at4 = t.preimages(&parse_complex("4").unwrap(), 0).unwrap();
        let total: usize = at4.iter().map(|(_, m)| m).sum();
        assert_eq!(at4.len(), 2);
        assert_eq!(total, 2);
    }

    #[test]
    fn preimage_eval_duality() {
        let t = obstruction();
        for z in sample_points(3, 50, 3.0) {
            for &w in t.eval_t(z).values() {
                let pre = t
                    .preimages(&CValue { approx: w, exact: None }, 0)
                    .unwrap();
                assert!(
                    pre.iter().any(|(p, _)| (p - z).norm() < 1e-6 * (1.0 + z.norm())),
                    "z = {z} missing among preimages of {w}"
                );
            }
        }
    }

    #[test]
    fn invertibility_probes() {
        let grid = grid_points(-2.0, 2.0, -2.0, 2.0, 10, 10);
        // Corollary-class dynamics: p1 linear, p0 quadratic with distinct roots.
        let rep = obstruction().strong_invertibility_probe(&grid, 0);
        assert!(rep.strongly_invertible_on_grid, "{:?}", rep.violations.first());

        // The (1 +/- sqrt z)^2 dynamics fails exactly at w = 0.
        let mut grid = grid.clone();
        grid.push(c(0.0, 0.0));
        let rep = bn_like().strong_invertibility_probe(&grid, 0);
        assert!(!rep.strongly_invertible_on_grid);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].target, c(0.0, 0.0));
        assert_eq!(rep.violations[0].total_edge_multiplicity, 1);

        assert!(bn_like().strong_invertibility_probe(&[], 0).strongly_invertible_on_grid);
    }

    #[test]
    fn sqrt_square_form_examples() {
        let (alpha, beta) = bn_like().sqrt_square_form(0).unwrap();
        let mut reprs = vec![alpha.to_string(), beta.to_string()];
        reprs.sort();
        assert_eq!(reprs, vec!["0,1".to_string(), "1".to_string()]);

        assert!(matches!(
            obstruction().sqrt_square_form(0),
            Err(Error::NotPerfectSquare)
        ));

        // p1 = -(z+4), p0 = (z-4)^2 is (2 +/- sqrt z)^2.
        let t = QuadDynamics::parse("-4,-1", "16,-8,1").unwrap();
        let (alpha, beta) = t.sqrt_square_form(0).unwrap();
        let mut reprs = vec![alpha.to_string(), beta.to_string()];
        reprs.sort();
        assert_eq!(reprs, vec!["0,1".to_string(), "4".to_string()]);
    }

    #[test]
    fn shift_normalize_identity_when_origin_already_odd() {
        let (shifted, a) = obstruction().shift_normalize(0).unwrap();
        assert_eq!(a.approx, c(0.0, 0.0));
        assert_eq!(shifted.p1().to_string(), "0,1");
        assert_eq!(shifted.p0().to_string(), "0,-1,1");
    }

    #[test]
    fn shift_normalize_moves_odd_root_to_origin() {
        // p1 = z, p0 = z^2 - z + 1: discriminant z - 1.
        let t = QuadDynamics::parse("0,1", "1,-1,1").unwrap();
        let (shifted, a) = t.shift_normalize(0).unwrap();
        assert!((a.approx - c(1.0, 0.0)).norm() < 1e-9);
        assert!(a.exact.is_some(), "exact dynamics should shift exactly");
        let disc = shifted.discriminant();
        assert!(disc.eval(c(0.0, 0.0)).norm() < 1e-12);

        // Conjugation identity: T~(z) = T(z + a) - a as multisets.
        for z in sample_points(23, 20, 3.0) {
            let lhs = shifted.eval_t(z);
            let rhs_vals: Vec<Complex64> =
                t.eval_t(z + a.approx).values().iter().map(|w| w - a.approx).collect();
            let rhs = CMultiset::new(rhs_vals);
            let tol = lhs.default_tol(&rhs);
            assert!(lhs.matches(&rhs, tol).unwrap().is_some());
        }
    }
}
