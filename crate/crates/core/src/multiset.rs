//! Unordered m-tuples of complex numbers with tolerance-based equality.
//! Equality is decided by bottleneck matching: the minimum over pairings
//! of the largest pairwise distance, so the worst pair is what is bounded.

use crate::error::{Error, Result};
use crate::poly::{fmt_c64, parse_complex};
use num_complex::Complex64;
use std::fmt;

/// An element of Sym^m(C).
#[derive(Clone, Debug)]
pub struct CMultiset {
    values: Vec<Complex64>,
}

impl CMultiset {
    pub fn new(values: Vec<Complex64>) -> Self {
        CMultiset { values }
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Values in a deterministic order (lexicographic by re, then im).
    pub fn sorted_values(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| {
            (a.re, a.im)
                .partial_cmp(&(b.re, b.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        v
    }

    /// Scale-aware default tolerance for comparing two multisets.
    pub fn default_tol(&self, other: &CMultiset) -> f64 {
        let max_mag = self
            .values
            .iter()
            .chain(other.values.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max);
        1e-8 * (1.0 + max_mag)
    }

    /// Multiset equality within `tol`; on success returns the witness
    /// pairing (self[i] is matched with other[pairing[i]]).
    pub fn matches(&self, other: &CMultiset, tol: f64) -> Result<Option<Vec<usize>>> {
        if self.m() != other.m() {
            return Err(Error::SizeMismatch {
                left: self.m(),
                right: other.m(),
            });
        }
        if self.m() == 0 {
            return Ok(Some(vec![]));
        }
        let (pairing, cost) = bottleneck_match(&self.values, &other.values);
        Ok(if cost <= tol { Some(pairing) } else { None })
    }

    /// Bottleneck distance to another multiset of the same size.
    pub fn distance(&self, other: &CMultiset) -> Result<f64> {
        if self.m() != other.m() {
            return Err(Error::SizeMismatch {
                left: self.m(),
                right: other.m(),
            });
        }
        if self.m() == 0 {
            return Ok(0.0);
        }
        Ok(bottleneck_match(&self.values, &other.values).1)
    }

    /// Multiset union.
    pub fn concat(&self, other: &CMultiset) -> CMultiset {
        let mut values = self.values.clone();
        values.extend_from_slice(&other.values);
        CMultiset::new(values)
    }

    /// |a - b| for a pair [a, b]: the distance to the diagonal locus.
    pub fn diagonal_distance(&self) -> Result<f64> {
        if self.m() != 2 {
            return Err(Error::SizeMismatch {
                left: self.m(),
                right: 2,
            });
        }
        Ok((self.values[0] - self.values[1]).norm())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("multiset must be bracketed: `{text}`")))?;
        if inner.trim().is_empty() {
            return Ok(CMultiset::new(vec![]));
        }
        let values: Result<Vec<Complex64>> = inner
            .split(',')
            .map(|part| parse_complex(part).map(|v| v.approx))
            .collect();
        Ok(CMultiset::new(values?))
    }
}

impl fmt::Display for CMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sorted_values().iter().map(|v| fmt_c64(*v)).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Minimum-bottleneck perfect matching between two equal-length point sets:
/// brute force over permutations for small sets, distance binary search
/// with augmenting-path feasibility checks beyond.
pub fn bottleneck_match(xs: &[Complex64], ys: &[Complex64]) -> (Vec<usize>, f64) {
    assert_eq!(xs.len(), ys.len());
    let m = xs.len();
    let dist = |i: usize, j: usize| (xs[i] - ys[j]).norm();
    if m <= 4 {
        let mut best: Option<(Vec<usize>, f64)> = None;
        permute(m, &mut |perm| {
            let cost = (0..m).map(|i| dist(i, perm[i])).fold(0.0, f64::max);
            if best.as_ref().map_or(true, |(_, c)| cost < *c) {
                best = Some((perm.to_vec(), cost));
            }
        });
        return best.unwrap();
    }

    let mut thresholds: Vec<f64> = (0..m)
        .flat_map(|i| (0..m).map(move |j| (i, j)))
        .map(|(i, j)| dist(i, j))
        .collect();
    thresholds.sort_by(|a, b| a.partial_cmp(b).unwrap());
    thresholds.dedup();
    let feasible = |d: f64| -> Option<Vec<usize>> {
        let mut match_of_y = vec![usize::MAX; m];
        for i in 0..m {
            let mut seen = vec![false; m];
            if !augment(i, d, &dist, &mut match_of_y, &mut seen, m) {
                return None;
            }
        }
        let mut pairing = vec![usize::MAX; m];
        for (j, &i) in match_of_y.iter().enumerate() {
            pairing[i] = j;
        }
        Some(pairing)
    };
    let (mut lo, mut hi) = (0usize, thresholds.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(thresholds[mid]).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    (feasible(thresholds[lo]).unwrap(), thresholds[lo])
}

fn augment(
    i: usize,
    d: f64,
    dist: &dyn Fn(usize, usize) -> f64,
    match_of_y: &mut [usize],
    seen: &mut [bool],
    m: usize,
) -> bool {
    for j in 0..m {
        if !seen[j] && dist(i, j) <= d {
            seen[j] = true;
            if match_of_y[j] == usize::MAX || {
                let prev = match_of_y[j];
                augment(prev, d, dist, match_of_y, seen, m)
            } {
                match_of_y[j] = i;
                return true;
            }
        }
    }
    false
}

fn permute(m: usize, visit: &mut dyn FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..m).collect();
    heaps(m, &mut perm, visit);
}

fn heaps(k: usize, perm: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(perm);
        return;
    }
    for i in 0..k {
        heaps(k - 1, perm, visit);
        if k % 2 == 0 {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(vals: &[(f64, f64)]) -> CMultiset {
        CMultiset::new(vals.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    #[test]
    fn permutation_invariance() {
        let a = ms(&[(1.0, 0.0), (9.0, 0.0)]);
        let b = ms(&[(9.0, 0.0), (1.0, 0.0)]);
        assert!(a.matches(&b, 1e-9).unwrap().is_some());
    }

    #[test]
    fn four_element_match() {
        let a = ms(&[(25.0, 0.0), (1.0, 0.0), (9.0, 0.0), (9.0, 0.0)]);
        let b = ms(&[(25.0, 0.0), (9.0, 0.0), (1.0, 0.0), (9.0, 0.0)]);
        let pairing = a.matches(&b, 1e-9).unwrap().unwrap();
        for (i, j) in pairing.iter().enumerate() {
            assert!((a.values()[i] - b.values()[*j]).norm() <= 1e-9);
        }
    }

    #[test]
    fn distance_exceeding_tol() {
        let a = ms(&[(0.0, 0.0), (0.0, 0.0)]);
        let b = ms(&[(0.0, 0.0), (1e-3, 0.0)]);
        assert!(a.matches(&b, 1e-9).unwrap().is_none());
        assert!((a.distance(&b).unwrap() - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let a = ms(&[(0.0, 0.0)]);
        let b = ms(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(matches!(a.matches(&b, 1.0), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn concat_and_diagonal() {
        let a = ms(&[(0.0, 0.0), (4.0, 0.0)]);
        let b = ms(&[(1.0, 0.0), (1.0, 0.0)]);
        let c = a.concat(&b);
        assert_eq!(c.m(), 4);
        assert_eq!(ms(&[]).concat(&ms(&[(5.0, 0.0)])).m(), 1);

        assert_eq!(b.diagonal_distance().unwrap(), 0.0);
        assert_eq!(a.diagonal_distance().unwrap(), 4.0);
        assert_eq!(ms(&[(1.0, 1.0), (1.0, -1.0)]).diagonal_distance().unwrap(), 2.0);
    }

    #[test]
    fn large_multiset_uses_matching_search() {
        let xs: Vec<(f64, f64)> = (0..7).map(|k| (k as f64, 0.5 * k as f64)).collect();
        let mut ys = xs.clone();
        ys.rotate_left(3);
        let a = ms(&xs);
        let b = ms(&ys);
        assert!(a.matches(&b, 1e-12).unwrap().is_some());
    }

    #[test]
    fn parse_display_roundtrip() {
        let a = CMultiset::parse("[1+2i, -3, 0.5]").unwrap();
        let b = CMultiset::parse(&a.to_string()).unwrap();
        assert!(a.matches(&b, 0.0).unwrap().is_some());
    }
}
