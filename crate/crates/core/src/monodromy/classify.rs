//! Splitting classification for the 4-valued composite T(T(z)) and the
//! obstruction pipeline that certifies when a dynamics cannot come from a
//! 2-valued group action.
//!
//! At a base point with four distinct composite images, each image carries
//! a genealogy label: 11 and 12 descend from the first image of the base
//! point, 21 and 22 from the second. A pair-partition of the four labels
//! is preserved by the loop monodromy when the permutation maps each block
//! onto itself; a continuous splitting of the composite into two 2-valued
//! dynamics forces exactly such an invariant partition.

use super::{trace_branches, LoopPath, MonodromyResult, RootFamily, TraceOptions};
use crate::dynamics::QuadDynamics;
use crate::error::{Error, Result};
use crate::multiset::bottleneck_match;
use crate::poly::fmt_c64;
use num_complex::Complex64;
use serde::Serialize;

pub const GENEALOGY_LABELS: [&str; 4] = ["11", "12", "21", "22"];

/// The three pair-partitions of {11, 12, 21, 22}, as index blocks.
const PARTITIONS: [([usize; 2], [usize; 2]); 3] = [
    ([0, 1], [2, 3]), // descendants stay with their parent
    ([0, 2], [1, 3]),
    ([0, 3], [1, 2]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SplitClass {
    Type1,
    Type2,
    NoValidSplitting,
    Unconstrained,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplittingReport {
    #[serde(serialize_with = "crate::ser::c64")]
    pub base: Complex64,
    /// Composite images at the base in label order 11, 12, 21, 22.
    #[serde(serialize_with = "crate::ser::c64_vec")]
    pub genealogy: Vec<Complex64>,
    /// Permutation on label positions induced by one traversal.
    pub permutation: Vec<usize>,
    pub permutation_cycles: String,
    /// Pair-partitions whose blocks the permutation maps onto themselves.
    pub preserved_partitions: Vec<String>,
    pub classification: SplitClass,
    pub monodromy: MonodromyResult,
}

fn partition_name(p: &([usize; 2], [usize; 2])) -> String {
    format!(
        "{{{},{}}}|{{{},{}}}",
        GENEALOGY_LABELS[p.0[0]],
        GENEALOGY_LABELS[p.0[1]],
        GENEALOGY_LABELS[p.1[0]],
        GENEALOGY_LABELS[p.1[1]]
    )
}

fn block_invariant(perm: &[usize], block: &[usize; 2]) -> bool {
    let img = [perm[block[0]], perm[block[1]]];
    (img[0] == block[0] && img[1] == block[1]) || (img[0] == block[1] && img[1] == block[0])
}

/// Classify how the composite dynamics splits along one traversal of the
/// loop. The base point must have four pairwise distinct composite images.
pub fn classify_splitting(
    dynamics: &QuadDynamics,
    path: &LoopPath,
    seed: u64,
) -> Result<SplittingReport> {
    let quartic = dynamics.compose()?;
    let base = path.base_point();

    // Genealogy at the base: match the quartic roots against the direct
    // two-step images.
    let first = dynamics.eval_t(base);
    let (w1, w2) = (first.values()[0], first.values()[1]);
    let kids1 = dynamics.eval_t(w1);
    let kids2 = dynamics.eval_t(w2);
    let direct = [
        kids1.values()[0],
        kids1.values()[1],
        kids2.values()[0],
        kids2.values()[1],
    ];
    let scale = 1.0 + direct.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tol = 1e-6 * scale;
    let mut cross_min = f64::INFINITY;
    for a in &direct[..2] {
        for b in &direct[2..] {
            cross_min = cross_min.min((a - b).norm());
        }
    }
    if cross_min <= tol {
        return Err(Error::GenealogyAmbiguous(format!(
            "descendants of the two first-level images overlap at the base point {} \
             (closest cross distance {cross_min:.3e})",
            fmt_c64(base)
        )));
    }

    let start_roots = {
        let mut r = quartic.roots_at(base, seed, None)?;
        super::sort_canonical(&mut r);
        r
    };
    let (label_to_sheet, genealogy_cost) = bottleneck_match(&direct, &start_roots);
    if genealogy_cost > tol {
        return Err(Error::GenealogyAmbiguous(format!(
            "quartic roots at {} differ from two-step images by {genealogy_cost:.3e}",
            fmt_c64(base)
        )));
    }

    let opts = TraceOptions { seed, ..TraceOptions::default() };
    let monodromy = trace_branches(&quartic as &dyn RootFamily, path, &opts)?;

    // Transport the sheet permutation onto genealogy labels.
    let mut sheet_to_label = [usize::MAX; 4];
    for (label, &sheet) in label_to_sheet.iter().enumerate() {
        sheet_to_label[sheet] = label;
    }
    let perm_labels: Vec<usize> = (0..4)
        .map(|label| sheet_to_label[monodromy.permutation[label_to_sheet[label]]])
        .collect();

    let mut preserved = Vec::new();
    let mut preserved_idx = Vec::new();
    for (i, part) in PARTITIONS.iter().enumerate() {
        if block_invariant(&perm_labels, &part.0) && block_invariant(&perm_labels, &part.1) {
            preserved.push(partition_name(part));
            preserved_idx.push(i);
        }
    }
    let genealogy_preserved = preserved_idx.contains(&0);
    let cross_preserved = preserved_idx.iter().any(|&i| i > 0);
    let classification = match (genealogy_preserved, cross_preserved) {
        (false, false) => SplitClass::NoValidSplitting,
        (true, false) => SplitClass::Type1,
        (false, true) => SplitClass::Type2,
        (true, true) => SplitClass::Unconstrained,
    };

    let cycles = {
        // Reuse the cycle printer on the label permutation.
        let mut seen = [false; 4];
        let mut out = String::new();
        for i in 0..4 {
            if seen[i] {
                continue;
            }
            let mut cyc = vec![i];
            seen[i] = true;
            let mut j = perm_labels[i];
            while j != i {
                seen[j] = true;
                cyc.push(j);
                j = perm_labels[j];
            }
            out.push('(');
            let parts: Vec<&str> = cyc.iter().map(|&i| GENEALOGY_LABELS[i]).collect();
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        out
    };

    Ok(SplittingReport {
        base,
        genealogy: direct.to_vec(),
        permutation: perm_labels,
        permutation_cycles: cycles,
        preserved_partitions: preserved,
        classification,
        monodromy,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ObstructionVerdict {
    NotGroupDefinable,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub verdict: ObstructionVerdict,
    #[serde(serialize_with = "crate::ser::c64")]
    pub shift: Complex64,
    #[serde(serialize_with = "crate::ser::c64")]
    pub z1: Complex64,
    pub loop_z1: LoopPath,
    pub loop_zero: LoopPath,
    pub class_at_z1: SplittingReport,
    pub class_at_zero: SplittingReport,
    pub notes: Vec<String>,
}

/// Certify non-definability through incompatible local splitting types:
/// the composite must split as type 1 (or not at all) near an
/// odd-multiplicity root z1 of p0, and as type 2 (or not at all) near the
/// odd-multiplicity discriminant root at 0 after shift normalization.
pub fn obstruction_verdict(dynamics: &QuadDynamics, seed: u64) -> Result<ObstructionReport> {
    let degeneracy = dynamics.degeneracy(seed)?;
    if !degeneracy.is_non_degenerate() {
        return Err(Error::PreconditionFailed(
            if degeneracy.splits_into_single_valued {
                "dynamics splits into two single-valued maps".to_string()
            } else {
                "composite images are never four distinct points".to_string()
            },
        ));
    }

    let mut notes = Vec::new();
    let (shifted, a) = dynamics.shift_normalize(seed)?;
    if a.approx.norm() > 0.0 {
        notes.push(format!(
            "conjugated by z -> z + a with a = {}",
            fmt_c64(a.approx)
        ));
    }

    let odd = shifted.p0().odd_multiplicity_roots(seed)?;
    if odd.is_empty() {
        return Err(Error::PreconditionFailed(
            "p0 has no root of odd multiplicity: the perfect-square necessary condition holds"
                .into(),
        ));
    }
    let z1 = pick_z1(&odd.roots);
    if z1.norm() <= 1e-9 {
        notes.push("the only odd-multiplicity root of p0 coincides with 0".into());
    }

    // Exceptional points: where composite images collide, plus the branch
    // points of the first application.
    let shifted_degeneracy = shifted.degeneracy(seed)?;
    let mut exceptional: Vec<Complex64> = shifted_degeneracy
        .exceptional_points
        .roots
        .iter()
        .map(|(r, _)| *r)
        .collect();
    if let Ok(disc_roots) = shifted.discriminant().roots(seed) {
        exceptional.extend(disc_roots.roots.iter().map(|(r, _)| *r));
    }
    exceptional.push(Complex64::new(0.0, 0.0));
    exceptional.push(z1);

    let loop_z1 = small_loop(z1, &exceptional);
    let loop_zero = small_loop(Complex64::new(0.0, 0.0), &exceptional);

    let class_at_z1 = classify_with_retries(&shifted, &loop_z1, seed)?;
    let class_at_zero = if z1.norm() <= 1e-9 {
        class_at_z1.clone()
    } else {
        classify_with_retries(&shifted, &loop_zero, seed)?
    };

    let z1_ok = matches!(
        class_at_z1.classification,
        SplitClass::Type1 | SplitClass::NoValidSplitting
    );
    let zero_ok = matches!(
        class_at_zero.classification,
        SplitClass::Type2 | SplitClass::NoValidSplitting
    );
    let verdict = if z1_ok && zero_ok {
        ObstructionVerdict::NotGroupDefinable
    } else {
        notes.push(format!(
            "local classifications ({:?} near z1, {:?} near 0) do not certify an obstruction",
            class_at_z1.classification, class_at_zero.classification
        ));
        ObstructionVerdict::Inconclusive
    };

    Ok(ObstructionReport {
        verdict,
        shift: a.approx,
        z1,
        loop_z1,
        loop_zero,
        class_at_z1,
        class_at_zero,
        notes,
    })
}

/// Odd root of p0 used for the type-1 side: prefer roots away from 0,
/// smallest magnitude first, ties broken by argument.
fn pick_z1(odd_roots: &[(Complex64, usize)]) -> Complex64 {
    let nonzero: Vec<Complex64> = odd_roots
        .iter()
        .map(|(r, _)| *r)
        .filter(|r| r.norm() > 1e-9)
        .collect();
    let pool = if nonzero.is_empty() {
        odd_roots.iter().map(|(r, _)| *r).collect()
    } else {
        nonzero
    };
    pool.into_iter()
        .min_by(|a, b| {
            (a.norm(), a.arg())
                .partial_cmp(&(b.norm(), b.arg()))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap()
}

/// Loop radius: a tenth of the distance to the nearest other exceptional
/// point, floored at 1e-4.
fn small_loop(center: Complex64, exceptional: &[Complex64]) -> LoopPath {
    let nearest = exceptional
        .iter()
        .map(|e| (e - center).norm())
        .filter(|d| *d > 1e-9)
        .fold(f64::INFINITY, f64::min);
    let radius = if nearest.is_finite() {
        (0.1 * nearest).max(1e-4)
    } else {
        0.1
    };
    LoopPath::circle(center, radius, 256)
}

fn classify_with_retries(
    dynamics: &QuadDynamics,
    path: &LoopPath,
    seed: u64,
) -> Result<SplittingReport> {
    let mut current = path.clone();
    let mut last_err = None;
    for _ in 0..4 {
        match classify_splitting(dynamics, &current, seed) {
            Ok(rep) => return Ok(rep),
            Err(e @ (Error::BranchCollision(_) | Error::GenealogyAmbiguous(_))) => {
                last_err = Some(e);
                current = match current {
                    LoopPath::Circle { center, radius, samples } => {
                        LoopPath::circle(center, radius / 2.0, samples)
                    }
                    other => return Err(last_err.unwrap_or(Error::BranchCollision(format!(
                        "classification failed on non-circular loop {other:?}"
                    )))),
                };
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}
