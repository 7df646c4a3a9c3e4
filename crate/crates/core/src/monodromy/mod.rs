//! Numerical path lifting: track the branches of a 2- or 4-valued root
//! family along a closed loop, read off the branch permutation at closure,
//! and accumulate per-branch argument increments around a reference point.
//! Steps adapt so that matched sheet movement stays well under the current
//! sheet separation, which is what makes nearest-pairing lifting sound.

mod classify;
mod sufficiency;

pub use classify::{classify_splitting, obstruction_verdict, ObstructionReport, ObstructionVerdict, SplitClass, SplittingReport};
pub use sufficiency::{sufficiency_probe, SufficiencyReport};

use crate::dynamics::{QuadDynamics, QuarticFamily};
use crate::error::{Error, Result};
use crate::multiset::bottleneck_match;
use crate::poly::fmt_c64;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

const MIN_STEP: f64 = 1e-12;

/// A closed curve in the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum LoopPath {
    Circle {
        center: Complex64,
        radius: f64,
        samples: usize,
    },
    Polyline {
        vertices: Vec<Complex64>,
        samples: usize,
    },
}

impl LoopPath {
    pub fn circle(center: Complex64, radius: f64, samples: usize) -> Self {
        LoopPath::Circle { center, radius, samples }
    }

    /// Closed polyline; the first vertex is appended when the input does
    /// not already end where it starts.
    pub fn polyline(mut vertices: Vec<Complex64>, samples: usize) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::PreconditionFailed(
                "polyline loop needs at least two vertices".into(),
            ));
        }
        if (vertices[0] - vertices[vertices.len() - 1]).norm() > 0.0 {
            vertices.push(vertices[0]);
        }
        Ok(LoopPath::Polyline { vertices, samples })
    }

    pub fn samples(&self) -> usize {
        match self {
            LoopPath::Circle { samples, .. } | LoopPath::Polyline { samples, .. } => *samples,
        }
    }

    /// Position at parameter t in [0, 1]; t = 0 and t = 1 coincide.
    pub fn point(&self, t: f64) -> Complex64 {
        let t = t - t.floor();
        match self {
            LoopPath::Circle { center, radius, .. } => {
                let theta = std::f64::consts::TAU * t;
                center + Complex64::from_polar(*radius, theta)
            }
            LoopPath::Polyline { vertices, .. } => {
                let lengths: Vec<f64> = vertices
                    .windows(2)
                    .map(|w| (w[1] - w[0]).norm())
                    .collect();
                let total: f64 = lengths.iter().sum();
                let mut remaining = t * total;
                for (seg, len) in vertices.windows(2).zip(&lengths) {
                    if remaining <= *len || *len == 0.0 {
                        let f = if *len == 0.0 { 0.0 } else { remaining / len };
                        return seg[0] + (seg[1] - seg[0]) * f;
                    }
                    remaining -= len;
                }
                vertices[vertices.len() - 1]
            }
        }
    }

    pub fn base_point(&self) -> Complex64 {
        self.point(0.0)
    }
}

// Serde through the text form: {"kind":"circle","center":"1","radius":0.1,"samples":256}.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum LoopRepr {
    Circle {
        center: String,
        radius: f64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Polyline {
        vertices: Vec<String>,
        #[serde(default = "default_samples")]
        samples: usize,
    },
}

fn default_samples() -> usize {
    256
}

impl Serialize for LoopPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            LoopPath::Circle { center, radius, samples } => LoopRepr::Circle {
                center: fmt_c64(*center),
                radius: *radius,
                samples: *samples,
            },
            LoopPath::Polyline { vertices, samples } => LoopRepr::Polyline {
                vertices: vertices.iter().map(|v| fmt_c64(*v)).collect(),
                samples: *samples,
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LoopPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as DeError;
        let repr = LoopRepr::deserialize(d)?;
        match repr {
            LoopRepr::Circle { center, radius, samples } => {
                if radius <= 0.0 {
                    return Err(D::Error::custom("circle radius must be positive"));
                }
                let center = crate::poly::parse_complex(&center)
                    .map_err(|e| D::Error::custom(e.to_string()))?;
                Ok(LoopPath::Circle { center: center.approx, radius, samples })
            }
            LoopRepr::Polyline { vertices, samples } => {
                let vs: std::result::Result<Vec<Complex64>, D::Error> = vertices
                    .iter()
                    .map(|v| {
                        crate::poly::parse_complex(v)
                            .map(|c| c.approx)
                            .map_err(|e| D::Error::custom(e.to_string()))
                    })
                    .collect();
                LoopPath::polyline(vs?, samples).map_err(|e| D::Error::custom(e.to_string()))
            }
        }
    }
}

/// Anything that assigns a finite root multiset to each point of the plane.
pub trait RootFamily {
    fn arity(&self) -> usize;
    fn roots_at(&self, z: Complex64, seed: u64, hint: Option<&[Complex64]>) -> Result<Vec<Complex64>>;
}

impl RootFamily for QuadDynamics {
    fn arity(&self) -> usize {
        2
    }

    fn roots_at(&self, z: Complex64, _seed: u64, _hint: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
        Ok(self.eval_t(z).values().to_vec())
    }
}

impl RootFamily for QuarticFamily {
    fn arity(&self) -> usize {
        4
    }

    fn roots_at(&self, z: Complex64, seed: u64, hint: Option<&[Complex64]>) -> Result<Vec<Complex64>> {
        QuarticFamily::roots_at(self, z, seed, hint)
    }
}

#[derive(Clone, Debug)]
pub struct TraceOptions {
    /// Windings are accumulated about this point.
    pub reference: Complex64,
    /// Number of times the loop is traversed.
    pub turns: usize,
    pub seed: u64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            reference: Complex64::new(0.0, 0.0),
            turns: 1,
            seed: 0,
        }
    }
}

/// One accepted step of a trace.
#[derive(Clone, Debug, Serialize)]
pub struct TraceStep {
    pub t: f64,
    #[serde(serialize_with = "crate::ser::c64_vec")]
    pub sheets: Vec<Complex64>,
    pub sep: f64,
}

/// The full lifted path.
#[derive(Clone, Debug)]
pub struct BranchTrace {
    pub steps: Vec<TraceStep>,
    pub min_separation: f64,
    pub reference: Complex64,
}

/// A permutation cycle together with its integer total winding about the
/// reference.
#[derive(Clone, Debug, Serialize)]
pub struct CycleWinding {
    pub cycle: Vec<usize>,
    pub winding: i64,
}

/// Branch permutation and winding data of one traced loop.
#[derive(Clone, Debug)]
pub struct MonodromyResult {
    /// Branch i ends on the starting sheet `permutation[i]`.
    pub permutation: Vec<usize>,
    /// Per-branch argument increment about the reference, in turns; only
    /// sums over permutation cycles are integers.
    pub branch_turns: Vec<f64>,
    pub cycle_windings: Vec<CycleWinding>,
    pub trace: BranchTrace,
}

impl MonodromyResult {
    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_transposition(&self) -> bool {
        let moved: Vec<usize> = self
            .permutation
            .iter()
            .enumerate()
            .filter(|(i, &j)| *i != j)
            .map(|(i, _)| i)
            .collect();
        moved.len() == 2 && self.permutation[moved[0]] == moved[1] && self.permutation[moved[1]] == moved[0]
    }

    /// Compact cycle notation, e.g. "(0 1)(2)(3)".
    pub fn cycle_notation(&self) -> String {
        let mut out = String::new();
        for cw in &self.cycle_windings {
            out.push('(');
            let parts: Vec<String> = cw.cycle.iter().map(|i| i.to_string()).collect();
            out.push_str(&parts.join(" "));
            out.push(')');
        }
        out
    }
}

impl Serialize for MonodromyResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("MonodromyResult", 6)?;
        st.serialize_field("permutation", &self.permutation)?;
        st.serialize_field("branch_turns", &self.branch_turns)?;
        st.serialize_field("cycle_windings", &self.cycle_windings)?;
        st.serialize_field("min_separation", &self.trace.min_separation)?;
        st.serialize_field("reference", &fmt_c64(self.trace.reference))?;
        st.serialize_field("accepted_steps", &self.trace.steps.len())?;
        st.end()
    }
}

fn min_pairwise(vals: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            m = m.min((vals[i] - vals[j]).norm());
        }
    }
    m
}

fn sort_canonical(vals: &mut [Complex64]) {
    vals.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Lift the root family along the loop. Roots at each accepted sample are
/// matched to the previous sheets by bottleneck pairing; the step is halved
/// until the matched movement is under a third of the sheet separation (and
/// the per-sheet argument increment about the reference stays small).
pub fn trace_branches(
    family: &dyn RootFamily,
    path: &LoopPath,
    opts: &TraceOptions,
) -> Result<MonodromyResult> {
    let k = family.arity();
    let turns = opts.turns.max(1) as f64;
    let base = path.point(0.0);
    let mut start = family.roots_at(base, opts.seed, None)?;
    sort_canonical(&mut start);

    let collision_tol = |sheets: &[Complex64]| {
        1e-7 * (1.0 + sheets.iter().map(|s| s.norm()).fold(0.0, f64::max))
    };
    let sep0 = min_pairwise(&start);
    if sep0 <= 10.0 * collision_tol(&start) {
        return Err(Error::BranchCollision(format!(
            "sheets at the base point {} are not separated (min distance {sep0:.3e})",
            fmt_c64(base)
        )));
    }

    let mut sheets = start.clone();
    let mut arg_acc = vec![0.0f64; k];
    let mut min_sep = sep0;
    let mut steps = vec![TraceStep {
        t: 0.0,
        sheets: start.clone(),
        sep: sep0,
    }];

    let h_init = 1.0 / (path.samples().max(8) as f64);
    let mut h = h_init;
    let mut t = 0.0f64;
    let t_end = turns;

    while t < t_end {
        h = h.min(t_end - t);
        let (next_sheets, next_sep, d_args, t_next) = loop {
            let mut t_next = t + h;
            if t_end - t_next < 1e-14 {
                t_next = t_end;
            }
            // point() wraps the parameter, so t = turns lands on the base.
            let z = path.point(t_next);
            let cand = family.roots_at(z, opts.seed, Some(&sheets))?;
            let (pairing, moved) = bottleneck_match(&sheets, &cand);
            let sep = min_pairwise(&sheets).min(min_pairwise(&cand));
            if sep < collision_tol(&cand).max(collision_tol(&sheets)) {
                return Err(Error::BranchCollision(format!(
                    "sheet separation {sep:.3e} fell under the collision tolerance near t = {t:.6}; \
                     the loop passes too close to a branch point"
                )));
            }
            let mut ok = moved < sep / 3.0;
            let mut d_args = vec![0.0f64; k];
            if ok {
                for i in 0..k {
                    let from = sheets[i] - opts.reference;
                    let to = cand[pairing[i]] - opts.reference;
                    if from.norm() == 0.0 || to.norm() == 0.0 {
                        ok = false;
                        break;
                    }
                    let inc = (to / from).arg();
                    if inc.abs() > std::f64::consts::FRAC_PI_2 {
                        ok = false;
                        break;
                    }
                    d_args[i] = inc;
                }
            }
            if ok {
                let permuted: Vec<Complex64> = (0..k).map(|i| cand[pairing[i]]).collect();
                break (permuted, sep, d_args, t_next);
            }
            h /= 2.0;
            if h < MIN_STEP {
                return Err(Error::BranchCollision(format!(
                    "step size underflow at t = {t:.6}; sheets cannot be tracked continuously"
                )));
            }
        };

        sheets = next_sheets;
        min_sep = min_sep.min(next_sep);
        for i in 0..k {
            arg_acc[i] += d_args[i];
        }
        t = t_next;
        steps.push(TraceStep {
            t: t / turns,
            sheets: sheets.clone(),
            sep: next_sep,
        });
        // Grow the step back when the last move was comfortable.
        h = (h * 1.6).min(h_init);
    }

    // Read off the permutation at closure.
    let (pairing, closure_cost) = bottleneck_match(&sheets, &start);
    let final_sep = min_pairwise(&start);
    if closure_cost >= final_sep / 3.0 {
        return Err(Error::BranchCollision(format!(
            "loop closure mismatch: final sheets are {closure_cost:.3e} from the starting roots"
        )));
    }
    let permutation = pairing;

    // Integer winding per permutation cycle.
    let turns_per_branch: Vec<f64> = arg_acc
        .iter()
        .map(|a| a / std::f64::consts::TAU)
        .collect();
    let mut seen = vec![false; k];
    let mut cycle_windings = Vec::new();
    for i in 0..k {
        if seen[i] {
            continue;
        }
        let mut cycle = vec![i];
        seen[i] = true;
        let mut j = permutation[i];
        while j != i {
            seen[j] = true;
            cycle.push(j);
            j = permutation[j];
        }
        let total: f64 = cycle.iter().map(|&b| turns_per_branch[b]).sum();
        let rounded = total.round();
        if (total - rounded).abs() > 0.05 {
            return Err(Error::BranchCollision(format!(
                "non-integer winding {total:.4} over cycle {cycle:?} signals a tracking failure"
            )));
        }
        cycle_windings.push(CycleWinding {
            cycle,
            winding: rounded as i64,
        });
    }

    Ok(MonodromyResult {
        permutation,
        branch_turns: turns_per_branch,
        cycle_windings,
        trace: BranchTrace {
            steps,
            min_separation: min_sep,
            reference: opts.reference,
        },
    })
}

/// Traces the two images of a shift-normalized dynamics along a loop
/// winding `d` times about 0 and reports whether the branches swap.
pub fn omega_swap_check(dynamics: &QuadDynamics, path: &LoopPath, d: usize) -> Result<bool> {
    let disc0 = dynamics.discriminant().eval(Complex64::new(0.0, 0.0));
    let scale = 1.0 + dynamics.discriminant().max_coeff_magnitude();
    if disc0.norm() > 1e-6 * scale {
        return Err(Error::PreconditionFailed(
            "discriminant does not vanish at 0; shift-normalize the dynamics first".into(),
        ));
    }
    let opts = TraceOptions {
        turns: d,
        ..TraceOptions::default()
    };
    let result = trace_branches(dynamics, path, &opts)?;
    Ok(result.is_transposition())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::QuadDynamics;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// T = +/- sqrt(z): p1 = 0, p0 = -z.
    fn square_root_dynamics() -> QuadDynamics {
        QuadDynamics::parse("0", "0,-1").unwrap()
    }

    #[test]
    fn square_root_monodromy_swaps() {
        let t = square_root_dynamics();
        let path = LoopPath::circle(c(0.0, 0.0), 1.0, 64);
        let res = trace_branches(&t, &path, &TraceOptions::default()).unwrap();
        assert!(res.is_transposition());
        assert_eq!(res.cycle_windings.len(), 1);
        assert_eq!(res.cycle_windings[0].winding, 1);
        // Each branch alone makes half a turn.
        for bt in &res.branch_turns {
            assert!((bt.abs() - 0.5).abs() < 0.02);
        }
    }

    #[test]
    fn double_traversal_is_identity() {
        let t = square_root_dynamics();
        let path = LoopPath::circle(c(0.0, 0.0), 1.0, 64);
        let opts = TraceOptions { turns: 2, ..TraceOptions::default() };
        let res = trace_branches(&t, &path, &opts).unwrap();
        assert!(res.is_identity());
        for cw in &res.cycle_windings {
            assert_eq!(cw.winding, 1);
        }
    }

    #[test]
    fn far_loop_is_trivial() {
        let t = square_root_dynamics();
        let path = LoopPath::circle(c(10.0, 0.0), 0.5, 64);
        let res = trace_branches(&t, &path, &TraceOptions::default()).unwrap();
        assert!(res.is_identity());
        for cw in &res.cycle_windings {
            assert_eq!(cw.winding, 0);
        }
    }

    #[test]
    fn omega_swap_examples() {
        // Obstruction dynamics: already normalized, 0 is a simple root of
        // the discriminant z.
        let t = QuadDynamics::parse("0,1", "0,-1,1").unwrap();
        let path = LoopPath::circle(c(0.0, 0.0), 0.05, 64);
        assert!(omega_swap_check(&t, &path, 1).unwrap());
        assert!(!omega_swap_check(&t, &path, 2).unwrap());

        let sq = square_root_dynamics();
        let path = LoopPath::circle(c(0.0, 0.0), 0.5, 64);
        assert!(omega_swap_check(&sq, &path, 1).unwrap());
    }

    #[test]
    fn gamma1_image_winds_once_around_zero() {
        // Loop around z1 = 1 (simple root of p0 = z^2 - z): the image
        // branch near 0 winds an odd number of times (here 1) about 0.
        let t = QuadDynamics::parse("0,1", "0,-1,1").unwrap();
        let path = LoopPath::circle(c(1.0, 0.0), 0.1, 128);
        let res = trace_branches(&t, &path, &TraceOptions::default()).unwrap();
        assert!(res.is_identity(), "the two image loops are closed here");
        // One branch stays near 0 and winds once; the other stays near
        // z2 = -2 and does not wind.
        let mut windings: Vec<i64> = res.cycle_windings.iter().map(|cw| cw.winding).collect();
        windings.sort();
        assert_eq!(windings, vec![0, 1]);
    }

    #[test]
    fn product_of_branches_equals_p0_along_trace() {
        let t = QuadDynamics::parse("0,1", "0,-1,1").unwrap();
        let path = LoopPath::circle(c(1.0, 0.0), 0.1, 64);
        let res = trace_branches(&t, &path, &TraceOptions::default()).unwrap();
        for step in &res.trace.steps {
            let z = path.point(step.t);
            let p0 = t.p0().eval(z);
            let prod = step.sheets[0] * step.sheets[1];
            assert!((prod - p0).norm() <= 1e-8 * (1.0 + p0.norm()));
        }
    }

    #[test]
    fn reversal_composes_to_identity() {
        let t = QuadDynamics::parse("0,1", "0,-1,1").unwrap();
        // A reversed circle is the polyline of the circle's samples in
        // reverse order; easier: trace the reflected parameterization by
        // a polyline approximation of the same circle.
        let n = 64;
        let (center, radius) = (c(1.0, 0.0), 0.1);
        let verts_fwd: Vec<Complex64> = (0..n)
            .map(|i| center + Complex64::from_polar(radius, std::f64::consts::TAU * i as f64 / n as f64))
            .collect();
        let mut verts_rev = verts_fwd.clone();
        verts_rev.reverse();
        let fwd = LoopPath::polyline(verts_fwd, 256).unwrap();
        let rev = LoopPath::polyline(verts_rev, 256).unwrap();
        let a = trace_branches(&t, &fwd, &TraceOptions::default()).unwrap();
        let b = trace_branches(&t, &rev, &TraceOptions::default()).unwrap();
        // Compose: start sheet i -> a.permutation[i] -> b.permutation[...].
        for i in 0..2 {
            assert_eq!(b.permutation[a.permutation[i]], i);
        }
    }

    #[test]
    fn loop_serde_roundtrip() {
        let text = r#"{"kind":"circle","center":"1","radius":0.1,"samples":256}"#;
        let path: LoopPath = serde_json::from_str(text).unwrap();
        assert_eq!(path, LoopPath::circle(c(1.0, 0.0), 0.1, 256));
        let back = serde_json::to_string(&path).unwrap();
        let again: LoopPath = serde_json::from_str(&back).unwrap();
        assert_eq!(again, path);
    }
}
