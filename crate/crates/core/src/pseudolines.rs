//! Pseudoline arrangements: x-monotone rational polylines with infinite end
//! rays, pair primitives that cost O(1) in n, arrangement validation, and the
//! two O(n²) triangle-recursion searches (ordinary point, monochromatic
//! point).

use num::{Signed, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::plane::{Color, Line2, Point2};
use crate::scalar::Scalar;

/// Default cap on the number of linear pieces per pseudoline, keeping the
/// per-pair primitives constant-time in n. Overridable wherever a
/// [`ValidationConfig`] or [`PseudoOptions`] is accepted.
pub const DEFAULT_S_MAX: usize = 64;

/// An x-monotone polyline with rays extending to x = ±∞. A straight line is
/// one vertex with equal slopes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pseudoline {
    pub vertices: Vec<Point2>,
    pub left_slope: Scalar,
    pub right_slope: Scalar,
    pub color: Option<Color>,
    pub id: usize,
}

impl Pseudoline {
    pub fn new(vertices: Vec<Point2>, left_slope: Scalar, right_slope: Scalar) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidArrangement(
                "pseudoline needs at least one vertex".into(),
            ));
        }
        for w in vertices.windows(2) {
            if w[0].x >= w[1].x {
                return Err(Error::InvalidArrangement(
                    "pseudoline vertices must have strictly increasing x".into(),
                ));
            }
        }
        Ok(Pseudoline {
            vertices,
            left_slope,
            right_slope,
            color: None,
            id: 0,
        })
    }

    /// Embeds a straight non-vertical line. Vertical lines have no x-monotone
    /// graph representation.
    pub fn from_line(l: &Line2) -> Result<Self> {
        if l.b.is_zero() {
            return Err(Error::UnrepresentableLine);
        }
        let slope = -(&l.a / &l.b);
        let anchor = Point2::new(crate::scalar::int(0), &l.c / &l.b);
        Ok(Pseudoline {
            vertices: vec![anchor],
            left_slope: slope.clone(),
            right_slope: slope,
            color: l.color,
            id: l.id,
        })
    }

    pub fn with_color(mut self, color: Option<Color>) -> Self {
        self.color = color;
        self
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    /// Number of linear pieces, end rays included.
    pub fn segment_count(&self) -> usize {
        self.vertices.len() + 1
    }

    /// The y-coordinate at x: piecewise-linear between vertices, rays beyond.
    pub fn eval_at(&self, x: &Scalar) -> Scalar {
        let v = &self.vertices;
        let first = &v[0];
        if *x <= first.x {
            return &first.y + &self.left_slope * (x - &first.x);
        }
        let last = v.last().unwrap();
        if *x >= last.x {
            return &last.y + &self.right_slope * (x - &last.x);
        }
        // v[i].x < x < v[i+1].x for the found i
        let i = v.partition_point(|p| p.x < *x) - 1;
        let (a, b) = (&v[i], &v[i + 1]);
        let t = (x - &a.x) / (&b.x - &a.x);
        &a.y + t * (&b.y - &a.y)
    }

    pub fn passes_through(&self, p: &Point2) -> bool {
        self.eval_at(&p.x) == p.y
    }
}

/// The zero set of the difference function of two pseudolines.
struct DiffZeros {
    /// x-coordinates of isolated zeros, increasing.
    zeros: Vec<Scalar>,
    /// Some piece is identically zero (the curves overlap on an interval).
    overlap: bool,
    /// Valid only for a single isolated zero: the difference changes sign.
    transversal: bool,
}

/// Walks the merged breakpoint sequence of `p(x) − q(x)` and locates its
/// zeros. Cost O(segments), independent of the arrangement size.
fn difference_zeros(p: &Pseudoline, q: &Pseudoline) -> DiffZeros {
    let mut xs: Vec<&Scalar> = p.vertices.iter().chain(&q.vertices).map(|v| &v.x).collect();
    xs.sort();
    xs.dedup();
    let g: Vec<Scalar> = xs.iter().map(|x| p.eval_at(x) - q.eval_at(x)).collect();
    let m = xs.len();
    let dl = &p.left_slope - &q.left_slope;
    let dr = &p.right_slope - &q.right_slope;

    let mut zeros: Vec<Scalar> = Vec::new();
    let mut overlap = false;

    // Left ray: g(x) = g[0] + dl·(x − xs[0]) for x ≤ xs[0].
    if dl.is_zero() {
        if g[0].is_zero() {
            overlap = true;
        }
    } else {
        let x_star = xs[0] - &g[0] / &dl;
        if x_star < *xs[0] {
            zeros.push(x_star);
        }
    }
    for i in 0..m {
        if g[i].is_zero() {
            zeros.push(xs[i].clone());
            if i + 1 < m && g[i + 1].is_zero() {
                overlap = true;
            }
        } else if i + 1 < m && !g[i + 1].is_zero() && g[i].is_positive() != g[i + 1].is_positive() {
            let t = &g[i] / (&g[i] - &g[i + 1]);
            zeros.push(xs[i] + t * (xs[i + 1] - xs[i]));
        }
    }
    // Right ray: g(x) = g[m−1] + dr·(x − xs[m−1]) for x ≥ xs[m−1].
    if dr.is_zero() {
        if g[m - 1].is_zero() {
            overlap = true;
        }
    } else {
        let x_star = xs[m - 1] - &g[m - 1] / &dr;
        if x_star > *xs[m - 1] {
            zeros.push(x_star);
        }
    }

    let transversal = if zeros.len() == 1 && !overlap {
        let z = &zeros[0];
        if z < xs[0] || z > xs[m - 1] {
            true // an isolated ray zero always changes sign
        } else {
            let i = xs.partition_point(|x| *x < z);
            if i < m && *xs[i] == *z {
                // Breakpoint zero: neighbours are nonzero (overlap excluded),
                // and the adjacent pieces are linear, so the signs next to
                // the zero are the neighbouring values' signs.
                let left_sign = if i == 0 {
                    -crate::scalar::sign(&dl)
                } else {
                    crate::scalar::sign(&g[i - 1])
                };
                let right_sign = if i + 1 == m {
                    crate::scalar::sign(&dr)
                } else {
                    crate::scalar::sign(&g[i + 1])
                };
                left_sign != 0 && right_sign != 0 && left_sign != right_sign
            } else {
                true // interior zero of a linear piece: strict sign change
            }
        }
    } else {
        false
    };

    DiffZeros {
        zeros,
        overlap,
        transversal,
    }
}

/// The unique crossing point of two pseudolines of a valid arrangement.
pub fn intersect_pseudolines(p: &Pseudoline, q: &Pseudoline) -> Result<Point2> {
    let dz = difference_zeros(p, q);
    if dz.overlap || dz.zeros.len() > 1 {
        return Err(Error::MultipleCrossings(p.id, q.id));
    }
    match dz.zeros.into_iter().next() {
        Some(x) => {
            let y = p.eval_at(&x);
            Ok(Point2::new(x, y))
        }
        None => Err(Error::NoCrossing(p.id, q.id)),
    }
}

/// All indices whose pseudoline passes through the point. O(n · log S).
pub fn pseudolines_through(ps: &[Pseudoline], pt: &Point2) -> Vec<usize> {
    ps.iter()
        .enumerate()
        .filter(|(_, p)| p.passes_through(pt))
        .map(|(i, _)| i)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairViolation {
    NoCrossing,
    MultipleCrossings,
    /// A single common point without a sign change.
    Touch,
}

#[derive(Debug, Clone)]
pub struct ValidationConfig {
    pub s_max: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            s_max: DEFAULT_S_MAX,
        }
    }
}

/// Everything `validate_arrangement` finds wrong, per pseudoline and per pair.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub malformed: Vec<(usize, String)>,
    pub pair_violations: Vec<(usize, usize, PairViolation)>,
    pub all_concurrent: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.malformed.is_empty() && self.pair_violations.is_empty() && !self.all_concurrent
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            return Ok(());
        }
        if let Some((i, reason)) = self.malformed.first() {
            return Err(Error::InvalidArrangement(format!(
                "pseudoline {i}: {reason}"
            )));
        }
        if let Some((i, j, v)) = self.pair_violations.first() {
            return Err(match v {
                PairViolation::NoCrossing => Error::NoCrossing(*i, *j),
                PairViolation::MultipleCrossings => Error::MultipleCrossings(*i, *j),
                PairViolation::Touch => Error::InvalidArrangement(format!(
                    "pseudolines {i} and {j} touch without crossing"
                )),
            });
        }
        Err(Error::AllConcurrent)
    }
}

/// Checks every pair for exactly one transversal crossing and the whole
/// arrangement for a common point. O(n² · S).
pub fn validate_arrangement(ps: &[Pseudoline], cfg: &ValidationConfig) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, p) in ps.iter().enumerate() {
        if p.segment_count() > cfg.s_max {
            report.malformed.push((
                i,
                format!(
                    "{} segments exceed the cap of {}",
                    p.segment_count(),
                    cfg.s_max
                ),
            ));
        }
    }
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let dz = difference_zeros(&ps[i], &ps[j]);
            if dz.overlap || dz.zeros.len() > 1 {
                report
                    .pair_violations
                    .push((i, j, PairViolation::MultipleCrossings));
            } else if dz.zeros.is_empty() {
                report
                    .pair_violations
                    .push((i, j, PairViolation::NoCrossing));
            } else if !dz.transversal {
                report.pair_violations.push((i, j, PairViolation::Touch));
            }
        }
    }
    if ps.len() >= 2 && report.pair_violations.is_empty() && report.malformed.is_empty() {
        if let Ok(c) = intersect_pseudolines(&ps[0], &ps[1]) {
            report.all_concurrent = ps.iter().all(|p| p.passes_through(&c));
        }
    }
    report
}

/// One step of the triangle recursion: the current triangle, the point being
/// probed on its base, and the dividing line chosen when the probe fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleState {
    pub step: usize,
    pub apex: Point2,
    pub base: usize,
    pub left_pt: Point2,
    pub right_pt: Point2,
    pub left_side: usize,
    pub right_side: usize,
    pub probe: Point2,
    pub probe_line: usize,
    pub expected_color: Option<Color>,
    pub divider: Option<usize>,
    pub used_dividers: Vec<usize>,
}

/// Options shared by the two searches.
#[derive(Debug, Clone)]
pub struct PseudoOptions {
    pub validate: bool,
    pub s_max: usize,
}

impl Default for PseudoOptions {
    fn default() -> Self {
        PseudoOptions {
            validate: true,
            s_max: DEFAULT_S_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoOrdinary {
    pub point: Point2,
    pub witnesses: (usize, usize),
    pub trace: Vec<TriangleState>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoResult {
    pub point: Point2,
    pub color: Color,
    /// Every pseudoline through the point; all share `color`.
    pub witnesses: Vec<usize>,
    pub trace: Vec<TriangleState>,
}

fn strictly_between(x: &Scalar, a: &Scalar, b: &Scalar) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    lo < x && x < hi
}

/// Re-roots the triangle through the dividing line: the crossed side becomes
/// the base, the old probe the apex, and the divider's crossing with that
/// side the next probe. The old probe line and old base become the sides.
fn reroot(
    ps: &[Pseudoline],
    state: &TriangleState,
    divider: usize,
    expected_color: Option<Color>,
) -> Result<TriangleState> {
    let left_x = intersect_pseudolines(&ps[divider], &ps[state.left_side])?;
    let right_x = intersect_pseudolines(&ps[divider], &ps[state.right_side])?;
    let left_hit = strictly_between(&left_x.x, &state.left_pt.x, &state.apex.x);
    let right_hit = strictly_between(&right_x.x, &state.right_pt.x, &state.apex.x);
    debug_assert!(
        left_hit != right_hit,
        "a dividing line crosses the open interior of exactly one triangle side"
    );
    let (new_base, probe, old_end, old_end_line) = if left_hit {
        (state.left_side, left_x, state.left_pt.clone(), state.base)
    } else if right_hit {
        (
            state.right_side,
            right_x,
            state.right_pt.clone(),
            state.base,
        )
    } else {
        return Err(Error::InvalidArrangement(format!(
            "dividing line {divider} crosses neither triangle side"
        )));
    };
    // Endpoints on the new base: the old apex (reached along the old probe
    // line) and the old base point of the crossed side (reached along the
    // old base).
    let ends = [
        (state.apex.clone(), state.probe_line),
        (old_end, old_end_line),
    ];
    let [first, second] = ends;
    let ((left_pt, left_side), (right_pt, right_side)) = if first.0.x < second.0.x {
        (first, second)
    } else {
        (second, first)
    };
    Ok(TriangleState {
        step: state.step + 1,
        apex: state.probe.clone(),
        base: new_base,
        left_pt,
        right_pt,
        left_side,
        right_side,
        probe,
        probe_line: divider,
        expected_color,
        divider: None,
        used_dividers: state.used_dividers.clone(),
    })
}

/// Finds an ordinary crossing (exactly two pseudolines through it) by the
/// shrinking-triangle recursion. Each step probes the middle base crossing of
/// the three apex pseudolines and, on failure, re-roots through a dividing
/// line that is never reused; at most n steps of O(n) work each.
pub fn find_ordinary_pseudoline(ps: &[Pseudoline], opts: &PseudoOptions) -> Result<PseudoOrdinary> {
    if opts.validate {
        validate_arrangement(ps, &ValidationConfig { s_max: opts.s_max }).into_result()?;
    }
    if ps.len() < 3 {
        return Err(Error::NotAnArrangement(format!(
            "need at least 3 pseudolines, got {}",
            ps.len()
        )));
    }
    let base = 0usize;
    let p01 = intersect_pseudolines(&ps[0], &ps[1])?;
    let Some(l2) = (2..ps.len()).find(|&k| !ps[k].passes_through(&p01)) else {
        return Err(Error::AllConcurrent);
    };
    let apex = intersect_pseudolines(&ps[1], &ps[l2])?;
    let through_apex = pseudolines_through(ps, &apex);
    if through_apex.len() == 2 {
        return Ok(PseudoOrdinary {
            point: apex,
            witnesses: (through_apex[0], through_apex[1]),
            trace: Vec::new(),
        });
    }
    debug_assert!(!through_apex.contains(&base));

    let mut hits: Vec<(Point2, usize)> = Vec::with_capacity(3);
    for &k in through_apex.iter().take(3) {
        hits.push((intersect_pseudolines(&ps[k], &ps[base])?, k));
    }
    hits.sort_by(|a, b| a.0.x.cmp(&b.0.x));
    debug_assert!(
        hits[0].0.x < hits[1].0.x && hits[1].0.x < hits[2].0.x,
        "apex pseudolines meet the base at distinct points"
    );
    let [left, mid, right] = [hits[0].clone(), hits[1].clone(), hits[2].clone()];
    let mut state = TriangleState {
        step: 0,
        apex,
        base,
        left_pt: left.0,
        right_pt: right.0,
        left_side: left.1,
        right_side: right.1,
        probe: mid.0,
        probe_line: mid.1,
        expected_color: None,
        divider: None,
        used_dividers: Vec::new(),
    };
    let mut trace = Vec::new();
    let mut used = BTreeSet::new();
    for _ in 0..=ps.len() {
        let through_probe = pseudolines_through(ps, &state.probe);
        debug_assert!(through_probe.contains(&state.base));
        debug_assert!(through_probe.contains(&state.probe_line));
        if through_probe.len() == 2 {
            trace.push(state.clone());
            return Ok(PseudoOrdinary {
                point: state.probe.clone(),
                witnesses: (through_probe[0], through_probe[1]),
                trace,
            });
        }
        let divider = *through_probe
            .iter()
            .find(|&&k| k != state.base && k != state.probe_line)
            .expect("a probe with three or more pseudolines has a dividing line");
        if !used.insert(divider) {
            return Err(Error::InvalidArrangement(format!(
                "dividing line {divider} reused by the recursion"
            )));
        }
        state.divider = Some(divider);
        state.used_dividers = used.iter().copied().collect();
        trace.push(state.clone());
        state = reroot(ps, &state, divider, None)?;
    }
    Err(Error::InvalidArrangement(
        "triangle recursion exceeded n steps; arrangement axioms violated".into(),
    ))
}

/// Finds a monochromatic crossing in a bichromatic arrangement: the leftmost
/// and rightmost crossings on a base pseudoline either give it directly, or
/// seed a triangle whose expected color alternates step by step.
pub fn find_monochromatic(ps: &[Pseudoline], opts: &PseudoOptions) -> Result<MonoResult> {
    for (i, p) in ps.iter().enumerate() {
        if p.color.is_none() {
            return Err(Error::InvalidArrangement(format!(
                "pseudoline {i} has no color"
            )));
        }
    }
    if opts.validate {
        validate_arrangement(ps, &ValidationConfig { s_max: opts.s_max }).into_result()?;
    }
    if ps.len() < 2 {
        return Err(Error::NotAnArrangement(format!(
            "need at least 2 pseudolines, got {}",
            ps.len()
        )));
    }
    let color_of = |k: usize| ps[k].color.unwrap();
    let base_color = color_of(0);

    // Single-color arrangements short-circuit: every crossing qualifies.
    if (1..ps.len()).all(|k| color_of(k) == base_color) {
        let point = intersect_pseudolines(&ps[0], &ps[1])?;
        let witnesses = pseudolines_through(ps, &point);
        return Ok(MonoResult {
            point,
            color: base_color,
            witnesses,
            trace: Vec::new(),
        });
    }
    if ps.len() < 3 {
        return Err(Error::NotAnArrangement(
            "a bichromatic arrangement needs at least 3 pseudolines".into(),
        ));
    }
    let other_color = base_color.other();
    let base = 0usize;

    let mono_in = |indices: &[usize], color: Color| indices.iter().all(|&k| color_of(k) == color);

    // Leftmost and rightmost crossings on the base.
    let mut leftmost: Option<Point2> = None;
    let mut rightmost: Option<Point2> = None;
    for k in 1..ps.len() {
        let c = intersect_pseudolines(&ps[base], &ps[k])?;
        if leftmost.as_ref().is_none_or(|q| c.x < q.x) {
            leftmost = Some(c.clone());
        }
        if rightmost.as_ref().is_none_or(|q| c.x > q.x) {
            rightmost = Some(c);
        }
    }
    let q_pt = leftmost.unwrap();
    let s_pt = rightmost.unwrap();
    debug_assert!(
        q_pt.x < s_pt.x,
        "a validated arrangement has two distinct base crossings"
    );

    let through_q = pseudolines_through(ps, &q_pt);
    if mono_in(&through_q, base_color) {
        return Ok(MonoResult {
            point: q_pt,
            color: base_color,
            witnesses: through_q,
            trace: Vec::new(),
        });
    }
    let through_s = pseudolines_through(ps, &s_pt);
    if mono_in(&through_s, base_color) {
        return Ok(MonoResult {
            point: s_pt,
            color: base_color,
            witnesses: through_s,
            trace: Vec::new(),
        });
    }

    let r_q = *through_q
        .iter()
        .find(|&&k| color_of(k) == other_color)
        .unwrap();
    let r_s = *through_s
        .iter()
        .find(|&&k| color_of(k) == other_color)
        .unwrap();
    debug_assert_ne!(r_q, r_s, "one pseudoline cannot cross the base twice");

    let apex = intersect_pseudolines(&ps[r_q], &ps[r_s])?;
    let through_apex = pseudolines_through(ps, &apex);
    if mono_in(&through_apex, other_color) {
        return Ok(MonoResult {
            point: apex,
            color: other_color,
            witnesses: through_apex,
            trace: Vec::new(),
        });
    }

    let probe_line = *through_apex
        .iter()
        .find(|&&k| color_of(k) == base_color)
        .unwrap();
    let probe = intersect_pseudolines(&ps[probe_line], &ps[base])?;
    debug_assert!(strictly_between(&probe.x, &q_pt.x, &s_pt.x));

    let mut state = TriangleState {
        step: 0,
        apex,
        base,
        left_pt: q_pt,
        right_pt: s_pt,
        left_side: r_q,
        right_side: r_s,
        probe,
        probe_line,
        expected_color: Some(base_color),
        divider: None,
        used_dividers: Vec::new(),
    };
    let mut trace = Vec::new();
    let mut used = BTreeSet::new();
    for _ in 0..=ps.len() {
        let expected = state.expected_color.unwrap();
        debug_assert_eq!(color_of(state.base), expected);
        debug_assert_eq!(color_of(state.probe_line), expected);
        let through_probe = pseudolines_through(ps, &state.probe);
        if mono_in(&through_probe, expected) {
            trace.push(state.clone());
            return Ok(MonoResult {
                point: state.probe.clone(),
                color: expected,
                witnesses: through_probe,
                trace,
            });
        }
        let divider = *through_probe
            .iter()
            .find(|&&k| color_of(k) != expected)
            .expect("a non-monochromatic probe has an opposite-colored pseudoline");
        if !used.insert(divider) {
            return Err(Error::InvalidArrangement(format!(
                "dividing line {divider} reused by the recursion"
            )));
        }
        state.divider = Some(divider);
        state.used_dividers = used.iter().copied().collect();
        trace.push(state.clone());
        state = reroot(ps, &state, divider, Some(expected.other()))?;
    }
    Err(Error::InvalidArrangement(
        "triangle recursion exceeded n steps; arrangement axioms violated".into(),
    ))
}
