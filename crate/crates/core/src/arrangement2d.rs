//! Ordinary intersection points in an arrangement of lines in the plane, in
//! O(n log n).
//!
//! The pipeline: pick three lines meeting at three distinct points, make the
//! first of them a horizontal base with the other two crossing above, bundle
//! all intersections on the base from left to right, and then either an
//! ordinary base point exists, or the lowest crossing X above the base is
//! ordinary, or the line M through X parallel to the base yields the ordinary
//! point Y = M ∩ (leftmost line of the leftmost bundle).

use num::{Signed, Zero};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::plane::{base_frame, intersect_lines, AffineMap2, Line2, Point2};
use crate::scalar::Scalar;

/// All lines crossing the base at one common point, in frame coordinates.
/// Members are ordered by slope angle θ ∈ (0, π) descending, so the leftmost
/// line comes first and the rightmost last.
#[derive(Debug, Clone)]
pub struct Bundle {
    pub point: Point2,
    pub members: Vec<usize>,
}

impl Bundle {
    pub fn leftmost(&self) -> usize {
        self.members[0]
    }

    pub fn rightmost(&self) -> usize {
        *self.members.last().unwrap()
    }
}

/// Bundles on a base line, left to right, together with the frame images of
/// the crossing lines and the indices of lines parallel to the base.
#[derive(Debug, Clone)]
pub struct BaseBundles {
    pub base: usize,
    pub bundles: Vec<Bundle>,
    pub parallels: Vec<usize>,
    mapped: Vec<Option<Line2>>,
}

impl BaseBundles {
    /// Frame image of a non-base, non-parallel line.
    pub fn mapped(&self, index: usize) -> &Line2 {
        self.mapped[index].as_ref().expect("line crosses the base")
    }
}

/// How the returned ordinary point was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance2D {
    /// Two parallel families only; every intersection is ordinary.
    TrivialGrid,
    /// A base point crossed by exactly one line.
    OrdinaryBundle,
    /// The lowest intersection above the base, no parallel line through it.
    LowestX,
    /// Lowest intersection had a base-parallel line M through it; the point
    /// is M ∩ (leftmost line of the leftmost bundle).
    ParallelY,
}

impl Provenance2D {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance2D::TrivialGrid => "trivial_grid",
            Provenance2D::OrdinaryBundle => "ordinary_bundle",
            Provenance2D::LowestX => "lowest_x",
            Provenance2D::ParallelY => "parallel_y",
        }
    }
}

/// An ordinary intersection point together with the two lines that define it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryResult2D {
    pub point: Point2,
    pub witnesses: (usize, usize),
    pub provenance: Provenance2D,
}

enum TripleSearch {
    Triple(usize, usize, usize),
    TwoFamilies(usize, usize),
    AllParallel,
    AllConcurrent,
}

/// Case analysis behind `find_triple`. Fix the first non-parallel pair and
/// scan for a third line missing their intersection; when the scan fails,
/// every line is in the pencil through P or parallel to one of the pair, and
/// a constant amount of extra work settles the outcome.
fn classify_triple(lines: &[Line2]) -> Result<TripleSearch> {
    let Some(j) = lines.iter().skip(1).position(|l| !l.is_parallel(&lines[0])) else {
        return Ok(TripleSearch::AllParallel);
    };
    let i = 0;
    let j = j + 1;
    let p = intersect_lines(&lines[i], &lines[j])?.expect("non-parallel pair");
    let mut pencil: Vec<usize> = Vec::new(); // through P, includes i and j
    let mut par_i: Vec<usize> = Vec::new(); // miss P, parallel to lines[i]
    let mut par_j: Vec<usize> = Vec::new();
    for (k, l) in lines.iter().enumerate() {
        if k == i || k == j {
            continue;
        }
        if l.eval(&p).is_zero() {
            pencil.push(k);
        } else if l.is_parallel(&lines[i]) {
            par_i.push(k);
        } else if l.is_parallel(&lines[j]) {
            par_j.push(k);
        } else {
            return Ok(TripleSearch::Triple(i, j, k));
        }
    }
    if par_i.is_empty() && par_j.is_empty() {
        return Ok(if pencil.is_empty() {
            TripleSearch::TwoFamilies(i, j)
        } else {
            TripleSearch::AllConcurrent
        });
    }
    if pencil.is_empty() {
        // Pencil is exactly {i, j}: two parallel families.
        return Ok(TripleSearch::TwoFamilies(i, j));
    }
    // |pencil through P| ≥ 3. Two pencil lines other than the one parallel to
    // the chosen family member, plus a line of that family, meet pairwise in
    // three distinct points.
    if !par_i.is_empty() {
        Ok(TripleSearch::Triple(j, pencil[0], par_i[0]))
    } else {
        Ok(TripleSearch::Triple(i, pencil[0], par_j[0]))
    }
}

/// Indices of three lines meeting pairwise at three distinct points, or
/// `None` when no such triple exists. O(n).
pub fn find_triple(lines: &[Line2]) -> Option<(usize, usize, usize)> {
    if lines.len() < 3 {
        return None;
    }
    match classify_triple(lines).ok()? {
        TripleSearch::Triple(i, j, k) => Some((i, j, k)),
        _ => None,
    }
}

/// Cotangent of the slope angle θ ∈ (0, π); strictly decreasing in θ, so
/// sorting by it ascending orders lines by θ descending (leftmost first).
fn cot_key(l: &Line2) -> Scalar {
    debug_assert!(!l.a.is_zero(), "horizontal lines never join a bundle");
    -(&l.b / &l.a)
}

/// Groups every line crossing the base into bundles sorted left to right,
/// with members ordered leftmost to rightmost; collects base-parallels
/// separately. `frame` must map the base line to the x-axis. O(n log n).
pub fn bundles_on_base(lines: &[Line2], base: usize, frame: &AffineMap2) -> BaseBundles {
    let mut mapped: Vec<Option<Line2>> = vec![None; lines.len()];
    let mut parallels = Vec::new();
    // (crossing x, cot key, index)
    let mut crossers: Vec<(Scalar, Scalar, usize)> = Vec::new();
    for (k, l) in lines.iter().enumerate() {
        if k == base {
            continue;
        }
        let img = frame.transform_line(l);
        if img.a.is_zero() {
            parallels.push(k);
            mapped[k] = Some(img);
            continue;
        }
        let x = &img.c / &img.a;
        crossers.push((x, cot_key(&img), k));
        mapped[k] = Some(img);
    }
    crossers.sort();
    let mut bundles: Vec<Bundle> = Vec::new();
    for (x, _, k) in crossers {
        match bundles.last_mut() {
            Some(b) if b.point.x == x => b.members.push(k),
            _ => bundles.push(Bundle {
                point: Point2::new(x, crate::scalar::int(0)),
                members: vec![k],
            }),
        }
    }
    BaseBundles {
        base,
        bundles,
        parallels,
        mapped,
    }
}

/// The lowest candidate intersection strictly above the base: among the
/// crossings of consecutive lines through consecutive bundles, the one with
/// minimal y (ties by minimal x). Frame coordinates.
pub fn lowest_candidate(bb: &BaseBundles) -> Option<(Point2, (usize, usize))> {
    let mut best: Option<(Point2, (usize, usize))> = None;
    for pair in bb.bundles.windows(2) {
        let right_of_left = pair[0].rightmost();
        let left_of_right = pair[1].leftmost();
        let l1 = bb.mapped(right_of_left);
        let l2 = bb.mapped(left_of_right);
        let Some(x) = intersect_lines(l1, l2).expect("distinct lines") else {
            continue;
        };
        if !x.y.is_positive() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => (&x.y, &x.x) < (&b.y, &b.x),
        };
        if better {
            best = Some((x, (right_of_left, left_of_right)));
        }
    }
    best
}

/// Finds an ordinary intersection point of the arrangement. The lines must
/// be distinct; the arrangement must be neither a single parallel family nor
/// a pencil through one point.
pub fn find_ordinary_point_2d(lines: &[Line2]) -> Result<OrdinaryResult2D> {
    if lines.len() < 2 {
        return Err(Error::NotAnArrangement(format!(
            "need at least 2 distinct lines, got {}",
            lines.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for l in lines {
        if !seen.insert((l.a.clone(), l.b.clone(), l.c.clone())) {
            return Err(Error::NotAnArrangement(format!("duplicate line {l}")));
        }
    }

    let (base, l1, l2) = match classify_triple(lines)? {
        TripleSearch::AllParallel => return Err(Error::AllParallel),
        TripleSearch::AllConcurrent => return Err(Error::AllConcurrent),
        TripleSearch::TwoFamilies(i, j) => {
            let point = intersect_lines(&lines[i], &lines[j])?.expect("cross-family pair");
            return Ok(OrdinaryResult2D {
                point,
                witnesses: (i, j),
                provenance: Provenance2D::TrivialGrid,
            });
        }
        TripleSearch::Triple(i, j, k) => (i, j, k),
    };

    // The witness L1 ∩ L2 is off the base because the triple's intersection
    // points are distinct; the frame puts it above.
    let witness = intersect_lines(&lines[l1], &lines[l2])?.expect("triple pair crosses");
    let frame = base_frame(&lines[base], &witness)?;
    let bb = bundles_on_base(lines, base, &frame);
    debug_assert!(
        bb.bundles.len() >= 2,
        "triple members cross the base at two points"
    );
    debug_assert_eq!(
        bb.bundles.iter().map(|b| b.members.len()).sum::<usize>() + bb.parallels.len() + 1,
        lines.len()
    );

    for bundle in &bb.bundles {
        if bundle.members.len() == 1 {
            return Ok(OrdinaryResult2D {
                point: frame.apply_inverse(&bundle.point),
                witnesses: (base, bundle.members[0]),
                provenance: Provenance2D::OrdinaryBundle,
            });
        }
    }

    // No ordinary point on the base, so the lowest intersection above it is
    // realized by consecutive lines through consecutive bundles.
    let (x, (w1, w2)) = lowest_candidate(&bb).expect("a candidate exists above the base");

    let m = bb
        .parallels
        .iter()
        .copied()
        .find(|&k| bb.mapped(k).eval(&x).is_zero());
    match m {
        None => Ok(OrdinaryResult2D {
            point: frame.apply_inverse(&x),
            witnesses: (w1, w2),
            provenance: Provenance2D::LowestX,
        }),
        Some(m) => {
            let left = bb.bundles[0].leftmost();
            let y = intersect_lines(bb.mapped(m), bb.mapped(left))
                .expect("distinct lines")
                .expect("a base crosser is never base-parallel");
            Ok(OrdinaryResult2D {
                point: frame.apply_inverse(&y),
                witnesses: (m, left),
                provenance: Provenance2D::ParallelY,
            })
        }
    }
}
