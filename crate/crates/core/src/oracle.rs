//! Brute-force ground truth: exhaustive intersection enumeration with exact
//! grouping, ordinary/monochromatic classification, and the hypothesis
//! checkers for the d-dimensional search. Everything here is desk-scale by
//! design and deliberately independent of the fast algorithms it audits.

use num::Zero;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::plane::{intersect_lines, Color, Line2, Point2};
use crate::pseudolines::{intersect_pseudolines, Pseudoline};
use crate::scalar::Scalar;
use crate::space::{solve_point, HyperplaneD, PointD};

/// Every intersection point of an arrangement with the sorted list of
/// incident element indices; grouping is by exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMap<P> {
    pub entries: Vec<(P, Vec<usize>)>,
}

impl<P> IncidenceMap<P> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Incident indices at one point, if it is an intersection point.
    pub fn incident(&self, point: &P) -> Option<&[usize]>
    where
        P: Ord,
    {
        self.entries
            .binary_search_by(|(p, _)| p.cmp(point))
            .ok()
            .map(|i| self.entries[i].1.as_slice())
    }
}

fn group<P: Ord>(pairs: impl IntoIterator<Item = (P, usize)>) -> IncidenceMap<P> {
    let mut map: BTreeMap<P, Vec<usize>> = BTreeMap::new();
    for (p, idx) in pairs {
        map.entry(p).or_default().push(idx);
    }
    let entries = map
        .into_iter()
        .map(|(p, mut v)| {
            v.sort_unstable();
            v.dedup();
            (p, v)
        })
        .collect();
    IncidenceMap { entries }
}

/// All pairwise line crossings, grouped by point. O(n²).
pub fn enumerate_lines(lines: &[Line2]) -> Result<IncidenceMap<Point2>> {
    let mut pairs = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = intersect_lines(&lines[i], &lines[j])? {
                pairs.push((p.clone(), i));
                pairs.push((p, j));
            }
        }
    }
    Ok(group(pairs))
}

/// All pairwise pseudoline crossings, grouped by point; a pair without
/// exactly one crossing is an invalid arrangement. O(n² · S).
pub fn enumerate_pseudolines(ps: &[Pseudoline]) -> Result<IncidenceMap<Point2>> {
    let mut pairs = Vec::new();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            let p = match intersect_pseudolines(&ps[i], &ps[j]) {
                Ok(p) => p,
                Err(Error::NoCrossing(..)) => return Err(Error::NoCrossing(i, j)),
                Err(Error::MultipleCrossings(..)) => return Err(Error::MultipleCrossings(i, j)),
                Err(e) => return Err(e),
            };
            pairs.push((p.clone(), i));
            pairs.push((p, j));
        }
    }
    Ok(group(pairs))
}

fn binomial_capped(n: usize, k: usize, cap: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
        if acc > cap {
            return cap + 1;
        }
    }
    acc
}

/// Every point determined by some d-subset with independent normals, with
/// its incident list recomputed against all hyperplanes, so a point on d+1
/// hyperplanes appears once with d+1 incidences. Capped at C(n,d) ≤ 10⁷.
pub fn enumerate_hyperplanes(hs: &[HyperplaneD]) -> Result<IncidenceMap<PointD>> {
    if hs.is_empty() {
        return Ok(IncidenceMap {
            entries: Vec::new(),
        });
    }
    let d = hs[0].dim();
    const CAP: u128 = 10_000_000;
    if binomial_capped(hs.len(), d, CAP) > CAP {
        return Err(Error::OracleCapExceeded(format!(
            "C({}, {d}) exceeds 10^7 subsets",
            hs.len()
        )));
    }
    let mut points: BTreeMap<PointD, ()> = BTreeMap::new();
    let mut subset: Vec<usize> = (0..d).collect();
    let n = hs.len();
    if n < d {
        return Ok(IncidenceMap {
            entries: Vec::new(),
        });
    }
    loop {
        let chosen: Vec<HyperplaneD> = subset.iter().map(|&i| hs[i].clone()).collect();
        if let Some(p) = solve_point(&chosen)? {
            points.insert(p, ());
        }
        // next d-combination in lexicographic order
        let mut i = d;
        loop {
            if i == 0 {
                let entries = points
                    .into_keys()
                    .map(|p| {
                        let incident: Vec<usize> = hs
                            .iter()
                            .enumerate()
                            .filter(|(_, h)| h.contains(&p))
                            .map(|(k, _)| k)
                            .collect();
                        (p, incident)
                    })
                    .collect();
                return Ok(IncidenceMap { entries });
            }
            i -= 1;
            if subset[i] != i + n - d {
                subset[i] += 1;
                for j in i + 1..d {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Classification of an incidence map: how many points are ordinary (exactly
/// `arity` incidences — 2 in the plane, d for hyperplanes), the degree
/// sequence, and the monochromatic points per color when colors are given.
#[derive(Debug, Clone, Default)]
pub struct Classification {
    pub ordinary_count: usize,
    pub degrees: Vec<usize>,
    pub monochromatic_red: Vec<usize>,
    pub monochromatic_blue: Vec<usize>,
}

pub fn classify<P>(
    map: &IncidenceMap<P>,
    arity: usize,
    colors: Option<&[Option<Color>]>,
) -> Classification {
    let mut out = Classification::default();
    for (entry_idx, (_, incident)) in map.entries.iter().enumerate() {
        out.degrees.push(incident.len());
        if incident.len() == arity {
            out.ordinary_count += 1;
        }
        if let Some(colors) = colors {
            let mut all_red = true;
            let mut all_blue = true;
            for &k in incident {
                match colors[k] {
                    Some(Color::Red) => all_blue = false,
                    Some(Color::Blue) => all_red = false,
                    None => {
                        all_red = false;
                        all_blue = false;
                    }
                }
            }
            if all_red {
                out.monochromatic_red.push(entry_idx);
            }
            if all_blue {
                out.monochromatic_blue.push(entry_idx);
            }
        }
    }
    out
}

/// Rank of a set of vectors by full Gaussian elimination over the whole
/// matrix; the independent check against the incremental subset routine.
#[allow(clippy::needless_range_loop)]
pub fn rank_by_elimination(vs: &[Vec<Scalar>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    let d = vs[0].len();
    let mut rows: Vec<Vec<Scalar>> = vs.to_vec();
    let mut rank = 0;
    for col in 0..d {
        let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, r);
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &rows[rank][col];
                for c in col..d {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] -= delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exhaustive verification of the three hypotheses of the d-dimensional
/// search. O(C(n,d) · d³); test-scale only.
#[derive(Debug, Clone)]
pub struct HypothesesReport {
    pub normal_rank: usize,
    pub all_parallel: bool,
    /// A point common to every hyperplane, when one exists.
    pub common_point: Option<PointD>,
    /// d-subsets whose intersection is at least a line (violations of
    /// "no d through a line"), capped at 16 reported subsets.
    pub d_through_line: Vec<Vec<usize>>,
}

impl HypothesesReport {
    pub fn ok(&self) -> bool {
        !self.all_parallel && self.common_point.is_none() && self.d_through_line.is_empty()
    }
}

pub fn check_hypotheses_nd(hs: &[HyperplaneD]) -> HypothesesReport {
    let d = if hs.is_empty() { 0 } else { hs[0].dim() };
    let normals: Vec<Vec<Scalar>> = hs.iter().map(|h| h.normal.clone()).collect();
    let normal_rank = rank_by_elimination(&normals);
    let all_parallel = !hs.is_empty() && hs.iter().all(|h| h.is_parallel(&hs[0]));

    // A common point exists iff the full stacked system is consistent.
    let equations: Vec<(Vec<Scalar>, Scalar)> = hs
        .iter()
        .map(|h| (h.normal.clone(), h.offset.clone()))
        .collect();
    let common_point = crate::space::affine_solution_flat(&equations, d).map(|f| f.base_point);

    let mut d_through_line = Vec::new();
    if hs.len() >= d && d >= 2 {
        let n = hs.len();
        let mut subset: Vec<usize> = (0..d).collect();
        'outer: loop {
            // Full-rank subsets meet in at most a point; only rank-deficient
            // ones can share a line, and they are rare enough that the flat
            // solve runs on a small fraction of subsets.
            let normals: Vec<Vec<Scalar>> = subset.iter().map(|&i| hs[i].normal.clone()).collect();
            if rank_by_elimination(&normals) < d {
                let eqs: Vec<(Vec<Scalar>, Scalar)> = subset
                    .iter()
                    .map(|&i| (hs[i].normal.clone(), hs[i].offset.clone()))
                    .collect();
                if let Some(flat) = crate::space::affine_solution_flat(&eqs, d) {
                    if flat.dim() >= 1 {
                        d_through_line.push(subset.clone());
                        if d_through_line.len() >= 16 {
                            break 'outer;
                        }
                    }
                }
            }
            let mut i = d;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                if subset[i] != i + n - d {
                    subset[i] += 1;
                    for j in i + 1..d {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    HypothesesReport {
        normal_rank,
        all_parallel,
        common_point,
        d_through_line,
    }
}
