//! Ordinary intersection points in an arrangement of hyperplanes in R^d, in
//! O(n log n), by reducing to the planar algorithm on a 2-flat.
//!
//! Pipeline: sort the (canonical) normals lexicographically into parallel
//! families; take a maximal independent subset of the family normals — rank
//! below d means no intersection point exists at all; intersect one member of
//! each of the first d−2 basis families into a 2-flat M; trace the remaining
//! families onto M as lines and find an ordinary point of that planar
//! arrangement. If the traces are all concurrent, a parallel translate M'
//! obtained by swapping in an alternative member of a constituent family
//! breaks the tie, or the concurrency is a hypothesis violation.

use num::Zero;
use std::collections::BTreeMap;

use crate::arrangement2d::find_ordinary_point_2d;
use crate::error::{Error, Result};
use crate::plane::{canonical_line, Line2};
use crate::scalar::Scalar;
use crate::space::{
    affine_solution_flat, dot, hyperplane_flat, maximal_independent_subset, Flat, HyperplaneD,
    PointD,
};

/// The parallelism partition: families of mutually parallel hyperplanes in
/// lexicographic order of their shared canonical normal.
#[derive(Debug, Clone)]
pub struct FamilyPartition {
    pub families: Vec<Vec<usize>>,
    pub family_normals: Vec<Vec<Scalar>>,
}

/// Sorts hyperplanes lexicographically by canonical normal into parallel
/// families. O(n log n).
pub fn partition_families(hs: &[HyperplaneD]) -> Result<FamilyPartition> {
    let mut first_seen: BTreeMap<(&[Scalar], &Scalar), usize> = BTreeMap::new();
    let mut groups: BTreeMap<&[Scalar], Vec<usize>> = BTreeMap::new();
    for (i, h) in hs.iter().enumerate() {
        if let Some(&j) = first_seen.get(&(h.normal.as_slice(), &h.offset)) {
            return Err(Error::DuplicateHyperplane(j, i));
        }
        first_seen.insert((h.normal.as_slice(), &h.offset), i);
        groups.entry(h.normal.as_slice()).or_default().push(i);
    }
    let mut families = Vec::with_capacity(groups.len());
    let mut family_normals = Vec::with_capacity(groups.len());
    for (normal, members) in groups {
        family_normals.push(normal.to_vec());
        families.push(members);
    }
    Ok(FamilyPartition {
        families,
        family_normals,
    })
}

/// How the d-dimensional search concluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProvenanceNd {
    /// The planar algorithm succeeded on the first 2-flat M.
    Case3OnM,
    /// Concurrent traces on M; the translate M' carried the ordinary point.
    Case2ThenMPrime,
    /// Concurrent traces on M with no alternative constituent member; the
    /// search restricted into a hyperplane that misses M (d ≥ 4 only).
    Case2Restricted,
}

impl ProvenanceNd {
    pub fn as_str(self) -> &'static str {
        match self {
            ProvenanceNd::Case3OnM => "case3_on_m",
            ProvenanceNd::Case2ThenMPrime => "case2_then_m_prime",
            ProvenanceNd::Case2Restricted => "case2_restricted",
        }
    }
}

/// Counters for the pipeline's rare paths; tests use these to prove coverage.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct NdDiagnostics {
    /// Hyperplanes with an empty trace on M (normal inside the constituent
    /// span but offset inconsistent); possible only for d ≥ 4.
    pub empty_traces_skipped: usize,
    pub case2_fired: bool,
    pub rebuilt_m_prime: bool,
    pub restricted_recursion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinaryResultNd {
    pub point: PointD,
    /// Exactly d hyperplane indices through the point.
    pub witnesses: Vec<usize>,
    pub provenance: ProvenanceNd,
    pub diagnostics: NdDiagnostics,
}

/// Outcome of the d-dimensional search: an ordinary point, or the verdict
/// that the normals do not span R^d so no intersection point exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NdOutcome {
    Ordinary(OrdinaryResultNd),
    NoIntersectionPoint,
}

struct Trace {
    line: Line2,
    source: usize,
}

/// Traces every member of the given families onto the 2-flat. Hyperplanes
/// that miss the flat entirely are skipped and counted; a hyperplane
/// containing the flat, or two hyperplanes tracing the same line, violate
/// the no-d-through-a-line hypothesis.
fn build_traces(
    hs: &[HyperplaneD],
    families: &[Vec<usize>],
    trace_families: &[usize],
    flat: &Flat,
    skipped: &mut usize,
) -> Result<Vec<Trace>> {
    debug_assert_eq!(flat.dim(), 2);
    let u = &flat.directions[0];
    let v = &flat.directions[1];
    let mut traces: Vec<Trace> = Vec::new();
    let mut seen: BTreeMap<(Scalar, Scalar, Scalar), usize> = BTreeMap::new();
    for &f in trace_families {
        for &k in &families[f] {
            let h = &hs[k];
            let a = dot(&h.normal, u);
            let b = dot(&h.normal, v);
            let c = &h.offset - dot(&h.normal, &flat.base_point.coords);
            if a.is_zero() && b.is_zero() {
                if c.is_zero() {
                    return Err(Error::HypothesisViolated(format!(
                        "hyperplane {k} contains the 2-flat spanned by the constituents"
                    )));
                }
                *skipped += 1;
                continue;
            }
            let line = canonical_line(a, b, c)?.with_id(traces.len());
            let key = (line.a.clone(), line.b.clone(), line.c.clone());
            if let Some(&prev) = seen.get(&key) {
                return Err(Error::HypothesisViolated(format!(
                    "hyperplanes {prev} and {k} trace the same line on the 2-flat"
                )));
            }
            seen.insert(key, k);
            traces.push(Trace { line, source: k });
        }
    }
    Ok(traces)
}

/// Common point of all traces if they are at least three and concurrent.
fn concurrency_point(traces: &[Trace]) -> Option<crate::plane::Point2> {
    if traces.len() < 3 {
        return None;
    }
    let first = &traces[0].line;
    let other = traces.iter().find(|t| !t.line.is_parallel(first))?;
    let p = crate::plane::intersect_lines(first, &other.line)
        .expect("distinct traces")
        .expect("non-parallel");
    traces
        .iter()
        .all(|t| t.line.eval(&p).is_zero())
        .then_some(p)
}

/// Runs the planar algorithm on the traces and lifts the result back to R^d.
fn solve_on_flat(
    traces: &[Trace],
    flat: &Flat,
    constituents: &[usize],
    provenance: ProvenanceNd,
    diagnostics: NdDiagnostics,
) -> Result<NdOutcome> {
    let lines: Vec<Line2> = traces.iter().map(|t| t.line.clone()).collect();
    let planar = find_ordinary_point_2d(&lines).map_err(|e| match e {
        // The traced arrangement always contains two non-parallel lines and
        // concurrency was handled before reaching this call.
        Error::AllParallel | Error::AllConcurrent | Error::NotAnArrangement(_) => {
            unreachable!("planar subproblem violates established invariants: {e}")
        }
        other => other,
    })?;
    let point = flat.at(&[planar.point.x, planar.point.y]);
    let mut witnesses = constituents.to_vec();
    witnesses.push(traces[planar.witnesses.0].source);
    witnesses.push(traces[planar.witnesses.1].source);
    Ok(NdOutcome::Ordinary(OrdinaryResultNd {
        point,
        witnesses,
        provenance,
        diagnostics,
    }))
}

/// Restriction of the arrangement into the hyperplane `hs[e]`, which misses
/// the current 2-flat: every ordinary point left to find lies on such a
/// hyperplane, and inside it the problem is the same one in dimension d−1.
fn restrict_into_hyperplane(
    hs: &[HyperplaneD],
    e: usize,
    diag: NdDiagnostics,
) -> Result<NdOutcome> {
    let flat = hyperplane_flat(&hs[e]);
    let dim = flat.dim();
    let mut sub: Vec<HyperplaneD> = Vec::with_capacity(hs.len() - 1);
    let mut sources: Vec<usize> = Vec::with_capacity(hs.len() - 1);
    let mut seen: BTreeMap<(Vec<Scalar>, Scalar), usize> = BTreeMap::new();
    for (k, h) in hs.iter().enumerate() {
        if k == e {
            continue;
        }
        let normal: Vec<Scalar> = flat.directions.iter().map(|u| dot(&h.normal, u)).collect();
        let offset = &h.offset - dot(&h.normal, &flat.base_point.coords);
        if normal.iter().all(|x| x.is_zero()) {
            debug_assert!(!offset.is_zero(), "distinct hyperplanes cannot coincide");
            continue; // parallel to hs[e]; contains none of its points
        }
        let ch = crate::space::canonical_hyperplane(normal, offset)?.with_id(sub.len());
        let key = (ch.normal.clone(), ch.offset.clone());
        if let Some(&prev) = seen.get(&key) {
            return Err(Error::HypothesisViolated(format!(
                "hyperplanes {prev} and {k} meet hyperplane {e} in the same (d-2)-flat"
            )));
        }
        seen.insert(key, k);
        sub.push(ch);
        sources.push(k);
    }
    debug_assert!(sub.len() >= dim, "restriction keeps full rank");
    match find_ordinary_point_nd(&sub) {
        Ok(NdOutcome::Ordinary(r)) => {
            let point = flat.at(&r.point.coords);
            let mut witnesses = vec![e];
            witnesses.extend(r.witnesses.iter().map(|&w| sources[w]));
            Ok(NdOutcome::Ordinary(OrdinaryResultNd {
                point,
                witnesses,
                provenance: ProvenanceNd::Case2Restricted,
                diagnostics: NdDiagnostics {
                    empty_traces_skipped: diag.empty_traces_skipped
                        + r.diagnostics.empty_traces_skipped,
                    case2_fired: true,
                    rebuilt_m_prime: diag.rebuilt_m_prime || r.diagnostics.rebuilt_m_prime,
                    restricted_recursion: true,
                },
            }))
        }
        // The full normals span R^d, so the restriction spans the facet and
        // an intersection point exists there; these outcomes only arise when
        // the input violated the stated hypotheses.
        Ok(NdOutcome::NoIntersectionPoint) => Err(Error::HypothesisViolated(
            "rank-deficient restriction of a spanning arrangement".into(),
        )),
        Err(Error::AllConcurrent) => Err(Error::HypothesisViolated(
            "restricted arrangement concurrent: d hyperplanes share a line".into(),
        )),
        Err(e) => Err(e),
    }
}

/// Finds a point lying on exactly d hyperplanes, or reports that the
/// arrangement has no intersection point at all. The caller asserts the
/// hypotheses (not all parallel, not all through one point, no d through a
/// line); violations are surfaced where the case analysis meets them.
pub fn find_ordinary_point_nd(hs: &[HyperplaneD]) -> Result<NdOutcome> {
    if hs.is_empty() {
        return Err(Error::NotAnArrangement("empty hyperplane set".into()));
    }
    let d = hs[0].dim();
    if d < 2 {
        return Err(Error::NotAnArrangement(format!(
            "ambient dimension {d} below 2"
        )));
    }
    for h in hs {
        if h.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: h.dim(),
            });
        }
    }
    if hs.len() < d {
        return Err(Error::NotAnArrangement(format!(
            "need at least d = {d} hyperplanes, got {}",
            hs.len()
        )));
    }

    let partition = partition_families(hs)?;
    let basis = maximal_independent_subset(&partition.family_normals);
    if basis.len() < d {
        return Ok(NdOutcome::NoIntersectionPoint);
    }

    if d == 2 {
        let lines: Vec<Line2> = hs
            .iter()
            .enumerate()
            .map(|(i, h)| {
                canonical_line(h.normal[0].clone(), h.normal[1].clone(), h.offset.clone())
                    .map(|l| l.with_id(i))
            })
            .collect::<Result<_>>()?;
        let planar = find_ordinary_point_2d(&lines)?;
        return Ok(NdOutcome::Ordinary(OrdinaryResultNd {
            point: PointD::new(vec![planar.point.x, planar.point.y]),
            witnesses: vec![planar.witnesses.0, planar.witnesses.1],
            provenance: ProvenanceNd::Case3OnM,
            diagnostics: NdDiagnostics::default(),
        }));
    }

    let constituent_families = &basis[..d - 2];
    let constituents: Vec<usize> = constituent_families
        .iter()
        .map(|&f| partition.families[f][0])
        .collect();
    let trace_families: Vec<usize> = (0..partition.families.len())
        .filter(|f| !constituent_families.contains(f))
        .collect();

    let m_flat = build_2flat(hs, &constituents);
    let mut diag = NdDiagnostics::default();
    let traces = build_traces(
        hs,
        &partition.families,
        &trace_families,
        &m_flat,
        &mut diag.empty_traces_skipped,
    )?;
    assert_basis_traces_cross(&partition, &basis[d - 2..], &traces);

    if concurrency_point(&traces).is_none() {
        return solve_on_flat(
            &traces,
            &m_flat,
            &constituents,
            ProvenanceNd::Case3OnM,
            diag,
        );
    }
    diag.case2_fired = true;

    // Case 2: all traces meet at one point of M. A parallel translate of M
    // through an alternative member of a constituent family separates them,
    // or its absence decides the outcome.
    let alternative = constituent_families
        .iter()
        .enumerate()
        .find(|(_, &f)| partition.families[f].len() >= 2)
        .map(|(slot, &f)| (slot, partition.families[f][1]));

    match alternative {
        Some((slot, member)) => {
            diag.rebuilt_m_prime = true;
            let mut constituents_prime = constituents.clone();
            constituents_prime[slot] = member;
            let m_prime = build_2flat(hs, &constituents_prime);
            let mut skipped_prime = 0;
            let traces_prime = build_traces(
                hs,
                &partition.families,
                &trace_families,
                &m_prime,
                &mut skipped_prime,
            )?;
            debug_assert_eq!(skipped_prime, diag.empty_traces_skipped);
            if concurrency_point(&traces_prime).is_some() {
                // Concurrent on both translates: the tracing hyperplanes and
                // the shared constituents all contain the line p p'.
                return Err(Error::HypothesisViolated(
                    "traces concurrent on both M and M': d hyperplanes share a line".into(),
                ));
            }
            solve_on_flat(
                &traces_prime,
                &m_prime,
                &constituents_prime,
                ProvenanceNd::Case2ThenMPrime,
                diag,
            )
        }
        None => {
            // Every family traced through p is a singleton and no constituent
            // family has a second member. Without skipped hyperplanes this
            // means every hyperplane passes through p.
            if diag.empty_traces_skipped == 0 {
                return Err(Error::AllConcurrent);
            }
            // Skipped hyperplanes miss p, and any remaining ordinary point
            // lies on one of them; recurse inside the first.
            let e = (0..hs.len())
                .find(|&k| {
                    !constituents.contains(&k) && {
                        let h = &hs[k];
                        let a = dot(&h.normal, &m_flat.directions[0]);
                        let b = dot(&h.normal, &m_flat.directions[1]);
                        a.is_zero()
                            && b.is_zero()
                            && !(&h.offset - dot(&h.normal, &m_flat.base_point.coords)).is_zero()
                    }
                })
                .expect("a skipped hyperplane exists");
            restrict_into_hyperplane(hs, e, diag)
        }
    }
}

/// Intersection of the constituent hyperplanes; a 2-flat whenever their
/// normals are independent.
fn build_2flat(hs: &[HyperplaneD], constituents: &[usize]) -> Flat {
    let equations: Vec<(Vec<Scalar>, Scalar)> = constituents
        .iter()
        .map(|&k| (hs[k].normal.clone(), hs[k].offset.clone()))
        .collect();
    let d = hs[0].dim();
    let flat =
        affine_solution_flat(&equations, d).expect("independent normals always admit a solution");
    debug_assert_eq!(flat.dim(), 2);
    flat
}

/// The traces of the two basis families outside the constituents are never
/// parallel: if they were, one of their normals would fall into the span of
/// the constituent normals plus the other, contradicting independence.
fn assert_basis_traces_cross(partition: &FamilyPartition, basis_rest: &[usize], traces: &[Trace]) {
    debug_assert_eq!(basis_rest.len(), 2);
    let members: Vec<usize> = basis_rest
        .iter()
        .map(|&f| partition.families[f][0])
        .collect();
    let t1 = traces.iter().find(|t| t.source == members[0]);
    let t2 = traces.iter().find(|t| t.source == members[1]);
    match (t1, t2) {
        (Some(t1), Some(t2)) => {
            assert!(
                !t1.line.is_parallel(&t2.line),
                "basis family traces must cross; the normals cannot span R^d"
            );
        }
        _ => unreachable!("basis family members always trace onto the flat"),
    }
}
