//! Points, hyperplanes and flats in R^d, with the exact linear algebra the
//! arrangement algorithms need: solving d×d systems, the incremental
//! maximal-independent-subset routine, and affine flat intersection.

// Elimination kernels index rows and columns directly; iterator style cannot
// read a pivot row while mutating another.
#![allow(clippy::needless_range_loop, clippy::explicit_counter_loop)]

use num::{Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{int, primitive_integer_vector, Scalar};

/// Ambient dimensions are runtime values; this cap keeps the constant-time
/// claims for fixed d honest. Enforced at the I/O and generator boundaries.
pub const MAX_DIM: usize = 16;

/// A point in R^d.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointD {
    pub coords: Vec<Scalar>,
}

impl PointD {
    pub fn new(coords: Vec<Scalar>) -> Self {
        PointD { coords }
    }

    pub fn ints(coords: &[i64]) -> Self {
        PointD::new(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

impl fmt::Display for PointD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A hyperplane `normal·x = offset` in canonical form: the normal is a
/// primitive integer vector whose first nonzero coordinate is positive, with
/// the offset scaled to match. Parallel iff equal normals, identical iff
/// equal (normal, offset); both are bit-exact comparisons.
#[derive(Debug, Clone)]
pub struct HyperplaneD {
    pub normal: Vec<Scalar>,
    pub offset: Scalar,
    pub id: usize,
}

impl PartialEq for HyperplaneD {
    fn eq(&self, other: &Self) -> bool {
        self.normal == other.normal && self.offset == other.offset
    }
}

impl Eq for HyperplaneD {}

/// Canonicalizes `normal·x = offset`.
pub fn canonical_hyperplane(normal: Vec<Scalar>, offset: Scalar) -> Result<HyperplaneD> {
    if normal.iter().all(|x| x.is_zero()) {
        return Err(Error::DegenerateLine);
    }
    let mut ints = primitive_integer_vector(&normal).expect("nonzero normal");
    let lead = (0..ints.len()).find(|&i| !ints[i].is_zero()).unwrap();
    if ints[lead].is_negative() {
        for x in &mut ints {
            *x = -std::mem::take(x);
        }
    }
    let scale = Scalar::from_integer(ints[lead].clone()) / &normal[lead];
    Ok(HyperplaneD {
        normal: ints.into_iter().map(Scalar::from_integer).collect(),
        offset: offset * scale,
        id: 0,
    })
}

impl HyperplaneD {
    pub fn from_ints(normal: &[i64], offset: i64) -> Self {
        canonical_hyperplane(normal.iter().map(|&x| int(x)).collect(), int(offset))
            .expect("non-degenerate")
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_parallel(&self, other: &HyperplaneD) -> bool {
        self.normal == other.normal
    }

    /// `normal·p − offset`; zero exactly on the hyperplane.
    pub fn eval(&self, p: &PointD) -> Scalar {
        dot(&self.normal, &p.coords) - &self.offset
    }

    pub fn contains(&self, p: &PointD) -> bool {
        self.eval(p).is_zero()
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x * y)
        .fold(int(0), |acc, t| acc + t)
}

/// An affine flat `base_point + span(directions)`, with a linearly
/// independent (not orthonormal) direction basis. A point is a flat with no
/// directions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub base_point: PointD,
    pub directions: Vec<Vec<Scalar>>,
}

impl Flat {
    pub fn point(p: PointD) -> Self {
        Flat {
            base_point: p,
            directions: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base_point.dim()
    }

    /// Point at the given coordinates with respect to the direction basis.
    pub fn at(&self, coords: &[Scalar]) -> PointD {
        debug_assert_eq!(coords.len(), self.dim());
        let mut out = self.base_point.coords.clone();
        for (lambda, dir) in coords.iter().zip(&self.directions) {
            for (o, d) in out.iter_mut().zip(dir) {
                *o += lambda * d;
            }
        }
        PointD::new(out)
    }

    /// Membership test: is `p − base` in the span of the directions?
    pub fn contains(&self, p: &PointD) -> bool {
        let d = self.ambient_dim();
        if p.dim() != d {
            return false;
        }
        // Solve directionsᵀ·λ = p − base by elimination on the d×(k+1)
        // augmented system; consistent iff p lies on the flat.
        let k = self.dim();
        let mut rows: Vec<Vec<Scalar>> = (0..d)
            .map(|i| {
                let mut row: Vec<Scalar> =
                    self.directions.iter().map(|dir| dir[i].clone()).collect();
                row.push(&p.coords[i] - &self.base_point.coords[i]);
                row
            })
            .collect();
        solve_consistent(&mut rows, k)
    }
}

/// Forward elimination on rows of width `cols + 1` (last column augmented);
/// returns whether the system is consistent.
fn solve_consistent(rows: &mut [Vec<Scalar>], cols: usize) -> bool {
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        for r in pivot_row + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &rows[pivot_row][col];
                for c in col..=cols {
                    let delta = &factor * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.iter()
        .all(|row| row[..cols].iter().any(|x| !x.is_zero()) || row[cols].is_zero())
}

/// The common point of exactly `d` hyperplanes in R^d, or `None` when their
/// normals are dependent.
pub fn solve_point(hs: &[HyperplaneD]) -> Result<Option<PointD>> {
    if hs.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let d = hs[0].dim();
    if hs.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: hs.len(),
        });
    }
    for h in hs {
        if h.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: h.dim(),
            });
        }
    }
    let mut rows: Vec<Vec<Scalar>> = hs
        .iter()
        .map(|h| {
            let mut row = h.normal.clone();
            row.push(h.offset.clone());
            row
        })
        .collect();
    Ok(solve_unique(&mut rows, d))
}

/// Gauss-Jordan on a d×(d+1) augmented system; `Some` iff the solution is
/// unique.
fn solve_unique(rows: &mut [Vec<Scalar>], d: usize) -> Option<PointD> {
    let mut pivot_cols = Vec::with_capacity(d);
    let mut pivot_row = 0;
    for col in 0..d {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            return None; // rank deficient
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].clone();
        for c in col..=d {
            rows[pivot_row][c] = &rows[pivot_row][c] / &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=d {
                    let delta = &factor * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
    }
    Some(PointD::new(
        rows.iter().take(d).map(|row| row[d].clone()).collect(),
    ))
}

/// Maximal linearly independent subset, processed incrementally in input
/// order: the working matrix never holds more than d pivot rows, dependent
/// vectors reduce to zero rows and are replaced by the next input, and the
/// scan exits early once rank d is reached. Returns input indices.
pub fn maximal_independent_subset(vs: &[Vec<Scalar>]) -> Vec<usize> {
    if vs.is_empty() {
        return Vec::new();
    }
    let d = vs[0].len();
    // (echelon row, pivot column, source index), ordered by pivot column
    let mut pivots: Vec<(Vec<Scalar>, usize, usize)> = Vec::with_capacity(d);
    let mut chosen = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        debug_assert_eq!(v.len(), d, "all vectors must share one dimension");
        let mut row = v.clone();
        for (p, col, _) in &pivots {
            if !row[*col].is_zero() {
                let factor = &row[*col] / &p[*col];
                for c in *col..d {
                    let delta = &factor * &p[c];
                    row[c] -= delta;
                }
            }
        }
        if let Some(col) = row.iter().position(|x| !x.is_zero()) {
            let at = pivots.partition_point(|(_, c, _)| *c < col);
            pivots.insert(at, (row, col, i));
            chosen.push(i);
            if pivots.len() == d {
                break;
            }
        }
    }
    chosen
}

/// The affine solution set of `rows·x = rhs` as a flat: a particular solution
/// plus a nullspace basis. `None` when inconsistent.
pub fn affine_solution_flat(equations: &[(Vec<Scalar>, Scalar)], dim: usize) -> Option<Flat> {
    let mut rows: Vec<Vec<Scalar>> = equations
        .iter()
        .map(|(n, o)| {
            debug_assert_eq!(n.len(), dim);
            let mut row = n.clone();
            row.push(o.clone());
            row
        })
        .collect();
    // Gauss-Jordan with pivot bookkeeping.
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut pivot_row = 0;
    for col in 0..dim {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let inv = rows[pivot_row][col].clone();
        for c in col..=dim {
            rows[pivot_row][c] = &rows[pivot_row][c] / &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=dim {
                    let delta = &factor * &rows[pivot_row][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    for row in rows.iter().skip(pivot_row) {
        if !row[dim].is_zero() {
            return None;
        }
    }
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; dim];
        for &c in &pivot_cols {
            v[c] = true;
        }
        v
    };
    // Particular solution: free variables at zero.
    let mut base = vec![int(0); dim];
    for (r, &col) in pivot_cols.iter().enumerate() {
        base[col] = rows[r][dim].clone();
    }
    // One nullspace basis vector per free column.
    let mut directions = Vec::new();
    for free in 0..dim {
        if is_pivot[free] {
            continue;
        }
        let mut dir = vec![int(0); dim];
        dir[free] = int(1);
        for (r, &col) in pivot_cols.iter().enumerate() {
            dir[col] = -rows[r][free].clone();
        }
        directions.push(dir);
    }
    Some(Flat {
        base_point: PointD::new(base),
        directions,
    })
}

/// Affine intersection of two flats, or `None` when empty.
pub fn intersect_flats(f1: &Flat, f2: &Flat) -> Option<Flat> {
    let d = f1.ambient_dim();
    assert_eq!(d, f2.ambient_dim(), "flats must share the ambient space");
    let k1 = f1.dim();
    let k2 = f2.dim();
    // Solve [D1 | -D2]·(λ, μ) = p2 − p1; the intersection is p1 + D1·λ over
    // the solution set. Nullspace directions map to independent directions of
    // the intersection because D1 has independent columns.
    let cols = k1 + k2;
    let mut rows: Vec<Vec<Scalar>> = (0..d)
        .map(|i| {
            let mut row: Vec<Scalar> = Vec::with_capacity(cols + 1);
            for dir in &f1.directions {
                row.push(dir[i].clone());
            }
            for dir in &f2.directions {
                row.push(-dir[i].clone());
            }
            row.push(&f2.base_point.coords[i] - &f1.base_point.coords[i]);
            row
        })
        .collect();
    let equations: Vec<(Vec<Scalar>, Scalar)> = rows
        .iter_mut()
        .map(|row| {
            let rhs = row.pop().unwrap();
            (std::mem::take(row), rhs)
        })
        .collect();
    let sols = affine_solution_flat(&equations, cols)?;
    let lambda0 = &sols.base_point.coords[..k1];
    let base = f1.at(lambda0);
    let directions: Vec<Vec<Scalar>> = sols
        .directions
        .iter()
        .map(|v| {
            let lambda = &v[..k1];
            let mut dir = vec![int(0); d];
            for (coef, fdir) in lambda.iter().zip(&f1.directions) {
                for (o, x) in dir.iter_mut().zip(fdir) {
                    *o += coef * x;
                }
            }
            dir
        })
        .collect();
    Some(Flat {
        base_point: base,
        directions,
    })
}

/// A hyperplane as a flat of dimension d−1.
pub fn hyperplane_flat(h: &HyperplaneD) -> Flat {
    affine_solution_flat(&[(h.normal.clone(), h.offset.clone())], h.dim())
        .expect("a hyperplane is never empty")
}
