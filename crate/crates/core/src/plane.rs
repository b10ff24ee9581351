//! Planar primitives: points, lines in canonical form, incidence and side
//! predicates, and exact affine frames.

use num::{Signed, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{int, primitive_integer_vector, Scalar};

/// Two-coloring used by the bichromatic algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Red,
    Blue,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Color::Red => write!(f, "red"),
            Color::Blue => write!(f, "blue"),
        }
    }
}

/// Which side of a line a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    On,
    Negative,
}

/// A point in the plane with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point2 {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point2 {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point2 { x, y }
    }

    /// Point with small integer coordinates; convenient in tests.
    pub fn ints(x: i64, y: i64) -> Self {
        Point2::new(int(x), int(y))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A line `a·x + b·y = c` in canonical form: `(a, b)` is a primitive integer
/// vector whose first nonzero entry is positive, with `c` scaled to match.
/// Two lines are parallel iff their `(a, b)` parts are equal and identical
/// iff the whole triples are equal, so both tests are bit-exact comparisons.
#[derive(Debug, Clone)]
pub struct Line2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub color: Option<Color>,
    pub id: usize,
}

impl PartialEq for Line2 {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && self.c == other.c
    }
}

impl Eq for Line2 {}

impl fmt::Display for Line2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, self.c)
    }
}

/// Canonicalizes `a·x + b·y = c`.
pub fn canonical_line(a: Scalar, b: Scalar, c: Scalar) -> Result<Line2> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::DegenerateLine);
    }
    let mut ints = primitive_integer_vector(&[a.clone(), b.clone()]).expect("nonzero normal");
    let lead = (0..2).find(|&i| !ints[i].is_zero()).unwrap();
    if ints[lead].is_negative() {
        for x in &mut ints {
            *x = -std::mem::take(x);
        }
    }
    // The whole equation is scaled by prim_lead / lead, offset included.
    let originals = [a, b];
    let scale = Scalar::from_integer(ints[lead].clone()) / &originals[lead];
    let mut it = ints.into_iter().map(Scalar::from_integer);
    Ok(Line2 {
        a: it.next().unwrap(),
        b: it.next().unwrap(),
        c: c * scale,
        color: None,
        id: 0,
    })
}

impl Line2 {
    /// Line through integer coefficients, for tests and generators.
    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        canonical_line(int(a), int(b), int(c)).expect("non-degenerate")
    }

    pub fn with_color(mut self, color: Option<Color>) -> Self {
        self.color = color;
        self
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn is_parallel(&self, other: &Line2) -> bool {
        self.a == other.a && self.b == other.b
    }

    /// `a·x + b·y - c` for a point; zero exactly on the line.
    pub fn eval(&self, p: &Point2) -> Scalar {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }
}

/// Sign of `a·px + b·py − c`.
pub fn side_of_line(l: &Line2, p: &Point2) -> Side {
    let v = l.eval(p);
    if v.is_zero() {
        Side::On
    } else if v.is_positive() {
        Side::Positive
    } else {
        Side::Negative
    }
}

/// The unique intersection point of two distinct lines, or `None` when
/// parallel. Identical lines are an error.
pub fn intersect_lines(l1: &Line2, l2: &Line2) -> Result<Option<Point2>> {
    if l1 == l2 {
        return Err(Error::IdenticalLines);
    }
    if l1.is_parallel(l2) {
        return Ok(None);
    }
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    let x = (&l1.c * &l2.b - &l2.c * &l1.b) / &det;
    let y = (&l1.a * &l2.c - &l2.a * &l1.c) / &det;
    Ok(Some(Point2::new(x, y)))
}

/// An invertible affine map of the plane, stored together with its exact
/// inverse. `apply` computes `M·p + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap2 {
    m: [[Scalar; 2]; 2],
    t: [Scalar; 2],
    m_inv: [[Scalar; 2]; 2],
    t_inv: [Scalar; 2],
}

impl AffineMap2 {
    fn new(m: [[Scalar; 2]; 2], t: [Scalar; 2]) -> Self {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        assert!(!det.is_zero(), "affine map must be invertible");
        let m_inv = [
            [&m[1][1] / &det, -(&m[0][1] / &det)],
            [-(&m[1][0] / &det), &m[0][0] / &det],
        ];
        // inverse translation: -M⁻¹ t
        let t_inv = [
            -(&m_inv[0][0] * &t[0] + &m_inv[0][1] * &t[1]),
            -(&m_inv[1][0] * &t[0] + &m_inv[1][1] * &t[1]),
        ];
        AffineMap2 { m, t, m_inv, t_inv }
    }

    pub fn identity() -> Self {
        let one = int(1);
        let zero = int(0);
        AffineMap2::new(
            [[one.clone(), zero.clone()], [zero.clone(), one]],
            [zero.clone(), zero],
        )
    }

    pub fn apply(&self, p: &Point2) -> Point2 {
        Point2::new(
            &self.m[0][0] * &p.x + &self.m[0][1] * &p.y + &self.t[0],
            &self.m[1][0] * &p.x + &self.m[1][1] * &p.y + &self.t[1],
        )
    }

    pub fn apply_inverse(&self, p: &Point2) -> Point2 {
        Point2::new(
            &self.m_inv[0][0] * &p.x + &self.m_inv[0][1] * &p.y + &self.t_inv[0],
            &self.m_inv[1][0] * &p.x + &self.m_inv[1][1] * &p.y + &self.t_inv[1],
        )
    }

    /// Image of a line under the map: substituting `q = M⁻¹q' + t_inv` into
    /// `r·q = c` gives `(r M⁻¹)·q' = c − r·t_inv`. Color and id are preserved.
    pub fn transform_line(&self, l: &Line2) -> Line2 {
        let a = &l.a * &self.m_inv[0][0] + &l.b * &self.m_inv[1][0];
        let b = &l.a * &self.m_inv[0][1] + &l.b * &self.m_inv[1][1];
        let c = &l.c - (&l.a * &self.t_inv[0] + &l.b * &self.t_inv[1]);
        canonical_line(a, b, c)
            .expect("affine image of a line is a line")
            .with_color(l.color)
            .with_id(l.id)
    }
}

/// An exact invertible affine frame sending `l0` to the x-axis with the
/// witness mapped to positive y.
pub fn base_frame(l0: &Line2, witness: &Point2) -> Result<AffineMap2> {
    let w = l0.eval(witness);
    if w.is_zero() {
        return Err(Error::WitnessOnLine);
    }
    // u runs along the line, n is the normal; flip n so the witness maps above.
    let u = [l0.b.clone(), -l0.a.clone()];
    let n = if w.is_positive() {
        [l0.a.clone(), l0.b.clone()]
    } else {
        [-l0.a.clone(), -l0.b.clone()]
    };
    // A point on the line.
    let p0 = if !l0.b.is_zero() {
        Point2::new(int(0), &l0.c / &l0.b)
    } else {
        Point2::new(&l0.c / &l0.a, int(0))
    };
    let m = [u.clone(), n.clone()];
    let t = [
        -(&u[0] * &p0.x + &u[1] * &p0.y),
        -(&n[0] * &p0.x + &n[1] * &p0.y),
    ];
    Ok(AffineMap2::new(m, t))
}
