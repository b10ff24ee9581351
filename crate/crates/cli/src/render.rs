//! SVG rendering of planar arrangements. The viewport is the bounding box of
//! all intersection points (plus line anchors and polyline vertices) with a
//! 10% margin; exact rationals become decimals only at this boundary.

use num::ToPrimitive;

use ordinary_core::oracle::{enumerate_lines, enumerate_pseudolines};
use ordinary_core::plane::{Color, Line2, Point2};
use ordinary_core::pseudolines::Pseudoline;
use ordinary_core::scalar::Scalar;
use ordinary_core::Result;

fn to_f64(x: &Scalar) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

#[derive(Debug, Clone, Copy)]
struct Viewport {
    x0: f64,
    y0: f64,
    x1: f64,
    y1: f64,
}

impl Viewport {
    fn from_points(pts: impl IntoIterator<Item = (f64, f64)>) -> Viewport {
        let mut x0 = f64::INFINITY;
        let mut y0 = f64::INFINITY;
        let mut x1 = f64::NEG_INFINITY;
        let mut y1 = f64::NEG_INFINITY;
        for (x, y) in pts {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
        if !x0.is_finite() {
            (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
        }
        // 10% margin, never a degenerate extent.
        let dx = (x1 - x0).max(1.0);
        let dy = (y1 - y0).max(1.0);
        Viewport {
            x0: x0 - 0.1 * dx,
            y0: y0 - 0.1 * dy,
            x1: x1 + 0.1 * dx,
            y1: y1 + 0.1 * dy,
        }
    }

    fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    fn height(&self) -> f64 {
        self.y1 - self.y0
    }
}

fn stroke(color: Option<Color>) -> &'static str {
    match color {
        Some(Color::Red) => "#c0392b",
        Some(Color::Blue) => "#2e6da4",
        None => "#333333",
    }
}

/// Clips `a·x + b·y = c` against the viewport rectangle; `None` if the line
/// misses it.
fn clip_line(l: &Line2, vp: &Viewport) -> Option<((f64, f64), (f64, f64))> {
    let a = to_f64(&l.a);
    let b = to_f64(&l.b);
    let c = to_f64(&l.c);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let eps = 1e-9 * (vp.width() + vp.height());
    if b.abs() > 1e-12 {
        for x in [vp.x0, vp.x1] {
            let y = (c - a * x) / b;
            if y >= vp.y0 - eps && y <= vp.y1 + eps {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-12 {
        for y in [vp.y0, vp.y1] {
            let x = (c - b * y) / a;
            if x >= vp.x0 - eps && x <= vp.x1 + eps {
                hits.push((x, y));
            }
        }
    }
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < eps && (p.1 - q.1).abs() < eps);
    if hits.len() < 2 {
        return None;
    }
    let (mut best, mut pair) = (0.0f64, (hits[0], hits[1]));
    for i in 0..hits.len() {
        for j in i + 1..hits.len() {
            let d = (hits[i].0 - hits[j].0).powi(2) + (hits[i].1 - hits[j].1).powi(2);
            if d > best {
                best = d;
                pair = (hits[i], hits[j]);
            }
        }
    }
    Some(pair)
}

struct Svg {
    vp: Viewport,
    body: String,
}

impl Svg {
    fn new(vp: Viewport) -> Svg {
        Svg {
            vp,
            body: String::new(),
        }
    }

    // SVG y grows downward; flip so the picture reads like the plane.
    fn flip(&self, y: f64) -> f64 {
        self.vp.y0 + self.vp.y1 - y
    }

    fn segment(&mut self, p: (f64, f64), q: (f64, f64), color: &str, width: f64) {
        self.body.push_str(&format!(
            "  <line x1=\"{:.4}\" y1=\"{:.4}\" x2=\"{:.4}\" y2=\"{:.4}\" stroke=\"{}\" stroke-width=\"{:.4}\"/>\n",
            p.0,
            self.flip(p.1),
            q.0,
            self.flip(q.1),
            color,
            width
        ));
    }

    fn polyline(&mut self, pts: &[(f64, f64)], color: &str, width: f64) {
        let coords: Vec<String> = pts
            .iter()
            .map(|(x, y)| format!("{:.4},{:.4}", x, self.flip(*y)))
            .collect();
        self.body.push_str(&format!(
            "  <polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.4}\"/>\n",
            coords.join(" "),
            color,
            width
        ));
    }

    fn circle(&mut self, p: (f64, f64), r: f64, color: &str) {
        self.body.push_str(&format!(
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"{:.4}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{:.4}\"/>\n",
            p.0,
            self.flip(p.1),
            r,
            color,
            r * 0.3
        ));
    }

    fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\">\n{}</svg>\n",
            self.vp.x0,
            self.vp.y0,
            self.vp.width(),
            self.vp.height(),
            self.body
        )
    }
}

pub fn render_lines(lines: &[Line2], highlight: Option<&Point2>) -> Result<String> {
    let map = enumerate_lines(lines)?;
    let mut pts: Vec<(f64, f64)> = map
        .entries
        .iter()
        .map(|(p, _)| (to_f64(&p.x), to_f64(&p.y)))
        .collect();
    // Anchor each line so parallels far from every crossing stay visible.
    for l in lines {
        let b = to_f64(&l.b);
        if b.abs() > 1e-12 {
            pts.push((0.0, to_f64(&l.c) / b));
        } else {
            pts.push((to_f64(&l.c) / to_f64(&l.a), 0.0));
        }
    }
    if let Some(h) = highlight {
        pts.push((to_f64(&h.x), to_f64(&h.y)));
    }
    let vp = Viewport::from_points(pts);
    let width = 0.004 * vp.width().max(vp.height());
    let mut svg = Svg::new(vp);
    for l in lines {
        if let Some((p, q)) = clip_line(l, &vp) {
            svg.segment(p, q, stroke(l.color), width);
        }
    }
    if let Some(h) = highlight {
        let r = 0.01 * vp.width().max(vp.height());
        svg.circle((to_f64(&h.x), to_f64(&h.y)), r, "#111111");
    }
    Ok(svg.finish())
}

pub fn render_pseudolines(ps: &[Pseudoline], highlight: Option<&Point2>) -> Result<String> {
    let mut pts: Vec<(f64, f64)> = ps
        .iter()
        .flat_map(|p| p.vertices.iter().map(|v| (to_f64(&v.x), to_f64(&v.y))))
        .collect();
    if let Ok(map) = enumerate_pseudolines(ps) {
        pts.extend(
            map.entries
                .iter()
                .map(|(p, _)| (to_f64(&p.x), to_f64(&p.y))),
        );
    }
    if let Some(h) = highlight {
        pts.push((to_f64(&h.x), to_f64(&h.y)));
    }
    let vp = Viewport::from_points(pts);
    let width = 0.004 * vp.width().max(vp.height());
    let mut svg = Svg::new(vp);
    for p in ps {
        let mut path: Vec<(f64, f64)> = Vec::with_capacity(p.vertices.len() + 2);
        let first = &p.vertices[0];
        let last = p.vertices.last().unwrap();
        let (fx, fy) = (to_f64(&first.x), to_f64(&first.y));
        let (lx, ly) = (to_f64(&last.x), to_f64(&last.y));
        let ls = to_f64(&p.left_slope);
        let rs = to_f64(&p.right_slope);
        path.push((vp.x0, fy + ls * (vp.x0 - fx)));
        path.extend(p.vertices.iter().map(|v| (to_f64(&v.x), to_f64(&v.y))));
        path.push((vp.x1, ly + rs * (vp.x1 - lx)));
        svg.polyline(&path, stroke(p.color), width);
    }
    if let Some(h) = highlight {
        let r = 0.01 * vp.width().max(vp.height());
        svg.circle((to_f64(&h.x), to_f64(&h.y)), r, "#111111");
    }
    Ok(svg.finish())
}
