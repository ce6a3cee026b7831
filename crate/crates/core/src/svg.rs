//! Static SVG pictures of parametrized tropical curves.
//!
//! The viewport is the bounding box of the vertex images grown by 10% on
//! every side. Edges are segments, legs run from their vertex to the edge of
//! the viewport, vertices are filled dots and marked points hollow rings.
//! Edges and legs with non-primitive slope carry their lattice length.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::lattice::LatticePoint;
use crate::rational::QPoint;
use crate::tropical::ParamTropicalCurve;

const WIDTH: f64 = 480.0;

fn approx(p: &QPoint) -> (f64, f64) {
    (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0))
}

struct Frame {
    min: (f64, f64),
    max: (f64, f64),
    scale: f64,
}

impl Frame {
    fn around(points: &[(f64, f64)]) -> Self {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &(x, y) in points {
            min = (min.0.min(x), min.1.min(y));
            max = (max.0.max(x), max.1.max(y));
        }
        if points.is_empty() {
            (min, max) = ((0.0, 0.0), (0.0, 0.0));
        }
        // A single point or a flat box still gets a visible frame.
        let span = (max.0 - min.0).max(max.1 - min.1).max(1.0);
        let pad = |lo: f64, hi: f64| {
            let extra = (span - (hi - lo)) / 2.0;
            (lo - extra - 0.1 * span, hi + extra + 0.1 * span)
        };
        let (x0, x1) = pad(min.0, max.0);
        let (y0, y1) = pad(min.1, max.1);
        Self { min: (x0, y0), max: (x1, y1), scale: WIDTH / (x1 - x0) }
    }

    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        ((x - self.min.0) * self.scale, (self.max.1 - y) * self.scale)
    }

    fn height(&self) -> f64 {
        (self.max.1 - self.min.1) * self.scale
    }

    /// Where the ray from `p` in direction `d` leaves the frame.
    fn exit(&self, p: (f64, f64), d: LatticePoint) -> (f64, f64) {
        let (dx, dy) = (d.x as f64, d.y as f64);
        let mut t = f64::INFINITY;
        if dx > 0.0 {
            t = t.min((self.max.0 - p.0) / dx);
        } else if dx < 0.0 {
            t = t.min((self.min.0 - p.0) / dx);
        }
        if dy > 0.0 {
            t = t.min((self.max.1 - p.1) / dy);
        } else if dy < 0.0 {
            t = t.min((self.min.1 - p.1) / dy);
        }
        let t = t.max(0.0);
        (p.0 + t * dx, p.1 + t * dy)
    }
}

/// Renders a curve. `multiplicity`, when given, is written in a corner.
pub fn render_curve(curve: &ParamTropicalCurve, multiplicity: Option<u64>) -> String {
    let pos: Vec<(f64, f64)> = curve.positions.iter().map(approx).collect();
    let frame = Frame::around(&pos);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.0}" height="{:.0}" viewBox="0 0 {:.2} {:.2}">"#,
        WIDTH,
        frame.height(),
        WIDTH,
        frame.height()
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let segment = |out: &mut String, a: (f64, f64), b: (f64, f64), slope: LatticePoint, class: &str| {
        let (a, b) = (frame.map(a), frame.map(b));
        let _ = writeln!(
            out,
            r#"<line class="{class}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="2"/>"#,
            a.0, a.1, b.0, b.1
        );
        let w = slope.content();
        if w > 1 {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="firebrick">{w}</text>"#,
                (a.0 + b.0) / 2.0 + 4.0,
                (a.1 + b.1) / 2.0 - 4.0
            );
        }
    };
    for (&(a, b), &s) in curve.ty.graph.edges.iter().zip(&curve.ty.edge_slopes) {
        if !s.is_zero() {
            segment(&mut out, pos[a], pos[b], s, "edge");
        }
    }
    for (&a, &s) in curve.ty.graph.legs.iter().zip(&curve.ty.leg_slopes) {
        if !s.is_zero() {
            segment(&mut out, pos[a], frame.exit(pos[a], s), s, "leg");
        }
    }
    for (v, &p) in pos.iter().enumerate() {
        let (x, y) = frame.map(p);
        let marked = curve.ty.graph.legs.iter().zip(&curve.ty.leg_slopes).any(|(&a, s)| a == v && s.is_zero());
        let style = if marked { r#"fill="white" stroke="steelblue" stroke-width="2""# } else { r#"fill="black""# };
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" {style}/>"#);
    }
    if let Some(m) = multiplicity {
        let _ = writeln!(out, r#"<text x="8" y="20" font-size="16">mult {m}</text>"#);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q_int;
    use crate::tropical::CombinatorialType;

    fn line() -> ParamTropicalCurve {
        let p = LatticePoint::new;
        let ty = CombinatorialType::weightless(
            2,
            vec![(0, 1, p(0, 2))],
            vec![(0, p(0, 0)), (0, p(-1, -1)), (0, p(1, -1)), (1, p(-1, 1)), (1, p(1, 1))],
        )
        .unwrap();
        ParamTropicalCurve::new(ty, vec![q_int(1)], vec![QPoint::from_ints(0, 0), QPoint::from_ints(0, 2)]).unwrap()
    }

    #[test]
    fn picture_contents() {
        let svg = render_curve(&line(), Some(2));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches(r#"class="edge""#).count(), 1);
        assert_eq!(svg.matches(r#"class="leg""#).count(), 4);
        assert_eq!(svg.matches("<circle").count(), 2);
        assert!(svg.contains("mult 2"));
        // The bounded edge has lattice length 2.
        assert!(svg.contains(">2</text>"));
    }

    #[test]
    fn legs_end_on_the_frame() {
        let frame = Frame::around(&[(0.0, 0.0), (0.0, 2.0)]);
        let end = frame.exit((0.0, 0.0), LatticePoint::new(-1, -1));
        assert!((end.0 - frame.min.0).abs() < 1e-9 || (end.1 - frame.min.1).abs() < 1e-9);
        // 10% margin on each side of a 2-unit box.
        assert!((frame.max.1 - 2.2).abs() < 1e-9 && (frame.min.1 + 0.2).abs() < 1e-9);
    }
}
