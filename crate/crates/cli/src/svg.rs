//! Deterministic SVG for 2D polygons and lattice points.
//!
//! All panels share one viewport: the bounding box of every vertex and point,
//! widened by a margin of half a lattice unit, at 40px per unit. Panels are
//! laid out left to right.

use std::collections::BTreeSet;
use std::fmt::Write;

use num_traits::ToPrimitive;
use toricdeg::Q;

const UNIT: f64 = 40.0;
const MARGIN: f64 = 0.5;
const TITLE: f64 = 24.0;
const DOT: f64 = 4.0;

pub struct Panel {
    pub title: String,
    /// Vertices of a 2D polytope, in any order.
    pub vertices: Vec<Vec<Q>>,
    pub points: BTreeSet<Vec<i64>>,
    pub highlighted: BTreeSet<Vec<i64>>,
}

fn cross(o: &[Q], a: &[Q], b: &[Q]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counterclockwise hull order (monotone chain), exact.
fn ccw(vertices: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let pts: Vec<Vec<Q>> = vertices.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if pts.len() < 3 {
        return pts;
    }
    let zero = Q::from_integer(0.into());
    let mut lower: Vec<Vec<Q>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= zero {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Q>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= zero {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn f(x: &Q) -> f64 {
    x.to_f64().unwrap_or(0.0)
}

struct Viewport {
    xmin: f64,
    ymax: f64,
    width: f64,
    height: f64,
}

impl Viewport {
    fn new(panels: &[Panel]) -> Viewport {
        let coords = panels.iter().flat_map(|p| {
            p.vertices
                .iter()
                .map(|v| (f(&v[0]), f(&v[1])))
                .chain(p.points.iter().map(|v| (v[0] as f64, v[1] as f64)))
        });
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for (x, y) in coords {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        if xmin > xmax {
            (xmin, xmax, ymin, ymax) = (0.0, 0.0, 0.0, 0.0);
        }
        Viewport {
            xmin,
            ymax,
            width: (xmax - xmin + 2.0 * MARGIN) * UNIT,
            height: (ymax - ymin + 2.0 * MARGIN) * UNIT + TITLE,
        }
    }

    fn px(&self, panel: usize, x: f64) -> f64 {
        panel as f64 * self.width + (x - self.xmin + MARGIN) * UNIT
    }

    fn py(&self, y: f64) -> f64 {
        TITLE + (self.ymax - y + MARGIN) * UNIT
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn render(panels: &[Panel]) -> String {
    let vp = Viewport::new(panels);
    let total_w = vp.width * panels.len().max(1) as f64;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        total_w, vp.height, total_w, vp.height
    );
    let _ = writeln!(out, r#"<rect x="0" y="0" width="{total_w:.2}" height="{:.2}" fill="white"/>"#, vp.height);
    for (i, panel) in panels.iter().enumerate() {
        let _ = writeln!(out, r#"<g id="panel-{}">"#, i + 1);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="16" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            i as f64 * vp.width + vp.width / 2.0,
            escape(&panel.title)
        );
        let hull = ccw(&panel.vertices);
        if hull.len() >= 2 {
            let pts: Vec<String> =
                hull.iter().map(|v| format!("{:.2},{:.2}", vp.px(i, f(&v[0])), vp.py(f(&v[1])))).collect();
            let _ = writeln!(
                out,
                r##"<polygon points="{}" fill="#dbe8f5" stroke="#1f4e79" stroke-width="2"/>"##,
                pts.join(" ")
            );
        }
        for p in &panel.points {
            let colour = if panel.highlighted.contains(p) { "#c0392b" } else { "#222222" };
            let _ = writeln!(
                out,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{DOT}" fill="{colour}"/>"#,
                vp.px(i, p[0] as f64),
                vp.py(p[1] as f64)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use toricdeg::rational::qvec;

    fn panel(vertices: &[&[i64]], points: &[&[i64]]) -> Panel {
        Panel {
            title: "P".into(),
            vertices: vertices.iter().map(|v| qvec(v)).collect(),
            points: points.iter().map(|p| p.to_vec()).collect(),
            highlighted: BTreeSet::new(),
        }
    }

    #[test]
    fn hull_order_is_counterclockwise() {
        let h = ccw(&[qvec(&[1, 1]), qvec(&[0, 0]), qvec(&[0, 1]), qvec(&[1, 0])]);
        assert_eq!(h, vec![qvec(&[0, 0]), qvec(&[1, 0]), qvec(&[1, 1]), qvec(&[0, 1])]);
    }

    #[test]
    fn viewport_uses_margin_and_unit() {
        let s = render(&[panel(&[&[0, 0], &[1, 0], &[0, 1]], &[])]);
        assert!(s.contains(r#"width="80.00" height="104.00""#));
        assert!(s.contains(r#"points="20.00,84.00 60.00,84.00 20.00,44.00""#));
        assert!(!s.contains("<circle"));
    }

    #[test]
    fn point_polytope_is_a_single_dot() {
        let s = render(&[panel(&[&[2, 3]], &[&[2, 3]])]);
        assert_eq!(s.matches("<circle").count(), 1);
        assert!(!s.contains("<polygon"));
    }
}
