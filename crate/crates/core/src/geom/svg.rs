//! SVG emission. The only place range-plane coordinates become floats.

use std::fmt::Write;

use super::polygon::{Bounds, Face, PolygonSet};
use super::rational::to_f64;
use super::RPoint;

pub struct Layer<'a> {
    pub set: &'a PolygonSet,
    /// Fill per face; falls back to the first entry.
    pub fills: Vec<String>,
    pub stroke: &'a str,
}

const CANVAS: f64 = 480.0;
const MARGIN: f64 = 24.0;

fn fmt_num(v: f64) -> String {
    // 1e-12 relative rounding keeps output stable across platforms.
    let r = format!("{:.12e}", v);
    let parsed: f64 = r.parse().unwrap_or(v);
    let s = format!("{parsed}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

struct Frame {
    x0: f64,
    y1: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn new(b: &Bounds) -> Frame {
        let (x0, x1) = (to_f64(&b.x.0), to_f64(&b.x.1));
        let (y0, y1) = (to_f64(&b.y.0), to_f64(&b.y.1));
        let w = (x1 - x0).max(1e-300);
        let h = (y1 - y0).max(1e-300);
        Frame { x0, y1, sx: (CANVAS - 2.0 * MARGIN) / w, sy: (CANVAS - 2.0 * MARGIN) / h }
    }

    fn map(&self, p: &RPoint) -> (String, String) {
        let (x, y) = p.to_f64();
        (fmt_num(MARGIN + (x - self.x0) * self.sx), fmt_num(MARGIN + (self.y1 - y) * self.sy))
    }
}

fn face_path(frame: &Frame, face: &Face) -> String {
    let mut d = String::new();
    for ring in std::iter::once(&face.outer).chain(face.holes.iter()) {
        for (i, p) in ring.iter().enumerate() {
            let (x, y) = frame.map(p);
            let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        d.push_str("Z ");
    }
    d.trim_end().to_string()
}

/// Draws the given layers inside the frame of `bounds`, first layer at the bottom.
pub fn render(bounds: &Bounds, title: &str, layers: &[Layer<'_>]) -> String {
    let frame = Frame::new(bounds);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let _ = writeln!(out, "<title>{title}</title>");
    let corners = bounds.corners();
    let (ax, ay) = frame.map(&corners[3]);
    let (bx, by) = frame.map(&corners[1]);
    let _ = writeln!(
        out,
        r##"<rect x="{ax}" y="{ay}" width="{}" height="{}" fill="none" stroke="#000" stroke-width="1"/>"##,
        fmt_num(bx.parse::<f64>().unwrap() - ax.parse::<f64>().unwrap()),
        fmt_num(by.parse::<f64>().unwrap() - ay.parse::<f64>().unwrap()),
    );
    for layer in layers {
        for (i, face) in layer.set.faces.iter().enumerate() {
            let fill = layer.fills.get(i).or_else(|| layer.fills.first()).map(String::as_str).unwrap_or("none");
            let _ = writeln!(
                out,
                r#"<path d="{}" fill="{}" fill-rule="evenodd" stroke="none"/>"#,
                face_path(&frame, face),
                fill
            );
        }
        for (a, b) in &layer.set.segments {
            let (x1, y1) = frame.map(a);
            let (x2, y2) = frame.map(b);
            let _ = writeln!(
                out,
                r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{}" stroke-width="1.5"/>"#,
                layer.stroke
            );
        }
        for p in &layer.set.points {
            let (x, y) = frame.map(p);
            let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="2" fill="{}"/>"#, layer.stroke);
        }
    }
    out.push_str("</svg>\n");
    out
}
