//! SVG drawings of planar polytopes, planar fans and secondary fans with a
//! two-dimensional character space. Virtual generators are dashed.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::cone;
use crate::error::{Error, Result};
use crate::fan::QuantumFan;
use crate::linalg::Calibration;
use crate::polytope::HPolytope;
use crate::scalar::Scalar;
use crate::secondary::SecondaryFan;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlotKind {
    Polytope,
    Fan,
    Secondary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlotSpec {
    pub kind: PlotKind,
    /// `[x_min, y_min, x_max, y_max]`.
    pub viewport: [Scalar; 4],
    pub ray_length: Scalar,
    pub dashed_virtual: bool,
}

impl PlotSpec {
    pub fn new(kind: PlotKind) -> Self {
        let (lo, hi) = match kind {
            PlotKind::Secondary => (Scalar::ratio(-1, 2), Scalar::from_int(3)),
            _ => (Scalar::from_int(-3), Scalar::from_int(3)),
        };
        PlotSpec {
            kind,
            viewport: [lo.clone(), lo, hi.clone(), hi],
            ray_length: Scalar::ratio(5, 2),
            dashed_virtual: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let [x0, y0, x1, y1] = &self.viewport;
        if x0 >= x1 || y0 >= y1 {
            return Err(Error::InvalidInput("viewport must have x_min < x_max and y_min < y_max".into()));
        }
        if !self.ray_length.is_positive() {
            return Err(Error::InvalidInput("ray length must be positive".into()));
        }
        Ok(())
    }
}

/// Decimal text with at most 12 significant digits.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let digits = (11 - x.abs().log10().floor() as i32).clamp(0, 20) as usize;
    let s = format!("{x:.digits$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" { "0".into() } else { s.to_string() }
}

struct Canvas {
    body: String,
    stroke: f64,
    view: [f64; 4],
}

impl Canvas {
    fn new(spec: &PlotSpec) -> Result<Self> {
        spec.validate()?;
        let v = spec.viewport.clone().map(|x| x.to_f64());
        Ok(Canvas { body: String::new(), stroke: (v[2] - v[0]).max(v[3] - v[1]) / 250.0, view: v })
    }

    // y is flipped so that the picture has the usual orientation
    fn line(&mut self, a: (f64, f64), b: (f64, f64), dashed: bool, class: &str) {
        let dash = if dashed { format!(" stroke-dasharray=\"{} {}\"", num(self.stroke * 4.0), num(self.stroke * 3.0)) } else { String::new() };
        let _ = writeln!(
            self.body,
            "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\" stroke-width=\"{}\"{dash}/>",
            num(a.0),
            num(-a.1),
            num(b.0),
            num(-b.1),
            num(self.stroke)
        );
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, class: &str) {
        let p: Vec<String> = pts.iter().map(|(x, y)| format!("{},{}", num(*x), num(-*y))).collect();
        let _ = writeln!(
            self.body,
            "<polygon class=\"{class}\" points=\"{}\" fill=\"{fill}\" stroke=\"black\" stroke-width=\"{}\"/>",
            p.join(" "),
            num(self.stroke)
        );
    }

    fn dot(&mut self, p: (f64, f64), class: &str) {
        let _ = writeln!(
            self.body,
            "<circle class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"black\"/>",
            num(p.0),
            num(-p.1),
            num(self.stroke * 3.0)
        );
    }

    fn label(&mut self, p: (f64, f64), text: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{}\" y=\"{}\" font-size=\"{}\" font-family=\"sans-serif\">{}</text>",
            num(p.0),
            num(-p.1),
            num(self.stroke * 10.0),
            escape(text)
        );
    }

    fn finish(self) -> String {
        let [x0, y0, x1, y1] = self.view;
        let mut out = String::new();
        let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"480\" height=\"{}\" viewBox=\"{} {} {} {}\">",
            num((480.0 * (y1 - y0) / (x1 - x0)).round()),
            num(x0),
            num(-y1),
            num(x1 - x0),
            num(y1 - y0)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn point(v: &[Scalar]) -> (f64, f64) {
    (v[0].to_f64(), v[1].to_f64())
}

fn scaled(v: &[Scalar], len: f64) -> (f64, f64) {
    let (x, y) = point(v);
    let r = (x * x + y * y).sqrt();
    (x / r * len, y / r * len)
}

/// A planar polytope `P_b`: the polygon, its vertices and, dashed, the lines
/// of constraints that do not define an edge.
pub fn polytope_svg(c: &Calibration, b: &[Scalar], spec: &PlotSpec) -> Result<String> {
    if c.dim() != 2 {
        return Err(Error::Unsupported("polytope plots need d = 2".into()));
    }
    let p = HPolytope::new(c, b)?;
    let mut cv = Canvas::new(spec)?;
    let mut pts: Vec<&[Scalar]> = p.vertices().iter().map(|v| v.point.as_slice()).collect();
    if !pts.is_empty() {
        let (cx, cy) = pts.iter().map(|v| point(v)).fold((0.0, 0.0), |a, q| (a.0 + q.0, a.1 + q.1));
        let k = pts.len() as f64;
        let centre = (cx / k, cy / k);
        pts.sort_by(|u, v| {
            let a = point(u);
            let bb = point(v);
            (a.1 - centre.1).atan2(a.0 - centre.0).total_cmp(&(bb.1 - centre.1).atan2(bb.0 - centre.0))
        });
        let poly: Vec<(f64, f64)> = pts.iter().map(|v| point(v)).collect();
        cv.polygon(&poly, "#dde7f3", "polytope");
        for q in poly {
            cv.dot(q, "vertex");
        }
    }
    let reach = spec.viewport.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max) * 2.0;
    for i in 0..c.len() {
        if p.facet_dim(i) == 1 || !spec.dashed_virtual {
            continue;
        }
        // ⟨x, h⟩ = −b_i
        let (hx, hy) = point(c.column(i));
        let n2 = hx * hx + hy * hy;
        let base = (-b[i].to_f64() * hx / n2, -b[i].to_f64() * hy / n2);
        let dir = (-hy / n2.sqrt(), hx / n2.sqrt());
        cv.line(
            (base.0 - dir.0 * reach, base.1 - dir.1 * reach),
            (base.0 + dir.0 * reach, base.1 + dir.1 * reach),
            true,
            "virtual",
        );
    }
    Ok(cv.finish())
}

/// A planar fan: shaded maximal cones, solid rays, dashed virtual generators.
pub fn fan_svg(f: &QuantumFan, spec: &PlotSpec) -> Result<String> {
    let c = f.calibration();
    if c.dim() != 2 {
        return Err(Error::Unsupported("fan plots need d = 2".into()));
    }
    let len = spec.ray_length.to_f64();
    let mut cv = Canvas::new(spec)?;
    for (k, s) in f.cones().iter().enumerate() {
        let idx = s.to_vec();
        if idx.len() == 2 {
            let fill = if k % 2 == 0 { "#e4ecf7" } else { "#f3e6d8" };
            cv.polygon(&[(0.0, 0.0), scaled(c.column(idx[0]), len), scaled(c.column(idx[1]), len)], fill, "cone");
        }
    }
    let rays = f.rays();
    for i in 0..c.len() {
        let is_ray = rays.contains(i);
        if !is_ray && !spec.dashed_virtual {
            continue;
        }
        let end = scaled(c.column(i), len);
        cv.line((0.0, 0.0), end, !is_ray, if is_ray { "ray" } else { "virtual" });
        cv.label((end.0 * 1.08, end.1 * 1.08), &(i + 1).to_string());
    }
    Ok(cv.finish())
}

/// A secondary fan with two-dimensional character space: Gale generators,
/// chamber rays, and optionally a marked character.
pub fn secondary_svg(sf: &SecondaryFan, c: &Calibration, marked: Option<&[Scalar]>, spec: &PlotSpec) -> Result<String> {
    if c.corank() != 2 {
        return Err(Error::Unsupported("secondary fan plots need n - d = 2".into()));
    }
    let len = spec.ray_length.to_f64();
    let mut cv = Canvas::new(spec)?;
    for (k, ch) in sf.chambers.iter().enumerate() {
        if ch.rays.len() == 2 {
            let mut r: Vec<&[Scalar]> = ch.rays.iter().map(|v| v.as_slice()).collect();
            r.sort_by(|u, v| cone::angle_cmp(u, v));
            let fill = if k % 2 == 0 { "#e4ecf7" } else { "#f3e6d8" };
            cv.polygon(&[(0.0, 0.0), scaled(r[0], len), scaled(r[1], len)], fill, "chamber");
            let (a, b) = (scaled(r[0], 1.0), scaled(r[1], 1.0));
            let m = ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0);
            let norm = (m.0 * m.0 + m.1 * m.1).sqrt().max(1e-9);
            let mid = (m.0 / norm * len * 0.6, m.1 / norm * len * 0.6);
            let virt = ch.combinatorics.virtual_set;
            let text = if virt.is_empty() {
                format!("{} cones", ch.combinatorics.cones.len())
            } else {
                format!("{} cones, virtual {virt}", ch.combinatorics.cones.len())
            };
            cv.label(mid, &text);
        }
    }
    let mut seen: Vec<(f64, f64)> = Vec::new();
    for (i, g) in c.gale_generators().iter().enumerate() {
        let end = scaled(g, len);
        cv.line((0.0, 0.0), end, false, "generator");
        let shift = seen.iter().filter(|q| (q.0 - end.0).abs() + (q.1 - end.1).abs() < 1e-9).count() as f64;
        cv.label((end.0 * 1.05, end.1 * 1.05 - shift * cv.stroke * 12.0), &format!("k{}", i + 1));
        seen.push(end);
    }
    if let Some(chi) = marked {
        cv.dot(point(chi), "marked");
    }
    Ok(cv.finish())
}
