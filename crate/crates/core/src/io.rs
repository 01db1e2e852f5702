//! Instance files and SVG diagnostics.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::optimize::Objective;
use crate::solve::{SolveResult, Trace};
use crate::topology::SimplePolygon;

/// `{"polygon": [[x,y],...], "s": [x,y], "t": [x,y]}`, optionally with an
/// objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub polygon: Vec<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Point>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objective: Option<Objective>,
}

impl InstanceFile {
    pub fn new(polygon: Vec<Point>, s: Point, t: Point) -> Self {
        InstanceFile { polygon, s: Some(s), t: Some(t), objective: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(fs::write(path, self.to_json()?)?)
    }

    pub fn to_polygon(&self) -> Result<SimplePolygon> {
        SimplePolygon::new(self.polygon.clone())
    }

    /// Both query points, or an error naming the missing one.
    pub fn points(&self) -> Result<(Point, Point)> {
        match (self.s, self.t) {
            (Some(s), Some(t)) => Ok((s, t)),
            (None, _) => Err(Error::InvalidInput("instance has no point s".into())),
            (_, None) => Err(Error::InvalidInput("instance has no point t".into())),
        }
    }
}

/// `x` with 12 significant digits, trailing zeros dropped.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 40) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

struct Canvas {
    out: String,
    unit: f64,
}

impl Canvas {
    fn new(poly: &SimplePolygon) -> Self {
        let (mut lo, mut hi) = (Point::new(f64::INFINITY, f64::INFINITY), Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in poly.vertices() {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let size = (hi.x - lo.x).max(hi.y - lo.y);
        let pad = 0.05 * size;
        let unit = size / 400.0;
        let mut out = String::new();
        // y grows upwards in the plane, downwards in SVG.
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="800">"#,
            fmt_num(lo.x - pad),
            fmt_num(-hi.y - pad),
            fmt_num(hi.x - lo.x + 2.0 * pad),
            fmt_num(hi.y - lo.y + 2.0 * pad)
        );
        let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke-width="{}">"#, fmt_num(unit));
        Canvas { out, unit }
    }

    fn points(pts: &[Point]) -> String {
        pts.iter().map(|p| format!("{},{}", fmt_num(p.x), fmt_num(p.y))).collect::<Vec<_>>().join(" ")
    }

    fn polygon(&mut self, poly: &SimplePolygon) {
        let _ = writeln!(self.out, r#"<polygon class="polygon" points="{}" fill="whitesmoke" stroke="black"/>"#, Self::points(poly.vertices()));
    }

    fn polyline(&mut self, class: &str, pts: &[Point], style: &str) {
        let _ = writeln!(self.out, r#"<polyline class="{class}" points="{}" fill="none" {style}/>"#, Self::points(pts));
    }

    fn line(&mut self, class: &str, a: Point, b: Point, style: &str) {
        let _ = writeln!(
            self.out,
            r#"<line class="{class}" x1="{}" y1="{}" x2="{}" y2="{}" {style}/>"#,
            fmt_num(a.x),
            fmt_num(a.y),
            fmt_num(b.x),
            fmt_num(b.y)
        );
    }

    fn marker(&mut self, class: &str, p: Point, radius: f64, fill: &str) {
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            fmt_num(p.x),
            fmt_num(p.y),
            fmt_num(radius * self.unit)
        );
    }

    fn finish(mut self) -> String {
        self.out.push_str("</g>\n</svg>\n");
        self.out
    }
}

/// Polygon, shortest path (dashed), witness chord and witnesses, and the
/// event points of `trace` if given. A visible pair draws only the
/// segment between the two points.
pub fn render_svg(poly: &SimplePolygon, s: Point, t: Point, result: &SolveResult, trace: Option<&Trace>) -> String {
    let mut c = Canvas::new(poly);
    c.polygon(poly);
    let Some(chord) = result.chord else {
        c.line("sight", s, t, r#"stroke="seagreen""#);
        c.marker("site", s, 3.0, "black");
        c.marker("site", t, 3.0, "black");
        return c.finish();
    };
    let dash = format!(r#"stroke="gray" stroke-dasharray="{} {}""#, fmt_num(4.0 * c.unit), fmt_num(3.0 * c.unit));
    c.polyline("path", &result.path.points, &dash);
    if let Some(trace) = trace {
        for e in &trace.events {
            c.line("event-chord", e.x, e.x_tilde, r#"stroke="lightsteelblue""#);
            c.marker("event", e.pivot, 1.5, "steelblue");
        }
    }
    c.polyline("witness-path", &result.path_s.points, r#"stroke="darkorange""#);
    c.polyline("witness-path", &result.path_t.points, r#"stroke="darkorange""#);
    c.line("chord", chord.a, chord.b, r#"stroke="crimson""#);
    c.marker("site", s, 3.0, "black");
    c.marker("site", t, 3.0, "black");
    c.marker("witness", result.s_star, 3.0, "crimson");
    c.marker("witness", result.t_star, 3.0, "crimson");
    c.finish()
}
