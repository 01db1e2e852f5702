//! Walking a segment or ray through the triangulation.
//!
//! All turn decisions are exact. The walk only ever stops at points where
//! the path leaves the closed polygon; touching the boundary from inside is
//! not an exit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{line_intersection, orientation, side_of_line, Orientation, Point};

use super::{Location, SimplePolygon, Triangulation};

/// Boundary feature where a walk left the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryHit {
    /// Interior of polygon edge `i` (from vertex `i` to `i + 1`).
    Edge(usize),
    Vertex(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WalkEnd {
    /// The target was reached; `triangle` contains it.
    Reached { triangle: usize },
    /// The walk left the polygon at `point`.
    Blocked { point: Point, hit: BoundaryHit },
}

#[derive(Debug, Clone, Copy)]
enum Line {
    Segment(Point, Point),
    Ray(Point, Point),
    /// A ray from a point on the exact line through `a` and `b`, heading
    /// from `a` towards `b`.
    Along(Point, Point, Point),
}

impl Line {
    fn origin(&self) -> Point {
        match *self {
            Line::Segment(p, _) | Line::Ray(p, _) | Line::Along(p, ..) => p,
        }
    }

    fn dir(&self) -> Point {
        match *self {
            Line::Segment(p, q) => q - p,
            Line::Ray(_, d) => d,
            Line::Along(_, a, b) => b - a,
        }
    }

    fn target(&self) -> Option<Point> {
        match *self {
            Line::Segment(_, q) => Some(q),
            Line::Ray(..) | Line::Along(..) => None,
        }
    }

    /// +1 left of the line, -1 right, 0 on it.
    fn side(&self, x: Point) -> i32 {
        match *self {
            Line::Segment(p, q) => orientation(p, q, x).sign(),
            Line::Ray(o, d) => side_of_line(o, d, x),
            Line::Along(_, a, b) => orientation(a, b, x).sign(),
        }
    }

    /// For two points on the line: `b` lies strictly ahead of `a`. Exact,
    /// since collinear points differ along the dominant axis.
    fn ahead(&self, a: Point, b: Point) -> bool {
        let d = self.dir();
        if d.x.abs() >= d.y.abs() {
            if d.x > 0.0 {
                b.x > a.x
            } else {
                b.x < a.x
            }
        } else if d.y > 0.0 {
            b.y > a.y
        } else {
            b.y < a.y
        }
    }

    fn hit_point(&self, a: Point, b: Point) -> Point {
        let o = self.origin();
        line_intersection(o, o + self.dir(), a, b)
    }
}

#[derive(Debug, Clone, Copy)]
enum State {
    Inside(usize),
    Vertex(usize),
}

pub(super) fn walk_segment(
    tri: &Triangulation,
    poly: &SimplePolygon,
    loc: Location,
    p: Point,
    q: Point,
) -> Result<WalkEnd> {
    if p == q {
        return Ok(WalkEnd::Reached { triangle: loc.triangle() });
    }
    run(tri, poly, loc, Line::Segment(p, q))
}

pub(super) fn walk_ray(
    tri: &Triangulation,
    poly: &SimplePolygon,
    loc: Location,
    origin: Point,
    dir: Point,
) -> Result<WalkEnd> {
    run(tri, poly, loc, Line::Ray(origin, dir))
}

pub(super) fn walk_along(
    tri: &Triangulation,
    poly: &SimplePolygon,
    loc: Location,
    origin: Point,
    a: Point,
    b: Point,
) -> Result<WalkEnd> {
    run(tri, poly, loc, Line::Along(origin, a, b))
}

fn in_closed_triangle(poly: &SimplePolygon, tri: [usize; 3], q: Point) -> bool {
    (0..3).all(|k| orientation(poly.vertex(tri[k]), poly.vertex(tri[(k + 1) % 3]), q) != Orientation::Clockwise)
}

fn run(tri: &Triangulation, poly: &SimplePolygon, loc: Location, line: Line) -> Result<WalkEnd> {
    let mut state = match start(tri, poly, loc, line)? {
        Ok(s) => s,
        Err(end) => return Ok(end),
    };
    let guard = 4 * (poly.len() + tri.len()) + 16;
    for _ in 0..guard {
        let next = match state {
            State::Inside(t) => step_inside(tri, poly, t, line)?,
            State::Vertex(w) => step_vertex(tri, poly, w, line)?,
        };
        match next {
            Ok(s) => state = s,
            Err(end) => return Ok(end),
        }
    }
    Err(Error::Internal("triangulation walk did not terminate".into()))
}

/// `Ok(state)` to continue, `Err(end)` when the walk is finished.
type Step = Result<std::result::Result<State, WalkEnd>>;

fn start(tri: &Triangulation, poly: &SimplePolygon, loc: Location, line: Line) -> Step {
    let (t, k, boundary) = match loc {
        Location::Interior(t) => return Ok(Ok(State::Inside(t))),
        Location::AtVertex { v, .. } => return Ok(Ok(State::Vertex(v))),
        Location::OnDiagonal(t, k) => (t, k, None),
        Location::OnBoundaryEdge { t, k, edge } => (t, k, Some(edge)),
    };
    let tv = tri.triangle(t);
    let (a, b) = (poly.vertex(tv[k]), poly.vertex(tv[(k + 1) % 3]));
    let p = line.origin();
    match line.side(a) {
        0 => {
            // Moving along the side towards one of its endpoints.
            let (x, xi) = if line.ahead(p, a) { (a, tv[k]) } else { (b, tv[(k + 1) % 3]) };
            Ok(along(line, p, x, xi, t))
        }
        s if s > 0 => Ok(Ok(State::Inside(t))),
        _ => match (tri.neighbor(t, k), boundary) {
            (Some(u), _) => Ok(Ok(State::Inside(u))),
            (None, Some(edge)) => Ok(Err(WalkEnd::Blocked { point: p, hit: BoundaryHit::Edge(edge) })),
            (None, None) => Err(Error::Internal("diagonal without neighbour".into())),
        },
    }
}

/// Moving from `w` along a triangle side towards vertex `x`.
fn along(line: Line, w: Point, x: Point, xi: usize, t: usize) -> std::result::Result<State, WalkEnd> {
    if let Some(q) = line.target() {
        if !line.ahead(x, q) && line.ahead(w, q) || q == x {
            return Err(WalkEnd::Reached { triangle: t });
        }
    }
    Ok(State::Vertex(xi))
}

fn step_inside(tri: &Triangulation, poly: &SimplePolygon, t: usize, line: Line) -> Step {
    let tv = tri.triangle(t);
    if let Some(q) = line.target() {
        if in_closed_triangle(poly, tv, q) {
            return Ok(Err(WalkEnd::Reached { triangle: t }));
        }
    }
    let s = tv.map(|v| line.side(poly.vertex(v)));
    if let Some(k) = (0..3).find(|&k| s[k] < 0 && s[(k + 1) % 3] > 0) {
        return Ok(match tri.neighbor(t, k) {
            Some(u) => Ok(State::Inside(u)),
            None => {
                let (a, b) = (poly.vertex(tv[k]), poly.vertex(tv[(k + 1) % 3]));
                Err(WalkEnd::Blocked { point: line.hit_point(a, b), hit: BoundaryHit::Edge(tv[k]) })
            }
        });
    }
    match (0..3).find(|&k| s[k] == 0) {
        Some(k) => Ok(Ok(State::Vertex(tv[k]))),
        None => Err(Error::Internal("no exit from triangle".into())),
    }
}

fn step_vertex(tri: &Triangulation, poly: &SimplePolygon, w: usize, line: Line) -> Step {
    let pw = poly.vertex(w);
    let incident = tri.incident_triangles(w);
    if line.target() == Some(pw) {
        return Ok(Err(WalkEnd::Reached { triangle: incident[0] }));
    }
    let (prev, next) = (poly.vertex(poly.prev(w)), poly.vertex(poly.next(w)));
    let (sp, sn) = (line.side(prev), line.side(next));
    let inside_sector = match orientation(prev, pw, next) {
        Orientation::CounterClockwise => sn <= 0 && sp >= 0,
        Orientation::Clockwise => sn <= 0 || sp >= 0,
        Orientation::Collinear => sn <= 0,
    };
    let along_boundary = (sn == 0 && line.ahead(pw, next)) || (sp == 0 && line.ahead(pw, prev));
    if !inside_sector && !along_boundary {
        return Ok(Err(WalkEnd::Blocked { point: pw, hit: BoundaryHit::Vertex(w) }));
    }
    for &t in incident {
        let tv = tri.triangle(t);
        let i = (0..3).find(|&i| tv[i] == w).unwrap();
        let (ai, bi) = (tv[(i + 1) % 3], tv[(i + 2) % 3]);
        let (a, b) = (poly.vertex(ai), poly.vertex(bi));
        let (sa, sb) = (line.side(a), line.side(b));
        if sa == 0 && line.ahead(pw, a) {
            return Ok(along(line, pw, a, ai, t));
        }
        if sb == 0 && line.ahead(pw, b) {
            return Ok(along(line, pw, b, bi, t));
        }
        if sa < 0 && sb > 0 {
            return Ok(Ok(State::Inside(t)));
        }
    }
    Err(Error::Internal("no triangle wedge contains the walk direction".into()))
}
