use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orientation, segments_intersect, Orientation, Point, Segment, SegmentIntersection};

/// A simple polygon with counter-clockwise vertex order. The boundary is
/// part of the polygon.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    reflex: Vec<bool>,
}

impl TryFrom<Vec<Point>> for SimplePolygon {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        SimplePolygon::new(v)
    }
}

impl From<SimplePolygon> for Vec<Point> {
    fn from(p: SimplePolygon) -> Self {
        p.vertices
    }
}

impl SimplePolygon {
    /// Validates a raw vertex loop and normalizes it to counter-clockwise
    /// order. Clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        for i in 0..n {
            let j = (i + 1) % n;
            if vertices[i] == vertices[j] {
                return Err(Error::DuplicateVertex(i, j));
            }
        }
        let flat = (2..n).all(|i| orientation(vertices[0], vertices[1], vertices[i]) == Orientation::Collinear);
        if flat {
            return Err(Error::ZeroArea);
        }
        if let Some((a, b)) = find_self_intersection(&vertices) {
            return Err(Error::NotSimple(a, b));
        }
        let area = signed_area(&vertices);
        if area == 0.0 {
            return Err(Error::ZeroArea);
        }
        if area < 0.0 {
            vertices.reverse();
        }
        let reflex = (0..n)
            .map(|i| {
                let prev = vertices[(i + n - 1) % n];
                let next = vertices[(i + 1) % n];
                orientation(prev, vertices[i], next) == Orientation::Clockwise
            })
            .collect();
        Ok(SimplePolygon { vertices, reflex })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.len()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.len() - 1) % self.len()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[self.next(i)])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(move |i| self.edge(i))
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.reflex[i]
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    /// Length of the bounding-box diagonal; an upper bound on every
    /// distance inside the polygon's hull.
    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.dist(hi)
    }

    pub fn bounding_box(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.vertices {
            lo.x = lo.x.min(p.x);
            lo.y = lo.y.min(p.y);
            hi.x = hi.x.max(p.x);
            hi.y = hi.y.max(p.y);
        }
        (lo, hi)
    }

    /// Index of the edge containing `p`, if `p` is on the boundary. Vertices
    /// report the edge starting at them.
    pub fn boundary_edge_at(&self, p: Point) -> Option<usize> {
        if let Some(i) = self.vertex_index(p) {
            return Some(i);
        }
        (0..self.len()).find(|&i| self.edge(i).contains(p))
    }

    pub fn vertex_index(&self, p: Point) -> Option<usize> {
        self.vertices.iter().position(|v| *v == p)
    }

    pub fn on_boundary(&self, p: Point) -> bool {
        self.boundary_edge_at(p).is_some()
    }
}

fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    let mut s = 0.0;
    for i in 0..n {
        s += v[i].cross(v[(i + 1) % n]);
    }
    s * 0.5
}

/// Returns a pair of edges witnessing a self-intersection, or `None`.
///
/// Edges are bucketed on a uniform grid so that only edges sharing a cell
/// are tested against each other.
fn find_self_intersection(v: &[Point]) -> Option<(usize, usize)> {
    let n = v.len();
    let seg = |i: usize| Segment::new(v[i], v[(i + 1) % n]);
    let adjacent = |i: usize, j: usize| (i + 1) % n == j || (j + 1) % n == i;

    let check = |i: usize, j: usize| -> bool {
        let r = segments_intersect(seg(i), seg(j));
        if adjacent(i, j) {
            // Adjacent edges may only share their common endpoint. With
            // three vertices both neighbours are adjacent.
            let shared = if (i + 1) % n == j { v[j] } else { v[i] };
            match r {
                SegmentIntersection::Point { at, .. } => at != shared,
                SegmentIntersection::Overlap(_) => true,
                SegmentIntersection::None => false,
            }
        } else {
            r != SegmentIntersection::None
        }
    };

    if n <= 64 {
        for i in 0..n {
            for j in i + 1..n {
                if check(i, j) {
                    return Some((i, j));
                }
            }
        }
        return None;
    }

    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in v {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    let side = (n as f64).sqrt().ceil() as usize;
    let w = ((hi.x - lo.x) / side as f64).max(f64::MIN_POSITIVE);
    let h = ((hi.y - lo.y) / side as f64).max(f64::MIN_POSITIVE);
    let cell = |p: Point| {
        let cx = (((p.x - lo.x) / w) as usize).min(side - 1);
        let cy = (((p.y - lo.y) / h) as usize).min(side - 1);
        (cx, cy)
    };
    let mut grid: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for i in 0..n {
        let (a, b) = (cell(v[i]), cell(v[(i + 1) % n]));
        for cx in a.0.min(b.0)..=a.0.max(b.0) {
            for cy in a.1.min(b.1)..=a.1.max(b.1) {
                grid.entry((cx, cy)).or_default().push(i);
            }
        }
    }
    let mut tested = std::collections::HashSet::new();
    let mut cells: Vec<_> = grid.into_iter().collect();
    cells.sort_by_key(|(k, _)| *k);
    for (_, edges) in cells {
        for x in 0..edges.len() {
            for y in x + 1..edges.len() {
                let (i, j) = (edges[x].min(edges[y]), edges[x].max(edges[y]));
                if tested.insert((i, j)) && check(i, j) {
                    return Some((i, j));
                }
            }
        }
    }
    None
}
