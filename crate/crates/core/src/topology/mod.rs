//! Simple polygons, their triangulation, point location and walks through
//! the triangulation (ray shooting, segment visibility, maximal chords).

mod polygon;
mod triangulate;
mod walk;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orientation, Orientation, Point, Segment};

pub use polygon::SimplePolygon;
pub use walk::{BoundaryHit, WalkEnd};

/// Triangles (CCW vertex index triples), neighbour links and a rooted dual
/// tree.
///
/// Edge `k` of triangle `t` runs from `triangles[t][k]` to
/// `triangles[t][(k + 1) % 3]`; `neighbors[t][k]` is the triangle across it,
/// or `None` for a polygon edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Triangulation {
    triangles: Vec<[usize; 3]>,
    neighbors: Vec<[Option<usize>; 3]>,
    vertex_triangles: Vec<Vec<usize>>,
    tree_parent: Vec<Option<usize>>,
    tree_depth: Vec<usize>,
    /// Triangle side `(t, k)` carrying each polygon edge.
    edge_sides: Vec<(usize, usize)>,
}

/// Where a point sits relative to the triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// Strictly inside triangle `t`.
    Interior(usize),
    /// On the relative interior of diagonal `k` of triangle `t`.
    OnDiagonal(usize, usize),
    /// On the relative interior of polygon edge `edge`; `t`/`k` name the
    /// triangle side carrying it.
    OnBoundaryEdge { t: usize, k: usize, edge: usize },
    /// At polygon vertex `v`; `t` is some incident triangle.
    AtVertex { t: usize, v: usize },
}

impl Location {
    pub fn triangle(&self) -> usize {
        match *self {
            Location::Interior(t) | Location::OnDiagonal(t, _) => t,
            Location::OnBoundaryEdge { t, .. } | Location::AtVertex { t, .. } => t,
        }
    }

    pub fn is_on_boundary(&self) -> bool {
        matches!(self, Location::OnBoundaryEdge { .. } | Location::AtVertex { .. })
    }
}

/// A maximal segment contained in the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Chord {
    pub a: Point,
    pub b: Point,
}

impl Chord {
    pub fn segment(&self) -> Segment {
        Segment::new(self.a, self.b)
    }
}

impl Triangulation {
    pub fn new(poly: &SimplePolygon) -> Result<Self> {
        let triangles = triangulate::triangulate_polygon(poly);
        Self::from_triangles(poly, triangles)
    }

    /// Rebuilds adjacency from a triangle list, checking that the triangles
    /// form a triangulation of `poly` with a tree-shaped dual.
    pub fn from_triangles(poly: &SimplePolygon, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let n = poly.len();
        if triangles.len() != n - 2 {
            return Err(Error::Internal(format!(
                "triangulation has {} triangles, expected {}",
                triangles.len(),
                n - 2
            )));
        }
        let mut edge_owner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        let mut neighbors = vec![[None; 3]; triangles.len()];
        let mut vertex_triangles = vec![Vec::new(); n];
        for (t, tri) in triangles.iter().enumerate() {
            if tri.iter().any(|&v| v >= n) {
                return Err(Error::Internal("triangle vertex out of range".into()));
            }
            if orientation(poly.vertex(tri[0]), poly.vertex(tri[1]), poly.vertex(tri[2]))
                != Orientation::CounterClockwise
            {
                return Err(Error::Internal(format!("triangle {t} is not counter-clockwise")));
            }
            for k in 0..3 {
                vertex_triangles[tri[k]].push(t);
                let (a, b) = (tri[k], tri[(k + 1) % 3]);
                if let Some((t2, k2)) = edge_owner.remove(&(b, a)) {
                    neighbors[t][k] = Some(t2);
                    neighbors[t2][k2] = Some(t);
                } else {
                    edge_owner.insert((a, b), (t, k));
                }
            }
        }
        // Remaining unmatched sides must be exactly the polygon edges.
        if edge_owner.len() != n || edge_owner.keys().any(|&(a, b)| b != poly.next(a)) {
            return Err(Error::Internal("triangles do not tile the polygon".into()));
        }
        let mut edge_sides = vec![(0, 0); n];
        for (&(a, _), &side) in &edge_owner {
            edge_sides[a] = side;
        }
        let (tree_parent, tree_depth) = root_dual_tree(&neighbors)?;
        Ok(Triangulation { triangles, neighbors, vertex_triangles, tree_parent, tree_depth, edge_sides })
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn neighbor(&self, t: usize, k: usize) -> Option<usize> {
        self.neighbors[t][k]
    }

    pub fn neighbors(&self, t: usize) -> [Option<usize>; 3] {
        self.neighbors[t]
    }

    pub fn incident_triangles(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    /// Location of polygon vertex `v`, without a search.
    pub fn vertex_location(&self, v: usize) -> Location {
        Location::AtVertex { t: self.vertex_triangles[v][0], v }
    }

    /// Location of a point on the relative interior of polygon edge `e`.
    pub fn edge_location(&self, e: usize) -> Location {
        let (t, k) = self.edge_sides[e];
        Location::OnBoundaryEdge { t, k, edge: e }
    }

    /// Location of the point where a ray shot left the polygon.
    pub fn hit_location(&self, hit: BoundaryHit) -> Location {
        match hit {
            BoundaryHit::Edge(e) => self.edge_location(e),
            BoundaryHit::Vertex(v) => self.vertex_location(v),
        }
    }

    /// Like [`Triangulation::locate`], but a point that misses the polygon
    /// by a rounding-sized distance is attributed to the nearest edge.
    /// Constructed boundary points (chord endpoints) go through here.
    pub fn locate_near(&self, poly: &SimplePolygon, p: Point) -> Result<Location> {
        match self.locate(poly, p) {
            Err(Error::OutsidePolygon(_)) if p.is_finite() => {
                let tol = 1e-9 * (1.0 + poly.diameter() + p.norm());
                let (e, d) = (0..poly.len())
                    .map(|e| (e, poly.edge(e).closest_point(p).dist(p)))
                    .min_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                if d <= tol {
                    Ok(self.edge_location(e))
                } else {
                    Err(Error::OutsidePolygon(p))
                }
            }
            other => other,
        }
    }

    /// Side index `k` of triangle `t` that is shared with triangle `u`.
    pub fn shared_side(&self, t: usize, u: usize) -> Option<usize> {
        (0..3).find(|&k| self.neighbors[t][k] == Some(u))
    }

    pub fn tree_parent(&self, t: usize) -> Option<usize> {
        self.tree_parent[t]
    }

    pub fn tree_depth(&self, t: usize) -> usize {
        self.tree_depth[t]
    }

    /// Triangles on the dual-tree path from `from` to `to`, inclusive.
    pub fn sleeve(&self, from: usize, to: usize) -> Vec<usize> {
        let (mut a, mut b) = (from, to);
        let mut head = vec![];
        let mut tail = vec![];
        while self.tree_depth[a] > self.tree_depth[b] {
            head.push(a);
            a = self.tree_parent[a].unwrap();
        }
        while self.tree_depth[b] > self.tree_depth[a] {
            tail.push(b);
            b = self.tree_parent[b].unwrap();
        }
        while a != b {
            head.push(a);
            tail.push(b);
            a = self.tree_parent[a].unwrap();
            b = self.tree_parent[b].unwrap();
        }
        head.push(a);
        head.extend(tail.into_iter().rev());
        head
    }

    pub fn area(&self, poly: &SimplePolygon) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let (a, b, c) = (poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2]));
                0.5 * (b - a).cross(c - a)
            })
            .sum()
    }

    fn contains_closed(&self, poly: &SimplePolygon, t: usize, p: Point) -> Option<[Orientation; 3]> {
        let tri = self.triangles[t];
        let mut o = [Orientation::Collinear; 3];
        for k in 0..3 {
            o[k] = orientation(poly.vertex(tri[k]), poly.vertex(tri[(k + 1) % 3]), p);
            if o[k] == Orientation::Clockwise {
                return None;
            }
        }
        Some(o)
    }

    /// Locates `p`; boundary and vertex incidences are reported explicitly.
    pub fn locate(&self, poly: &SimplePolygon, p: Point) -> Result<Location> {
        if !p.is_finite() {
            return Err(Error::OutsidePolygon(p));
        }
        for t in 0..self.triangles.len() {
            let tri = self.triangles[t];
            // Cheap bounding-box rejection before the exact tests.
            let (a, b, c) = (poly.vertex(tri[0]), poly.vertex(tri[1]), poly.vertex(tri[2]));
            if p.x < a.x.min(b.x).min(c.x)
                || p.x > a.x.max(b.x).max(c.x)
                || p.y < a.y.min(b.y).min(c.y)
                || p.y > a.y.max(b.y).max(c.y)
            {
                continue;
            }
            let Some(o) = self.contains_closed(poly, t, p) else { continue };
            let zeros: Vec<usize> = (0..3).filter(|&k| o[k] == Orientation::Collinear).collect();
            return Ok(match zeros.len() {
                0 => Location::Interior(t),
                1 => {
                    let k = zeros[0];
                    if self.neighbors[t][k].is_some() {
                        Location::OnDiagonal(t, k)
                    } else {
                        Location::OnBoundaryEdge { t, k, edge: tri[k] }
                    }
                }
                _ => {
                    // Two sides meet at the shared vertex.
                    let v = (0..3).find(|&k| poly.vertex(tri[k]) == p).map(|k| tri[k]);
                    match v {
                        Some(v) => Location::AtVertex { t, v },
                        None => return Err(Error::Internal("degenerate triangle in location".into())),
                    }
                }
            });
        }
        Err(Error::OutsidePolygon(p))
    }

    /// First point where the ray `origin + s * dir`, `s >= 0`, leaves the
    /// polygon. Grazing contact with the boundary does not stop the ray.
    pub fn ray_shoot(&self, poly: &SimplePolygon, origin: Point, dir: Point) -> Result<(Point, BoundaryHit)> {
        let loc = self.locate(poly, origin)?;
        self.ray_shoot_from(poly, loc, origin, dir)
    }

    pub fn ray_shoot_from(
        &self,
        poly: &SimplePolygon,
        loc: Location,
        origin: Point,
        dir: Point,
    ) -> Result<(Point, BoundaryHit)> {
        if dir.x == 0.0 && dir.y == 0.0 || !dir.is_finite() {
            return Err(Error::DegenerateInput("ray direction is zero"));
        }
        match walk::walk_ray(self, poly, loc, origin, dir)? {
            WalkEnd::Blocked { point, hit, .. } => Ok((point, hit)),
            WalkEnd::Reached { .. } => Err(Error::Internal("ray escaped the polygon".into())),
        }
    }

    /// Like [`Triangulation::ray_shoot_from`] with the ray on the exact line
    /// through `a` and `b`, heading from `a` towards `b`. `origin` must lie
    /// on that line. Use this when the line is known through two points:
    /// a direction computed as `b - a` is rounded, and the rounded ray can
    /// clip an edge next to a vertex it should only graze.
    pub fn ray_shoot_along(
        &self,
        poly: &SimplePolygon,
        loc: Location,
        origin: Point,
        a: Point,
        b: Point,
    ) -> Result<(Point, BoundaryHit)> {
        if a == b {
            return Err(Error::DegenerateInput("ray direction is zero"));
        }
        match walk::walk_along(self, poly, loc, origin, a, b)? {
            WalkEnd::Blocked { point, hit, .. } => Ok((point, hit)),
            WalkEnd::Reached { .. } => Err(Error::Internal("ray escaped the polygon".into())),
        }
    }

    /// Walks the segment `p -> q`, stopping at the first exit from the
    /// polygon.
    pub fn walk_segment(&self, poly: &SimplePolygon, loc: Location, p: Point, q: Point) -> Result<WalkEnd> {
        walk::walk_segment(self, poly, loc, p, q)
    }

    /// Closed visibility: the segment may touch the boundary.
    pub fn is_visible(&self, poly: &SimplePolygon, p: Point, q: Point) -> Result<bool> {
        let lp = self.locate(poly, p)?;
        self.locate(poly, q)?;
        Ok(matches!(walk::walk_segment(self, poly, lp, p, q)?, WalkEnd::Reached { .. }))
    }

    /// The maximal segment of the polygon through `anchor` with direction
    /// `dir`. When `anchor` is a vertex and one direction points out of the
    /// polygon, that side of the chord collapses to `anchor`.
    pub fn maximal_chord(&self, poly: &SimplePolygon, anchor: Point, dir: Point) -> Result<Chord> {
        let loc = self.locate(poly, anchor)?;
        let (b, _) = self.ray_shoot_from(poly, loc, anchor, dir)?;
        let (a, _) = self.ray_shoot_from(poly, loc, anchor, -dir)?;
        Ok(Chord { a, b })
    }
}

fn root_dual_tree(neighbors: &[[Option<usize>; 3]]) -> Result<(Vec<Option<usize>>, Vec<usize>)> {
    let m = neighbors.len();
    let mut parent = vec![None; m];
    let mut depth = vec![usize::MAX; m];
    let mut queue = VecDeque::new();
    depth[0] = 0;
    queue.push_back(0);
    let mut seen = 1;
    while let Some(t) = queue.pop_front() {
        for u in neighbors[t].iter().flatten() {
            if depth[*u] == usize::MAX {
                depth[*u] = depth[t] + 1;
                parent[*u] = Some(t);
                seen += 1;
                queue.push_back(*u);
            }
        }
    }
    if seen != m {
        return Err(Error::Internal("dual graph is disconnected".into()));
    }
    Ok((parent, depth))
}
