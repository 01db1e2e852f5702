//! Geodesics inside a simple polygon: point-to-point shortest paths, shortest
//! path trees and maps, and geodesic distance to a segment.

mod segment;
mod spt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{dot_sign, orientation, Orientation, Point};
use crate::topology::{Location, SimplePolygon, Triangulation};

pub use segment::{distance_to_segment, segment_distance_from_paths, SegmentDistance};
pub use spt::{build_spm, build_spt, ExtensionEdge, ShortestPathMap, ShortestPathTree, SpmCell};

/// A polyline inside the polygon. `vertex_ids[i]` names the polygon vertex
/// at `points[i]`, when there is one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPath {
    pub points: Vec<Point>,
    pub vertex_ids: Vec<Option<usize>>,
    pub length: f64,
}

impl GeodesicPath {
    pub fn new(points: Vec<Point>, vertex_ids: Vec<Option<usize>>) -> Self {
        debug_assert_eq!(points.len(), vertex_ids.len());
        let length = points.windows(2).fold(0.0, |acc, w| acc + w[0].dist(w[1]));
        GeodesicPath { points, vertex_ids, length }
    }

    pub fn single(p: Point, id: Option<usize>) -> Self {
        GeodesicPath { points: vec![p], vertex_ids: vec![id], length: 0.0 }
    }

    pub fn start(&self) -> Point {
        self.points[0]
    }

    pub fn end(&self) -> Point {
        *self.points.last().unwrap()
    }

    /// Number of segments.
    pub fn edge_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.clone();
        p.points.reverse();
        p.vertex_ids.reverse();
        p
    }

    /// Drops repeated points and interior vertices lying on the segment
    /// between their neighbours.
    pub fn simplified(self) -> Self {
        let mut pts: Vec<Point> = Vec::with_capacity(self.points.len());
        let mut ids: Vec<Option<usize>> = Vec::with_capacity(self.points.len());
        for (p, id) in self.points.into_iter().zip(self.vertex_ids) {
            if pts.last() == Some(&p) {
                if id.is_some() {
                    *ids.last_mut().unwrap() = id;
                }
                continue;
            }
            while pts.len() >= 2 {
                let (a, m) = (pts[pts.len() - 2], pts[pts.len() - 1]);
                let straight = orientation(a, m, p) == Orientation::Collinear && dot_sign(m, a, p) < 0;
                if !straight {
                    break;
                }
                pts.pop();
                ids.pop();
            }
            pts.push(p);
            ids.push(id);
        }
        GeodesicPath::new(pts, ids)
    }
}

fn location_vertex(loc: Location) -> Option<usize> {
    match loc {
        Location::AtVertex { v, .. } => Some(v),
        _ => None,
    }
}

/// Shortest path from `p` to `q` by the funnel algorithm over the sleeve of
/// triangles between them.
pub fn shortest_path(poly: &SimplePolygon, tri: &Triangulation, p: Point, q: Point) -> Result<GeodesicPath> {
    let lp = tri.locate_near(poly, p)?;
    let lq = tri.locate_near(poly, q)?;
    Ok(shortest_path_located(poly, tri, p, lp, q, lq))
}

pub(crate) fn shortest_path_located(
    poly: &SimplePolygon,
    tri: &Triangulation,
    p: Point,
    lp: Location,
    q: Point,
    lq: Location,
) -> GeodesicPath {
    let (idp, idq) = (location_vertex(lp), location_vertex(lq));
    if p == q {
        return GeodesicPath::single(p, idp);
    }
    let sleeve = tri.sleeve(lp.triangle(), lq.triangle());
    // Portals as (left, right) seen when walking from p to q.
    let mut portals: Vec<((Point, Option<usize>), (Point, Option<usize>))> = Vec::with_capacity(sleeve.len() + 1);
    portals.push(((p, idp), (p, idp)));
    for w in sleeve.windows(2) {
        let k = tri.shared_side(w[0], w[1]).expect("sleeve triangles are adjacent");
        let tv = tri.triangle(w[0]);
        let (y, z) = (tv[k], tv[(k + 1) % 3]);
        portals.push(((poly.vertex(z), Some(z)), (poly.vertex(y), Some(y))));
    }
    portals.push(((q, idq), (q, idq)));
    funnel(&portals).simplified()
}

type Portal = ((Point, Option<usize>), (Point, Option<usize>));

/// Moving a funnel side from `side` to `w` keeps it inside the funnel:
/// `w` is on the `turn` side of the ray from `apex` through `side`, or on
/// that ray. Points on the opposite ray do not count, which matters when
/// the apex lies on a portal and the funnel opens to a half-plane.
fn narrows(apex: Point, side: Point, w: Point, turn: Orientation) -> bool {
    if apex == side {
        return true;
    }
    match orientation(apex, side, w) {
        Orientation::Collinear => dot_sign(apex, side, w) > 0,
        o => o == turn,
    }
}

/// `w` passes the other side of the funnel, the ray from `apex` through
/// `other`: strictly on its `turn` side, or on the ray past `other`.
fn crosses(apex: Point, other: Point, w: Point, turn: Orientation) -> bool {
    if apex == other {
        return false;
    }
    match orientation(apex, other, w) {
        Orientation::Collinear => dot_sign(other, apex, w) < 0,
        o => o == turn,
    }
}

fn funnel(portals: &[Portal]) -> GeodesicPath {
    let (start, start_id) = portals[0].0;
    let mut pts = vec![start];
    let mut ids = vec![start_id];
    let (mut apex, mut left, mut right) = (portals[0].0, portals[0].0, portals[0].1);
    let (mut left_i, mut right_i) = (0usize, 0usize);
    let mut i = 1;
    while i < portals.len() {
        let (l, r) = portals[i];
        // Tighten the right boundary.
        if r.0 != right.0 && narrows(apex.0, right.0, r.0, Orientation::CounterClockwise) {
            if !crosses(apex.0, left.0, r.0, Orientation::CounterClockwise) {
                right = r;
                right_i = i;
            } else {
                // The right boundary crossed the left one: the left point
                // becomes a path vertex.
                pts.push(left.0);
                ids.push(left.1);
                apex = left;
                right = apex;
                right_i = left_i;
                i = left_i + 1;
                continue;
            }
        }
        // Tighten the left boundary.
        if l.0 != left.0 && narrows(apex.0, left.0, l.0, Orientation::Clockwise) {
            if !crosses(apex.0, right.0, l.0, Orientation::Clockwise) {
                left = l;
                left_i = i;
            } else {
                pts.push(right.0);
                ids.push(right.1);
                apex = right;
                left = apex;
                left_i = right_i;
                i = right_i + 1;
                continue;
            }
        }
        i += 1;
    }
    let (end, end_id) = portals[portals.len() - 1].0;
    pts.push(end);
    ids.push(end_id);
    GeodesicPath::new(pts, ids)
}
