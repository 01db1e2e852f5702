use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::geodesic::GeodesicPath;
use crate::geom::{Point, Segment};
use crate::topology::SimplePolygon;

use super::{naive_contains, naive_visible};

#[derive(PartialEq)]
struct Entry(f64, usize);

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.total_cmp(&self.0).then_with(|| other.1.cmp(&self.1))
    }
}

/// Dijkstra over the visibility graph of `nodes`, from `src`, stopping once
/// `stop` is settled. Returns distances and predecessors.
fn dijkstra(poly: &SimplePolygon, nodes: &[Point], src: usize, stop: Option<usize>) -> (Vec<f64>, Vec<usize>) {
    let m = nodes.len();
    let mut dist = vec![f64::INFINITY; m];
    let mut prev = vec![usize::MAX; m];
    let mut done = vec![false; m];
    let mut heap = BinaryHeap::new();
    dist[src] = 0.0;
    heap.push(Entry(0.0, src));
    while let Some(Entry(d, u)) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if Some(u) == stop {
            break;
        }
        for v in 0..m {
            if done[v] || v == u {
                continue;
            }
            let nd = d + nodes[u].dist(nodes[v]);
            if nd < dist[v] && naive_visible(poly, nodes[u], nodes[v]) {
                dist[v] = nd;
                prev[v] = u;
                heap.push(Entry(nd, v));
            }
        }
    }
    (dist, prev)
}

fn trace_back(nodes: &[Point], prev: &[usize], id: impl Fn(usize) -> Option<usize>, to: usize) -> GeodesicPath {
    let mut pts = vec![];
    let mut ids = vec![];
    let mut cur = to;
    while cur != usize::MAX {
        pts.push(nodes[cur]);
        ids.push(id(cur));
        cur = prev[cur];
    }
    pts.reverse();
    ids.reverse();
    GeodesicPath::new(pts, ids)
}

/// Shortest path by Dijkstra over the visibility graph of the polygon
/// vertices plus `p` and `q`. Cubic time.
pub fn naive_shortest_path(poly: &SimplePolygon, p: Point, q: Point) -> Result<GeodesicPath> {
    for x in [p, q] {
        if !naive_contains(poly, x) {
            return Err(Error::OutsidePolygon(x));
        }
    }
    let n = poly.len();
    let mut nodes: Vec<Point> = poly.vertices().to_vec();
    nodes.push(p);
    nodes.push(q);
    let (src, dst) = (n, n + 1);
    let id = |i: usize| if i < n { Some(i) } else { poly.vertex_index(nodes[i]) };
    if p == q {
        return Ok(GeodesicPath::single(p, id(src)));
    }
    let (dist, prev) = dijkstra(poly, &nodes, src, Some(dst));
    if !dist[dst].is_finite() {
        return Err(Error::Internal("visibility graph is disconnected".into()));
    }
    Ok(trace_back(&nodes, &prev, id, dst).simplified())
}

pub fn visibility_graph_distance(poly: &SimplePolygon, p: Point, q: Point) -> Result<f64> {
    Ok(naive_shortest_path(poly, p, q)?.length)
}

/// Nodes this close to a segment (relative) lie on it.
const ON_SEGMENT: f64 = 1e-12;

/// Closest point of a segment, found by brute force.
#[derive(Debug, Clone, PartialEq)]
pub struct NaiveSegmentDistance {
    pub distance: f64,
    pub closest_point: Point,
    pub path: GeodesicPath,
}

/// Geodesic distances from one source to every polygon vertex.
#[derive(Debug, Clone)]
pub struct VisibilityField<'a> {
    poly: &'a SimplePolygon,
    /// Polygon vertices, then the source.
    nodes: Vec<Point>,
    dist: Vec<f64>,
    prev: Vec<usize>,
}

impl<'a> VisibilityField<'a> {
    pub fn new(poly: &'a SimplePolygon, src: Point) -> Result<Self> {
        if !naive_contains(poly, src) {
            return Err(Error::OutsidePolygon(src));
        }
        let mut nodes: Vec<Point> = poly.vertices().to_vec();
        nodes.push(src);
        let (dist, prev) = dijkstra(poly, &nodes, poly.len(), None);
        Ok(VisibilityField { poly, nodes, dist, prev })
    }

    /// Constructed points on the segment can be rounded just outside the
    /// polygon; those are looked at from a hair closer to `u`.
    fn sees(&self, u: Point, c: Point) -> bool {
        naive_visible(self.poly, u, c) || naive_visible(self.poly, u, c.lerp(u, 1e-9))
    }

    /// The last leg of a shortest path to a segment ends at the foot of the
    /// perpendicular from its first point or at a segment endpoint. Points
    /// where the view of a node is cut off are reached at least as cheaply
    /// through the vertex doing the cutting.
    pub fn distance_to_segment(&self, seg: Segment) -> NaiveSegmentDistance {
        let n = self.poly.len();
        let mut best: Option<(f64, usize, Point)> = None;
        for (u, &up) in self.nodes.iter().enumerate() {
            let du = self.dist[u];
            if !du.is_finite() {
                continue;
            }
            let foot = seg.closest_point(up);
            if up.dist(foot) <= ON_SEGMENT * (1.0 + up.norm()) {
                // The node is on the segment; its rounded foot may not be
                // in the polygon when the segment runs along an edge.
                if best.is_none_or(|(b, _, _)| du < b) {
                    best = Some((du, u, up));
                }
                continue;
            }
            for c in [foot, seg.a, seg.b] {
                let d = du + up.dist(c);
                if best.is_some_and(|(b, _, _)| d >= b) || !self.sees(up, c) {
                    continue;
                }
                best = Some((d, u, c));
            }
        }
        let (distance, u, c) = best.expect("the source is a node");
        let id = |i: usize| if i < n { Some(i) } else { self.poly.vertex_index(self.nodes[i]) };
        let mut path = trace_back(&self.nodes, &self.prev, id, u);
        path.points.push(c);
        path.vertex_ids.push(None);
        let path = GeodesicPath::new(path.points, path.vertex_ids).simplified();
        NaiveSegmentDistance { distance, closest_point: c, path }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Vec<Point> {
        v.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn oracle_paths() {
        let sq = SimplePolygon::new(pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)])).unwrap();
        let path = naive_shortest_path(&sq, Point::new(0., 0.), Point::new(1., 1.)).unwrap();
        assert_eq!(path.points.len(), 2);

        let l = SimplePolygon::new(pts(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)])).unwrap();
        let (s, t) = (Point::new(0.5, 1.75), Point::new(1.75, 0.25));
        let path = naive_shortest_path(&l, s, t).unwrap();
        assert_eq!(path.points, vec![s, Point::new(1., 1.), t]);
        assert!((path.length - 1.962048).abs() < 1e-6);
        assert_eq!(naive_shortest_path(&l, s, s).unwrap().length, 0.0);
    }
}
