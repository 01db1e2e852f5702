use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{orientation, Orientation, Point};
use crate::topology::{Location, SimplePolygon, Triangulation};

use super::GeodesicPath;

/// Funnel with which a triangle is entered: both chains start at the apex
/// and end at the endpoints of the entry side (as seen walking in).
#[derive(Debug, Clone)]
struct Funnel {
    left: Vec<usize>,
    right: Vec<usize>,
}

/// Shortest paths from one root to every polygon vertex, together with the
/// funnel each triangle was entered with, so that the predecessor of any
/// point can be read off locally.
///
/// Nodes are polygon vertices `0..n`; node `n` is the root unless the root
/// coincides with a vertex, in which case that vertex is the root node.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    root: Point,
    root_node: usize,
    nodes: Vec<Point>,
    parent: Vec<Option<usize>>,
    dist: Vec<f64>,
    root_triangle: usize,
    funnels: Vec<Option<Funnel>>,
}

/// Which funnel node owns `c`: the unique wedge of the funnel containing it.
fn funnel_owner(nodes: &[Point], f: &Funnel, c: Point) -> Option<usize> {
    let (l, r) = (&f.left, &f.right);
    let pt = |i: usize| nodes[i];
    for j in 1..l.len() {
        let inside = orientation(pt(l[j - 1]), pt(l[j]), c) == Orientation::CounterClockwise;
        let before_next = j + 1 == l.len() || orientation(pt(l[j]), pt(l[j + 1]), c) != Orientation::CounterClockwise;
        if inside && before_next {
            return Some(j);
        }
    }
    for j in 1..r.len() {
        let inside = orientation(pt(r[j - 1]), pt(r[j]), c) == Orientation::Clockwise;
        let before_next = j + 1 == r.len() || orientation(pt(r[j]), pt(r[j + 1]), c) != Orientation::Clockwise;
        if inside && before_next {
            return Some(l.len() - 1 + j);
        }
    }
    let apex = pt(l[0]);
    let left_ok = l.len() < 2 || orientation(apex, pt(l[1]), c) != Orientation::CounterClockwise;
    let right_ok = r.len() < 2 || orientation(apex, pt(r[1]), c) != Orientation::Clockwise;
    (left_ok && right_ok).then_some(0)
}

impl Funnel {
    /// Funnel node at position `slot` (0 = apex, then the left chain, then
    /// the right chain).
    fn node(&self, slot: usize) -> usize {
        if slot < self.left.len() {
            self.left[slot]
        } else {
            self.right[slot - self.left.len() + 1]
        }
    }

    /// Child funnels after adding `c`, owned by funnel node `slot`:
    /// (through side `c -> left end`, through side `right end -> c`).
    fn split(&self, slot: usize, c: usize) -> (Funnel, Funnel) {
        if slot < self.left.len() {
            let j = slot;
            let toward_left = Funnel { left: self.left[j..].to_vec(), right: vec![self.left[j], c] };
            let mut left = self.left[..=j].to_vec();
            left.push(c);
            (toward_left, Funnel { left, right: self.right.clone() })
        } else {
            let j = slot - self.left.len() + 1;
            let toward_right = Funnel { left: vec![self.right[j], c], right: self.right[j..].to_vec() };
            let mut right = self.right[..=j].to_vec();
            right.push(c);
            (Funnel { left: self.left.clone(), right }, toward_right)
        }
    }
}

pub fn build_spt(poly: &SimplePolygon, tri: &Triangulation, root: Point) -> Result<ShortestPathTree> {
    let loc = tri.locate_near(poly, root)?;
    ShortestPathTree::build(poly, tri, root, loc)
}

impl ShortestPathTree {
    pub fn build(poly: &SimplePolygon, tri: &Triangulation, root: Point, loc: Location) -> Result<Self> {
        let n = poly.len();
        let mut nodes: Vec<Point> = poly.vertices().to_vec();
        nodes.push(root);
        let root_node = match loc {
            Location::AtVertex { v, .. } => v,
            _ => n,
        };
        let mut parent = vec![None; n + 1];
        let mut dist = vec![f64::INFINITY; n + 1];
        dist[root_node] = 0.0;
        let t0 = loc.triangle();
        let tv0 = tri.triangle(t0);
        for &v in &tv0 {
            if v != root_node {
                parent[v] = Some(root_node);
                dist[v] = root.dist(nodes[v]);
            }
        }
        let chain = |end: usize| if end == root_node { vec![root_node] } else { vec![root_node, end] };
        let mut funnels: Vec<Option<Funnel>> = vec![None; tri.len()];
        let mut stack: Vec<(usize, usize, Funnel)> = Vec::new();
        for k in 0..3 {
            if let Some(u) = tri.neighbor(t0, k) {
                // Leaving through side (y, z): z is on the left.
                let (y, z) = (tv0[k], tv0[(k + 1) % 3]);
                stack.push((u, t0, Funnel { left: chain(z), right: chain(y) }));
            }
        }
        while let Some((t, from, f)) = stack.pop() {
            let k = tri.shared_side(t, from).unwrap();
            let tv = tri.triangle(t);
            let c = tv[(k + 2) % 3];
            let slot = funnel_owner(&nodes, &f, nodes[c])
                .ok_or_else(|| Error::Internal(format!("no funnel wedge owns vertex {c}")))?;
            let owner = f.node(slot);
            parent[c] = Some(owner);
            dist[c] = dist[owner] + nodes[owner].dist(nodes[c]);
            let (via_left, via_right) = f.split(slot, c);
            if let Some(u) = tri.neighbor(t, (k + 2) % 3) {
                stack.push((u, t, via_left));
            }
            if let Some(u) = tri.neighbor(t, (k + 1) % 3) {
                stack.push((u, t, via_right));
            }
            funnels[t] = Some(f);
        }
        if let Some(v) = (0..n).find(|&v| v != root_node && parent[v].is_none()) {
            return Err(Error::Internal(format!("vertex {v} not reached by the shortest path tree")));
        }
        Ok(ShortestPathTree { root, root_node, nodes, parent, dist, root_triangle: t0, funnels })
    }

    pub fn root(&self) -> Point {
        self.root
    }

    /// The root's polygon vertex, if it sits on one.
    pub fn root_vertex(&self) -> Option<usize> {
        (self.root_node < self.nodes.len() - 1).then_some(self.root_node)
    }

    pub fn vertex_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Geodesic distance from the root to polygon vertex `v`.
    pub fn distance(&self, v: usize) -> f64 {
        self.dist[v]
    }

    /// Parent of polygon vertex `v`: `Some(Some(u))` for a vertex, `Some(None)`
    /// for the root point, `None` when `v` is the root itself.
    pub fn parent(&self, v: usize) -> Option<Option<usize>> {
        self.parent[v].map(|u| (u != self.nodes.len() - 1).then_some(u))
    }

    pub fn parent_point(&self, v: usize) -> Option<Point> {
        self.parent[v].map(|u| self.nodes[u])
    }

    fn node_id(&self, node: usize) -> Option<usize> {
        (node < self.nodes.len() - 1).then_some(node)
    }

    /// Node that is the last path vertex before `p` (the root node if `p`
    /// sees the root). For `p` at a vertex, that vertex's parent.
    fn predecessor_node(&self, tri: &Triangulation, p: Point, loc: Location) -> Result<usize> {
        if let Location::AtVertex { v, .. } = loc {
            return Ok(self.parent[v].unwrap_or(self.root_node));
        }
        if p == self.root {
            return Ok(self.root_node);
        }
        let candidates: Vec<usize> = match loc {
            Location::OnDiagonal(t, k) => {
                vec![t, tri.neighbor(t, k).unwrap()]
            }
            _ => vec![loc.triangle()],
        };
        for t in candidates {
            if t == self.root_triangle {
                return Ok(self.root_node);
            }
            let f = self.funnels[t].as_ref().unwrap();
            if let Some(slot) = funnel_owner(&self.nodes, f, p) {
                return Ok(f.node(slot));
            }
        }
        Err(Error::Internal(format!("no funnel wedge owns {p}")))
    }

    /// Last vertex before `p` on the shortest path from the root.
    pub fn predecessor(&self, poly: &SimplePolygon, tri: &Triangulation, p: Point) -> Result<Point> {
        let loc = tri.locate_near(poly, p)?;
        Ok(self.nodes[self.predecessor_node(tri, p, loc)?])
    }

    /// Shortest path from the root to polygon vertex `v`.
    pub fn path_to_vertex(&self, v: usize) -> GeodesicPath {
        self.path_from_node(v, None)
    }

    fn path_from_node(&self, node: usize, tail: Option<(Point, Option<usize>)>) -> GeodesicPath {
        let mut pts = Vec::new();
        let mut ids = Vec::new();
        if let Some((p, id)) = tail {
            pts.push(p);
            ids.push(id);
        }
        let mut cur = Some(node);
        while let Some(u) = cur {
            pts.push(self.nodes[u]);
            ids.push(self.node_id(u));
            cur = self.parent[u];
        }
        pts.reverse();
        ids.reverse();
        GeodesicPath::new(pts, ids).simplified()
    }

    /// Shortest path from the root to an arbitrary point of the polygon.
    pub fn path_to(&self, poly: &SimplePolygon, tri: &Triangulation, p: Point) -> Result<GeodesicPath> {
        let loc = tri.locate_near(poly, p)?;
        self.path_to_located(tri, p, loc)
    }

    pub fn path_to_located(&self, tri: &Triangulation, p: Point, loc: Location) -> Result<GeodesicPath> {
        if let Location::AtVertex { v, .. } = loc {
            return Ok(self.path_to_vertex(v));
        }
        let u = self.predecessor_node(tri, p, loc)?;
        Ok(self.path_from_node(u, Some((p, None))))
    }

    /// Geodesic distance from the root to `p`.
    pub fn distance_to(&self, poly: &SimplePolygon, tri: &Triangulation, p: Point) -> Result<f64> {
        let loc = tri.locate_near(poly, p)?;
        if let Location::AtVertex { v, .. } = loc {
            return Ok(self.dist[v]);
        }
        let u = self.predecessor_node(tri, p, loc)?;
        Ok(self.dist[u] + self.nodes[u].dist(p))
    }

    /// Polygon vertices whose parent is vertex `v`.
    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&w| self.parent[w] == Some(v)).collect()
    }

    /// Children of every node, indexed by polygon vertex.
    pub fn children_lists(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut out = vec![Vec::new(); n];
        for w in 0..n {
            if let Some(u) = self.parent[w] {
                if u < n {
                    out[u].push(w);
                }
            }
        }
        out
    }

    /// Parameters in `(0, 1)` along polygon edge `e` (from vertex `e` to
    /// `e + 1`) where the predecessor of boundary points changes. These are
    /// the crossings of the extended funnel edges of the edge's triangle.
    pub fn edge_breakpoints(&self, poly: &SimplePolygon, tri: &Triangulation, e: usize) -> Vec<f64> {
        let Location::OnBoundaryEdge { t, .. } = tri.edge_location(e) else { unreachable!() };
        if t == self.root_triangle {
            return Vec::new();
        }
        let Some(f) = self.funnels[t].as_ref() else { return Vec::new() };
        let (a, b) = (poly.vertex(e), poly.vertex(poly.next(e)));
        let ab = b - a;
        let mut out = Vec::new();
        for chain in [&f.left, &f.right] {
            for w in chain.windows(2) {
                let (o, dir) = (self.nodes[w[1]], self.nodes[w[1]] - self.nodes[w[0]]);
                let den = dir.cross(ab);
                if den == 0.0 {
                    continue;
                }
                let along_ray = (a - o).cross(ab) / den;
                let along_edge = (a - o).cross(dir) / den;
                if along_ray > 0.0 && along_edge > 0.0 && along_edge < 1.0 {
                    out.push(along_edge);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Parent links of all polygon vertices at once, as node ids where the
    /// root point is `None`.
    pub fn parents(&self) -> Vec<Option<Option<usize>>> {
        (0..self.vertex_count()).map(|v| self.parent(v)).collect()
    }
}

/// A cell of the shortest path map: a convex piece of one triangle whose
/// points all share the same predecessor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpmCell {
    pub triangle: usize,
    pub polygon: Vec<Point>,
    pub predecessor: Point,
    pub predecessor_id: Option<usize>,
}

/// A tree edge extended beyond its child vertex until it reaches the
/// boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtensionEdge {
    pub vertex: usize,
    pub from: Point,
    pub to: Point,
}

#[derive(Debug, Clone)]
pub struct ShortestPathMap {
    pub tree: ShortestPathTree,
    pub cells: Vec<SpmCell>,
    pub extensions: Vec<ExtensionEdge>,
}

impl ShortestPathMap {
    pub fn predecessor(&self, poly: &SimplePolygon, tri: &Triangulation, p: Point) -> Result<Point> {
        self.tree.predecessor(poly, tri, p)
    }
}

/// Keeps the part of `poly` on the closed left side of `a -> b`.
fn clip_left(poly: &[Point], a: Point, b: Point) -> Vec<Point> {
    let side = |p: Point| (b - a).cross(p - a);
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
        let (sp, sq) = (side(p), side(q));
        if sp >= 0.0 {
            out.push(p);
        }
        if (sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0) {
            out.push(p + (q - p) * (sp / (sp - sq)));
        }
    }
    out
}

fn polygon_area(p: &[Point]) -> f64 {
    (0..p.len()).map(|i| p[i].cross(p[(i + 1) % p.len()])).sum::<f64>() * 0.5
}

pub fn build_spm(poly: &SimplePolygon, tri: &Triangulation, root: Point) -> Result<ShortestPathMap> {
    let tree = build_spt(poly, tri, root)?;
    let mut cells = Vec::new();
    for t in 0..tri.len() {
        let tv = tri.triangle(t);
        let corners: Vec<Point> = tv.iter().map(|&v| poly.vertex(v)).collect();
        let Some(f) = &tree.funnels[t] else {
            cells.push(SpmCell {
                triangle: t,
                polygon: corners,
                predecessor: root,
                predecessor_id: tree.node_id(tree.root_node),
            });
            continue;
        };
        let pt = |i: usize| tree.nodes[i];
        let (l, r) = (&f.left, &f.right);
        // Wedge of each funnel node as half-planes (through, direction),
        // keeping the left side; these mirror the tests in `funnel_owner`.
        let mut wedges: Vec<(usize, Vec<(Point, Point)>)> = Vec::new();
        let apex = pt(l[0]);
        let mut apex_planes = Vec::new();
        if l.len() > 1 {
            apex_planes.push((apex, apex - pt(l[1])));
        }
        if r.len() > 1 {
            apex_planes.push((apex, pt(r[1]) - apex));
        }
        wedges.push((l[0], apex_planes));
        for j in 1..l.len() {
            let mut planes = vec![(pt(l[j]), pt(l[j]) - pt(l[j - 1]))];
            if j + 1 < l.len() {
                planes.push((pt(l[j]), pt(l[j]) - pt(l[j + 1])));
            }
            wedges.push((l[j], planes));
        }
        for j in 1..r.len() {
            let mut planes = vec![(pt(r[j]), pt(r[j - 1]) - pt(r[j]))];
            if j + 1 < r.len() {
                planes.push((pt(r[j]), pt(r[j + 1]) - pt(r[j])));
            }
            wedges.push((r[j], planes));
        }
        let tri_area = polygon_area(&corners);
        for (node, planes) in wedges {
            let mut cell = corners.clone();
            for (through, d) in planes {
                cell = clip_left(&cell, through, through + d);
                if cell.is_empty() {
                    break;
                }
            }
            if cell.len() >= 3 && polygon_area(&cell) > 1e-14 * tri_area.max(1e-300) {
                cells.push(SpmCell {
                    triangle: t,
                    polygon: cell,
                    predecessor: pt(node),
                    predecessor_id: tree.node_id(node),
                });
            }
        }
    }
    let mut extensions = Vec::new();
    for v in 0..poly.len() {
        let Some(u) = tree.parent[v] else { continue };
        let (pu, pv) = (tree.nodes[u], poly.vertex(v));
        if pu == pv {
            continue;
        }
        let (hit, _) = tri.ray_shoot_along(poly, tri.vertex_location(v), pv, pu, pv)?;
        if hit != pv {
            extensions.push(ExtensionEdge { vertex: v, from: pv, to: hit });
        }
    }
    Ok(ShortestPathMap { tree, cells, extensions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::shortest_path;
    use crate::geodesic::tests::{l_polygon, square};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn convex_root_parents_everything() {
        let sq = square();
        let tri = Triangulation::new(&sq).unwrap();
        let spt = build_spt(&sq, &tri, p(0.5, 0.5)).unwrap();
        for v in 0..4 {
            assert_eq!(spt.parent(v), Some(None));
            assert!((spt.distance(v) - 0.5f64.sqrt()).abs() < 1e-15);
        }
        let spm = build_spm(&sq, &tri, p(0.5, 0.5)).unwrap();
        assert!(spm.cells.iter().all(|c| c.predecessor == p(0.5, 0.5)));
        assert!(spm.extensions.is_empty());
    }

    #[test]
    fn l_polygon_tree() {
        let l = l_polygon();
        let tri = Triangulation::new(&l).unwrap();
        let s = p(0.5, 1.75);
        let spt = build_spt(&l, &tri, s).unwrap();
        assert_eq!(spt.parent(2), Some(Some(3)));
        assert_eq!(spt.parent(0), Some(None));
        for v in 0..l.len() {
            let path = shortest_path(&l, &tri, s, l.vertex(v)).unwrap();
            assert!((path.length - spt.distance(v)).abs() <= 1e-12 * path.length.max(1.0));
        }
        let t = p(1.75, 0.25);
        assert_eq!(spt.predecessor(&l, &tri, t).unwrap(), p(1., 1.));
        assert_eq!(spt.path_to(&l, &tri, t).unwrap().points, vec![s, p(1., 1.), t]);
    }

    #[test]
    fn l_polygon_map_extension() {
        let l = l_polygon();
        let tri = Triangulation::new(&l).unwrap();
        let s = p(0.5, 1.75);
        let spm = build_spm(&l, &tri, s).unwrap();
        let ext: Vec<_> = spm.extensions.iter().filter(|e| e.vertex == 3).collect();
        assert_eq!(ext.len(), 1);
        assert!(ext[0].to.dist(p(5. / 3., 0.)) < 1e-12);
        let area: f64 = spm.cells.iter().map(|c| polygon_area(&c.polygon)).sum();
        assert!((area - 3.0).abs() < 1e-9, "{area}");
    }

    #[test]
    fn root_on_a_vertex() {
        let l = l_polygon();
        let tri = Triangulation::new(&l).unwrap();
        let spt = build_spt(&l, &tri, p(1., 1.)).unwrap();
        assert_eq!(spt.root_vertex(), Some(3));
        assert_eq!(spt.parent(3), None);
        for v in 0..l.len() {
            assert!((spt.distance(v) - l.vertex(v).dist(p(1., 1.))).abs() < 1e-15);
        }
    }
}
