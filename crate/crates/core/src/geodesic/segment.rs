use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{Point, Segment};
use crate::topology::{Location, SimplePolygon, Triangulation};

use super::{shortest_path, GeodesicPath, ShortestPathTree};

/// Closest point of a segment in the geodesic sense, with the path reaching
/// it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentDistance {
    pub distance: f64,
    pub closest_point: Point,
    /// Last path vertex before the segment (the source itself when the
    /// segment is seen directly).
    pub anchor: Point,
    pub anchor_id: Option<usize>,
    /// The last leg meets the segment perpendicularly (otherwise it ends at
    /// a segment endpoint).
    pub perpendicular: bool,
    pub path: GeodesicPath,
}

/// Geodesic distance from `p` to the segment, using funnel paths to the two
/// endpoints.
pub fn distance_to_segment(
    poly: &SimplePolygon,
    tri: &Triangulation,
    p: Point,
    seg: Segment,
) -> Result<SegmentDistance> {
    let pa = shortest_path(poly, tri, p, seg.a)?;
    let pb = shortest_path(poly, tri, p, seg.b)?;
    Ok(segment_distance_from_paths(&pa, &pb, seg))
}

impl ShortestPathTree {
    /// Geodesic distance from the root to the segment.
    pub fn distance_to_segment(&self, poly: &SimplePolygon, tri: &Triangulation, seg: Segment) -> Result<SegmentDistance> {
        let pa = self.path_to(poly, tri, seg.a)?;
        let pb = self.path_to(poly, tri, seg.b)?;
        Ok(segment_distance_from_paths(&pa, &pb, seg))
    }

    /// Like [`Self::distance_to_segment`] with the locations of both
    /// endpoints known, which skips point location.
    pub fn distance_to_segment_located(&self, tri: &Triangulation, seg: Segment, (la, lb): (Location, Location)) -> Result<SegmentDistance> {
        let pa = self.path_to_located(tri, seg.a, la)?;
        let pb = self.path_to_located(tri, seg.b, lb)?;
        Ok(segment_distance_from_paths(&pa, &pb, seg))
    }
}

/// Whether direction `w` lies in the closed cone turning from `from` to
/// `to` through the smaller angle.
fn in_cone(from: Point, to: Point, w: Point) -> bool {
    let scale = from.norm() * to.norm().max(w.norm()) * 1e-12;
    let turn = from.cross(to);
    let a = from.cross(w);
    let b = w.cross(to);
    if turn.abs() <= scale * to.norm().max(1e-300) {
        // Degenerate cone: only the common direction is allowed.
        return a.abs() <= from.norm() * w.norm() * 1e-12 && from.dot(w) > 0.0;
    }
    let s = turn.signum();
    let tol_a = from.norm() * w.norm() * 1e-12;
    let tol_b = to.norm() * w.norm() * 1e-12;
    s * a >= -tol_a && s * b >= -tol_b
}

/// Minimizes over the funnel spanned by the shortest paths `pa` and `pb`
/// from a common source to the endpoints of `seg`. Candidates are the two
/// endpoints and the perpendicular feet from every funnel vertex whose
/// wedge contains the perpendicular direction.
pub fn segment_distance_from_paths(pa: &GeodesicPath, pb: &GeodesicPath, seg: Segment) -> SegmentDistance {
    let mut h = 0;
    while h + 1 < pa.points.len() && h + 1 < pb.points.len() && pa.points[h + 1] == pb.points[h + 1] {
        h += 1;
    }
    let prefix_len: Vec<f64> = {
        let mut acc = vec![0.0];
        for w in pa.points.windows(2) {
            acc.push(acc.last().unwrap() + w[0].dist(w[1]));
        }
        acc
    };
    let (a, b) = (seg.a, seg.b);
    let d = b - a;
    let len2 = d.dot(d);

    let endpoint = |path: &GeodesicPath| {
        let m = path.points.len();
        let (anchor, anchor_id) = if m >= 2 {
            (path.points[m - 2], path.vertex_ids[m - 2])
        } else {
            (path.points[0], path.vertex_ids[0])
        };
        SegmentDistance {
            distance: path.length,
            closest_point: path.end(),
            anchor,
            anchor_id,
            perpendicular: false,
            path: path.clone(),
        }
    };
    let mut best = endpoint(pa);
    let eb = endpoint(pb);
    if eb.distance < best.distance {
        best = eb;
    }
    if len2 == 0.0 {
        return best;
    }

    // Returns the foot of `u` on the segment's relative interior, if any.
    let foot = |u: Point| -> Option<Point> {
        let t = (u - a).dot(d) / len2;
        (t > 0.0 && t < 1.0).then(|| a + d * t)
    };
    let mut consider = |path: &GeodesicPath, idx: usize, base: f64, from: Option<Point>, to: Option<Point>| {
        let u = path.points[idx];
        let Some(f) = foot(u) else { return };
        let w = f - u;
        let dist = base + w.norm();
        if dist >= best.distance {
            return;
        }
        let ok = if w.norm() <= 1e-15 * (1.0 + u.norm()) {
            true
        } else {
            match (from, to) {
                (Some(from), Some(to)) => in_cone(from, to, w),
                _ => false,
            }
        };
        if !ok {
            return;
        }
        let mut pts = path.points[..=idx].to_vec();
        let mut ids = path.vertex_ids[..=idx].to_vec();
        let (anchor, anchor_id) = (u, path.vertex_ids[idx]);
        if w.norm() > 0.0 {
            pts.push(f);
            ids.push(None);
        }
        best = SegmentDistance {
            distance: dist,
            closest_point: f,
            anchor,
            anchor_id,
            perpendicular: true,
            path: GeodesicPath::new(pts, ids),
        };
    };

    // Apex of the funnel: cone between the first edges of the two chains.
    let apex = pa.points[h];
    let first_a = pa.points.get(h + 1).map(|&x| x - apex);
    let first_b = pb.points.get(h + 1).map(|&x| x - apex);
    if let (Some(fa), Some(fb)) = (first_a, first_b) {
        consider(pa, h, prefix_len[h], Some(fa), Some(fb));
    } else if first_a.is_none() && first_b.is_none() {
        consider(pa, h, prefix_len[h], None, None);
    }
    // Chain vertices strictly between the apex and the endpoints: the
    // wedge runs from the extension of the incoming edge to the outgoing
    // edge.
    for path in [pa, pb] {
        let mut base = prefix_len[h];
        for j in h + 1..path.points.len().saturating_sub(1) {
            base += path.points[j - 1].dist(path.points[j]);
            let e_in = path.points[j] - path.points[j - 1];
            let e_out = path.points[j + 1] - path.points[j];
            consider(path, j, base, Some(e_in), Some(e_out));
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::build_spt;
    use crate::geodesic::tests::{l_polygon, square};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    #[test]
    fn perpendicular_foot_in_square() {
        let sq = square();
        let tri = Triangulation::new(&sq).unwrap();
        let r = distance_to_segment(&sq, &tri, p(0.1, 0.5), Segment::new(p(0.9, 0.1), p(0.9, 0.9))).unwrap();
        assert!((r.distance - 0.8).abs() < 1e-12);
        assert!(r.closest_point.dist(p(0.9, 0.5)) < 1e-12);
        assert!(r.perpendicular);
    }

    #[test]
    fn chord_in_l_polygon() {
        let l = l_polygon();
        let tri = Triangulation::new(&l).unwrap();
        let s = p(0.5, 1.75);
        let seg = Segment::new(p(0., 2.), p(2., 0.));
        let r = distance_to_segment(&l, &tri, s, seg).unwrap();
        assert!((r.distance - 0.25 / 2f64.sqrt()).abs() < 1e-12, "{}", r.distance);
        assert!(r.closest_point.dist(p(0.375, 1.625)) < 1e-12);
        assert_eq!(r.anchor, s);
        let spt = build_spt(&l, &tri, s).unwrap();
        let r2 = spt.distance_to_segment(&l, &tri, seg).unwrap();
        assert!((r2.distance - r.distance).abs() < 1e-15);
    }

    #[test]
    fn source_on_segment() {
        let l = l_polygon();
        let tri = Triangulation::new(&l).unwrap();
        let r = distance_to_segment(&l, &tri, p(0.5, 1.5), Segment::new(p(0., 2.), p(2., 0.))).unwrap();
        assert_eq!(r.distance, 0.0);
        assert_eq!(r.closest_point, p(0.5, 1.5));
    }

    #[test]
    fn bent_path_to_segment() {
        let l = l_polygon();
        let tri = Triangulation::new(&l).unwrap();
        // Vertical segment in the bottom arm, reached around the corner.
        let s = p(0.5, 1.75);
        let seg = Segment::new(p(1.8, 0.0), p(1.8, 1.0));
        let r = distance_to_segment(&l, &tri, s, seg).unwrap();
        let expected = s.dist(p(1., 1.)) + 0.8;
        assert!((r.distance - expected).abs() < 1e-12, "{}", r.distance);
        assert_eq!(r.anchor, p(1., 1.));
        assert!(r.closest_point.dist(p(1.8, 1.0)) < 1e-12);
    }
}
