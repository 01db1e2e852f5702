//! Brute-force reference implementations. Everything here avoids the
//! triangulation and is quadratic or worse; it exists to check the fast
//! paths.

mod geodesic;
mod solve;

pub use geodesic::{naive_shortest_path, visibility_graph_distance, NaiveSegmentDistance, VisibilityField};
pub use solve::{oracle_profile, oracle_solve, ChordSample, OracleOptions, OracleProfile, OracleSolution, StructureChange};

use crate::geom::{orientation, segments_intersect, Orientation, Point, Segment, SegmentIntersection};
use crate::topology::SimplePolygon;

/// Closed point-in-polygon test by winding number with exact predicates.
pub fn naive_contains(poly: &SimplePolygon, p: Point) -> bool {
    let mut winding = 0i32;
    for i in 0..poly.len() {
        let (a, b) = (poly.vertex(i), poly.vertex(poly.next(i)));
        if Segment::new(a, b).contains(p) {
            return true;
        }
        if a.y <= p.y {
            if b.y > p.y && orientation(a, b, p) == Orientation::CounterClockwise {
                winding += 1;
            }
        } else if b.y <= p.y && orientation(a, b, p) == Orientation::Clockwise {
            winding -= 1;
        }
    }
    winding != 0
}

/// Parameters along `p -> q` where the segment meets the boundary, and the
/// parameter ranges where it runs along an edge.
fn contacts(poly: &SimplePolygon, p: Point, q: Point) -> (Vec<f64>, Vec<(f64, f64)>) {
    let d = q - p;
    let len2 = d.dot(d);
    let param = |x: Point| ((x - p).dot(d) / len2).clamp(0.0, 1.0);
    let mut ts = vec![0.0, 1.0];
    let mut overlaps = vec![];
    let s = Segment::new(p, q);
    for e in poly.edges() {
        match segments_intersect(s, e) {
            SegmentIntersection::None => {}
            SegmentIntersection::Point { at, .. } => ts.push(param(at)),
            SegmentIntersection::Overlap(o) => {
                let (a, b) = (param(o.a), param(o.b));
                ts.push(a);
                ts.push(b);
                overlaps.push((a.min(b), a.max(b)));
            }
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    (ts, overlaps)
}

/// Closed visibility by testing every edge: the segment is split at its
/// boundary contacts and each piece must run along an edge or have its
/// midpoint in the polygon.
pub fn naive_visible(poly: &SimplePolygon, p: Point, q: Point) -> bool {
    if !naive_contains(poly, p) || !naive_contains(poly, q) {
        return false;
    }
    if p == q {
        return true;
    }
    let (ts, overlaps) = contacts(poly, p, q);
    ts.windows(2).all(|w| {
        let m = 0.5 * (w[0] + w[1]);
        overlaps.iter().any(|&(a, b)| a <= m && m <= b) || naive_contains(poly, p.lerp(q, m))
    })
}

/// The only edge within rounding distance of `p`, if there is exactly one.
pub fn naive_edge_at(poly: &SimplePolygon, p: Point) -> Option<usize> {
    let tol = 1e-9 * (1.0 + poly.diameter());
    let mut near = (0..poly.len()).filter(|&e| poly.edge(e).closest_point(p).dist(p) <= tol);
    match (near.next(), near.next()) {
        (Some(e), None) => Some(e),
        _ => None,
    }
}

/// First exit point of the ray `origin + s * dir` from the polygon, found by
/// checking every edge.
pub fn naive_ray_shoot(poly: &SimplePolygon, origin: Point, dir: Point) -> Point {
    let (lo, hi) = poly.bounding_box();
    let reach = 2.0 * (lo.dist(hi) + origin.dist(lo) + 1.0);
    let far = origin + dir.normalized() * reach;
    let (ts, overlaps) = contacts(poly, origin, far);
    for w in ts.windows(2) {
        let m = 0.5 * (w[0] + w[1]);
        if !overlaps.iter().any(|&(a, b)| a <= m && m <= b) && !naive_contains(poly, origin.lerp(far, m)) {
            return origin.lerp(far, w[0]);
        }
    }
    far
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l_polygon() -> SimplePolygon {
        SimplePolygon::new(
            [(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]
                .iter()
                .map(|&(x, y)| Point::new(x, y))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn contains_and_visibility() {
        let l = l_polygon();
        assert!(naive_contains(&l, Point::new(0.5, 0.5)));
        assert!(naive_contains(&l, Point::new(1.0, 1.5)));
        assert!(!naive_contains(&l, Point::new(1.5, 1.5)));
        assert!(naive_visible(&l, Point::new(0.25, 1.75), Point::new(1.75, 0.25)));
        assert!(!naive_visible(&l, Point::new(0.5, 1.75), Point::new(1.75, 0.25)));
        assert!(!naive_visible(&l, Point::new(2.0, 1.0), Point::new(1.0, 2.0)));
    }

    #[test]
    fn ray_shoot_matches_example() {
        let l = l_polygon();
        let h = naive_ray_shoot(&l, Point::new(1.0, 1.0), Point::new(0.5, -0.75));
        assert!(h.dist(Point::new(5.0 / 3.0, 0.0)) < 1e-9, "{h}");
    }
}
