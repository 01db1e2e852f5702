//! Seeded random instances: polygons and interior points.

use std::f64::consts::TAU;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geom::{segments_intersect, Point, Segment, SegmentIntersection};
use crate::topology::{SimplePolygon, Triangulation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random points in the unit square joined into a simple polygon by 2-opt
/// untangling. Quadratic work per pass; intended for `n` up to a few
/// hundred.
pub fn random_polygon<R: Rng>(rng: &mut R, n: usize) -> SimplePolygon {
    assert!(n >= 3);
    loop {
        let mut pts: Vec<Point> = (0..n).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        if untangle(&mut pts) {
            if let Ok(p) = SimplePolygon::new(pts) {
                return p;
            }
        }
    }
}

fn untangle(pts: &mut [Point]) -> bool {
    let n = pts.len();
    for _ in 0..50 * n * n {
        let mut changed = false;
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let e1 = Segment::new(pts[i], pts[i + 1]);
                let e2 = Segment::new(pts[j], pts[(j + 1) % n]);
                if !matches!(segments_intersect(e1, e2), SegmentIntersection::None) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                }
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

/// Star-shaped polygon around the origin: sorted random angles with random
/// radii in `[0.2, 1]`. Linear time, suitable for large `n`.
pub fn star_polygon<R: Rng>(rng: &mut R, n: usize) -> SimplePolygon {
    assert!(n >= 3);
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * TAU).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point> = angles
            .iter()
            .map(|&a| {
                let r = 0.2 + 0.8 * rng.gen::<f64>();
                Point::new(r * a.cos(), r * a.sin())
            })
            .collect();
        // Large gaps between consecutive angles can make the polygon miss
        // the origin; validation rejects the rare bad draws.
        if let Ok(p) = SimplePolygon::new(pts) {
            return p;
        }
    }
}

/// Star-shaped polygon with vertices snapped to an integer grid of the
/// given half-width, which produces collinear and axis-parallel edges.
pub fn grid_star_polygon<R: Rng>(rng: &mut R, n: usize, half_width: i32) -> SimplePolygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * TAU).collect();
        angles.sort_by(f64::total_cmp);
        let mut pts: Vec<Point> = Vec::with_capacity(n);
        for a in angles {
            let r = (0.2 + 0.8 * rng.gen::<f64>()) * half_width as f64;
            let p = Point::new((r * a.cos()).round(), (r * a.sin()).round());
            if pts.last() != Some(&p) && pts.first() != Some(&p) {
                pts.push(p);
            }
        }
        if pts.len() >= 3 {
            if let Ok(p) = SimplePolygon::new(pts) {
                return p;
            }
        }
    }
}

/// Convex polygon with `n` random vertices on the unit circle.
pub fn convex_polygon<R: Rng>(rng: &mut R, n: usize) -> SimplePolygon {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * TAU).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point> = angles.iter().map(|&a| Point::new(a.cos(), a.sin())).collect();
        if let Ok(p) = SimplePolygon::new(pts) {
            return p;
        }
    }
}

/// Uniform random point in the polygon's interior.
pub fn random_interior_point<R: Rng>(rng: &mut R, poly: &SimplePolygon, tri: &Triangulation) -> Point {
    let areas: Vec<f64> = tri
        .triangles()
        .iter()
        .map(|t| {
            let (a, b, c) = (poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2]));
            0.5 * (b - a).cross(c - a)
        })
        .collect();
    let total: f64 = areas.iter().sum();
    loop {
        let mut x = rng.gen::<f64>() * total;
        let mut pick = areas.len() - 1;
        for (i, a) in areas.iter().enumerate() {
            if x < *a {
                pick = i;
                break;
            }
            x -= a;
        }
        let t = tri.triangle(pick);
        let (mut u, mut v): (f64, f64) = (rng.gen(), rng.gen());
        if u + v > 1.0 {
            u = 1.0 - u;
            v = 1.0 - v;
        }
        let (a, b, c) = (poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2]));
        let p = a + (b - a) * u + (c - a) * v;
        if matches!(tri.locate(poly, p), Ok(crate::topology::Location::Interior(_))) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_produce_valid_polygons() {
        let mut r = rng(7);
        for n in [3, 5, 12, 40] {
            assert_eq!(random_polygon(&mut r, n).len(), n);
            assert_eq!(star_polygon(&mut r, n).len(), n);
            assert_eq!(convex_polygon(&mut r, n).len(), n);
        }
        let g = grid_star_polygon(&mut r, 30, 10);
        assert!(g.len() >= 3);
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_polygon(&mut rng(3), 20);
        let b = random_polygon(&mut rng(3), 20);
        assert_eq!(a, b);
    }
}
