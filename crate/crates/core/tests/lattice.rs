//! Lattice polygons with lattice points: collinear vertices, points on
//! edges and chords through several vertices at once.

use pairvis::generate::{grid_star_polygon, rng};
use pairvis::geodesic::{build_spt, shortest_path};
use pairvis::optimize::Objective;
use pairvis::oracle::{naive_contains, naive_shortest_path, oracle_profile, OracleOptions};
use pairvis::solve::solve_in;
use pairvis::{Point, Segment, SimplePolygon, Triangulation};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn half_lattice_points(poly: &SimplePolygon) -> Vec<Point> {
    let mut pts = Vec::new();
    for x in -12..=12 {
        for y in -12..=12 {
            let p = Point::new(x as f64 * 0.5, y as f64 * 0.5);
            if naive_contains(poly, p) {
                pts.push(p);
            }
        }
    }
    pts
}

fn pick(r: &mut ChaCha8Rng, pts: &[Point]) -> Point {
    pts[r.gen_range(0..pts.len())]
}

#[test]
fn geodesics_match_visibility_graph() {
    let mut r = rng(3);
    let mut failures = Vec::new();
    for _ in 0..150 {
        let n = r.gen_range(5..25);
        let poly = grid_star_polygon(&mut r, n, 6);
        let tri = Triangulation::new(&poly).unwrap();
        let pts = half_lattice_points(&poly);
        for _ in 0..4 {
            let (a, b) = (pick(&mut r, &pts), pick(&mut r, &pts));
            let expected = naive_shortest_path(&poly, a, b).unwrap().length;
            let funnel = shortest_path(&poly, &tri, a, b).unwrap().length;
            let spt = build_spt(&poly, &tri, a).unwrap();
            let via_tree = spt.distance_to(&poly, &tri, b).unwrap();
            for got in [funnel, via_tree] {
                if (got - expected).abs() > 1e-9 {
                    failures.push(format!("{a:?} -> {b:?}: {got} vs {expected} in {:?}", poly.vertices()));
                }
            }
            for v in 0..poly.len() {
                let expected = naive_shortest_path(&poly, a, poly.vertex(v)).unwrap().length;
                if (spt.distance(v) - expected).abs() > 1e-9 {
                    failures.push(format!("{a:?} -> vertex {v}: {} vs {expected}", spt.distance(v)));
                }
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn solver_matches_oracle() {
    let mut r = rng(7);
    let mut failures = Vec::new();
    for _ in 0..60 {
        let n = r.gen_range(5..20);
        let poly = grid_star_polygon(&mut r, n, 6);
        let tri = Triangulation::new(&poly).unwrap();
        let pts = half_lattice_points(&poly);
        let (s, t) = (pick(&mut r, &pts), pick(&mut r, &pts));
        let prof = oracle_profile(&poly, s, t, OracleOptions { angular_samples: 2000 }).unwrap();
        for obj in [Objective::MinMax, Objective::MinSum] {
            let sol = solve_in(&poly, &tri, s, t, obj).unwrap();
            let o = prof.best(obj);
            if sol.value > o.value + 1e-9 || sol.value < o.value - o.error_bound {
                failures.push(format!("{obj:?} s={s:?} t={t:?}: {} vs oracle {} (bound {})", sol.value, o.value, o.error_bound));
            }
            if sol.is_tangent_at_pivot() == Some(false) {
                failures.push(format!("{obj:?} s={s:?} t={t:?}: chord not tangent"));
            }
            if let Some(c) = sol.chord {
                let seg = Segment::new(c.a, c.b);
                let off = seg.closest_point(sol.s_star).dist(sol.s_star).max(seg.closest_point(sol.t_star).dist(sol.t_star));
                if off > 1e-9 {
                    failures.push(format!("{obj:?} s={s:?} t={t:?}: witness {off} off the chord"));
                }
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
