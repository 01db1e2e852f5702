//! Solver against the sampling oracle on random polygons, for all four
//! objectives, with the certificate checks on every answer.

use pairvis::generate::{random_interior_point, random_polygon, rng, star_polygon};
use pairvis::optimize::Objective;
use pairvis::oracle::{oracle_profile, OracleOptions};
use pairvis::solve::solve_with_trace_in;
use pairvis::{Segment, Triangulation};
use rand::Rng;

const OBJECTIVES: [Objective; 4] = [
    Objective::MinMax,
    Objective::MinSum,
    Objective::WeightedMinMax { lambda: 0.3 },
    Objective::OffsetMinMax { alpha: 0.05, beta: 0.02 },
];

#[test]
fn random_instances() {
    let mut r = rng(11);
    let mut failures = Vec::new();
    for it in 0..80 {
        let n = r.gen_range(6..30);
        let poly = random_polygon(&mut r, n);
        let tri = Triangulation::new(&poly).unwrap();
        let s = random_interior_point(&mut r, &poly, &tri);
        let t = random_interior_point(&mut r, &poly, &tri);
        let prof = oracle_profile(&poly, s, t, OracleOptions { angular_samples: 2000 }).unwrap();
        for obj in OBJECTIVES {
            let (sol, trace) = solve_with_trace_in(&poly, &tri, s, t, obj).unwrap();
            let mut fail = |what: String| failures.push(format!("instance {it}, {obj:?}: {what}"));
            for w in trace.events.windows(2) {
                if w[1].dist_s < w[0].dist_s - 1e-9 || w[1].dist_t > w[0].dist_t + 1e-9 {
                    fail(format!("distances not monotone at pivot {} rotation {}", w[1].pivot_index, w[1].lambda));
                }
            }
            let o = prof.best(obj);
            if sol.value > o.value + 1e-9 || sol.value < o.value - o.error_bound {
                fail(format!("value {} vs oracle {} (bound {})", sol.value, o.value, o.error_bound));
            }
            if sol.is_tangent_at_pivot() == Some(false) {
                fail("chord not tangent at the pivot".into());
            }
            if let Some(c) = sol.chord {
                let seg = Segment::new(c.a, c.b);
                let off = seg.closest_point(sol.s_star).dist(sol.s_star).max(seg.closest_point(sol.t_star).dist(sol.t_star));
                if off > 1e-9 {
                    fail(format!("witness {off} off the chord"));
                }
            }
            let lengths = obj.combine(sol.path_s.length, sol.path_t.length);
            if (lengths - sol.value).abs() > 1e-9 || sol.path_s.start() != s || sol.path_t.start() != t {
                fail(format!("witness paths give {lengths}, value {}", sol.value));
            }
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

/// Larger star polygons, too big for the oracle: sweep invariants and
/// certificates only.
#[test]
fn star_polygon_invariants() {
    let mut r = rng(12);
    let mut failures = Vec::new();
    for it in 0..30 {
        let n = r.gen_range(50..300);
        let poly = star_polygon(&mut r, n);
        let tri = Triangulation::new(&poly).unwrap();
        let s = random_interior_point(&mut r, &poly, &tri);
        let t = random_interior_point(&mut r, &poly, &tri);
        let (sol, trace) = solve_with_trace_in(&poly, &tri, s, t, Objective::MinMax).unwrap();
        for w in trace.events.windows(2) {
            if w[1].dist_s < w[0].dist_s - 1e-9 || w[1].dist_t > w[0].dist_t + 1e-9 {
                failures.push(format!("instance {it}: distances not monotone at pivot {} rotation {}", w[1].pivot_index, w[1].lambda));
            }
        }
        if sol.is_tangent_at_pivot() == Some(false) {
            failures.push(format!("instance {it}: chord not tangent at the pivot"));
        }
        if trace.events.len() > 8 * n {
            failures.push(format!("instance {it}: {} events for n = {n}", trace.events.len()));
        }
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
