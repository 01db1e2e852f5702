//! Queries against the solver.

use pairvis::generate::{random_interior_point, random_polygon, rng, star_polygon};
use pairvis::optimize::Objective;
use pairvis::query::{QueryStructure, Resolution};
use pairvis::solve::solve_with_trace_in;
use pairvis::SimplePolygon;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn compare(r: &mut ChaCha8Rng, poly: SimplePolygon, pairs: usize, failures: &mut Vec<String>) {
    let q = QueryStructure::build(poly).unwrap();
    let (poly, tri) = (q.polygon(), q.triangulation());
    for _ in 0..pairs {
        let s = random_interior_point(r, poly, tri);
        let t = random_interior_point(r, poly, tri);
        let a = q.query_minmax(s, t).unwrap();
        let (sol, trace) = solve_with_trace_in(poly, tri, s, t, Objective::MinMax).unwrap();
        if (a.value - sol.value).abs() > 1e-9 {
            failures.push(format!("n={} s={s:?} t={t:?}: query {} solve {} ({:?})", poly.len(), a.value, sol.value, a.resolution));
        }
        // Several pivots may reach the optimum, for instance while the
        // closest point of the chord to one source is the pivot itself.
        let mut optimal_pivots: Vec<usize> =
            trace.intervals.iter().filter(|io| io.optimum.value <= sol.value + 1e-9).map(|io| io.pivot_index).collect();
        optimal_pivots.dedup();
        let tie = matches!(a.resolution, Resolution::PathTie | Resolution::BoundaryTie | Resolution::BendTie) || optimal_pivots.len() > 1;
        if !tie && a.pivot_index != sol.pivot_index {
            failures.push(format!("n={} s={s:?} t={t:?}: pivot {:?} vs {:?}", poly.len(), a.pivot_index, sol.pivot_index));
        }
        if let Some(c) = a.chord {
            let seg = pairvis::Segment::new(c.a, c.b);
            let off = seg.closest_point(a.s_star).dist(a.s_star).max(seg.closest_point(a.t_star).dist(a.t_star));
            let lengths = a.path_s.length.max(a.path_t.length);
            if off > 1e-9 || (lengths - a.value).abs() > 1e-9 {
                failures.push(format!("n={} s={s:?} t={t:?}: witness off {off}, paths {lengths} vs {}", poly.len(), a.value));
            }
        }
    }
}

#[test]
fn small_random_polygons() {
    let mut r = rng(5);
    let mut failures = Vec::new();
    for _ in 0..40 {
        let n = r.gen_range(6..30);
        let poly = random_polygon(&mut r, n);
        compare(&mut r, poly, 10, &mut failures);
    }
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn large_star_polygons() {
    let mut r = rng(6);
    let mut failures = Vec::new();
    for n in [100, 300, 500] {
        let poly = star_polygon(&mut r, n);
        compare(&mut r, poly, 40, &mut failures);
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
