//! The event sequence of the sweep against the sampling oracle.

use std::collections::HashSet;

use pairvis::generate::{random_interior_point, random_polygon, rng};
use pairvis::geodesic::{build_spt, shortest_path};
use pairvis::oracle::{oracle_profile, OracleOptions, OracleProfile};
use pairvis::sweep::{EventKind, Sweep};
use pairvis::{Point, SimplePolygon, Triangulation};
use rand::Rng;

fn polygon(pts: &[(f64, f64)]) -> SimplePolygon {
    SimplePolygon::new(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
}

fn sweep(poly: &SimplePolygon, tri: &Triangulation, s: Point, t: Point) -> Sweep {
    let path = shortest_path(poly, tri, s, t).unwrap();
    let spt_s = build_spt(poly, tri, s).unwrap();
    let spt_t = build_spt(poly, tri, t).unwrap();
    Sweep::compute(poly, tri, &path, &spt_s, &spt_t).unwrap()
}

/// Bend events strictly inside a pivot's range; those folded into a path
/// event describe the hand-off, which the oracle does not compare.
fn inner_bends(sw: &Sweep) -> Vec<(usize, f64)> {
    sw.events
        .iter()
        .filter(|e| !e.kinds.contains(&EventKind::Path))
        .filter(|e| e.kinds.iter().any(|k| matches!(k, EventKind::BendT1 | EventKind::BendT2)))
        .map(|e| (e.pivot_index, e.lambda))
        .collect()
}

fn check_against_oracle(sw: &Sweep, prof: &OracleProfile) -> Result<(), String> {
    if sw.interval_count() != prof.interval_count() {
        return Err(format!("intervals: sweep {} oracle {}", sw.interval_count(), prof.interval_count()));
    }
    let changes = prof.structure_changes();
    let mut at: Vec<(usize, f64)> = changes.iter().map(|c| (c.pivot_index, c.between.0)).collect();
    at.dedup();
    let bends = inner_bends(sw);
    if bends.len() != at.len() {
        return Err(format!("bends: sweep {} oracle {}", bends.len(), at.len()));
    }
    for (piv, l) in bends {
        let hit = changes.iter().any(|c| c.pivot_index == piv && c.between.0 - 1e-9 <= l && l <= c.between.1 + 1e-9);
        if !hit {
            return Err(format!("bend at pivot {piv}, rotation {l} has no oracle change"));
        }
    }
    Ok(())
}

/// Once a vertex leaves the path from `s` to the chord it stays out; the
/// same holds for `t` with the sweep replayed backwards.
fn check_no_reappearance(sw: &Sweep) -> Result<(), String> {
    let lists_s: Vec<Vec<usize>> = sw.pieces.iter().map(|p| p.s.vertex_ids()).collect();
    let mut lists_t: Vec<Vec<usize>> = sw.pieces.iter().map(|p| p.t.vertex_ids()).collect();
    lists_t.reverse();
    for (name, lists) in [("s", lists_s), ("t", lists_t)] {
        let mut gone = HashSet::new();
        for w in lists.windows(2) {
            gone.extend(w[0].iter().filter(|v| !w[1].contains(v)).copied());
            if let Some(v) = w[1].iter().find(|v| gone.contains(v)) {
                return Err(format!("vertex {v} re-enters the path from {name}"));
            }
        }
    }
    Ok(())
}

#[test]
fn zig_zag_matches_oracle() {
    let poly = polygon(&[(0., 0.), (6., 0.), (6., 4.), (4., 4.), (4., 2.), (2., 2.), (2., 4.), (0., 4.)]);
    let tri = Triangulation::new(&poly).unwrap();
    let (s, t) = (Point::new(1., 3.), Point::new(5., 3.));
    let sw = sweep(&poly, &tri, s, t);
    let prof = oracle_profile(&poly, s, t, OracleOptions { angular_samples: 100_000 }).unwrap();
    check_against_oracle(&sw, &prof).unwrap();
    check_no_reappearance(&sw).unwrap();
    assert_eq!(sw.interval_count(), 4);
}

#[test]
fn l_polygon_events() {
    let poly = polygon(&[(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)]);
    let tri = Triangulation::new(&poly).unwrap();
    let (s, t) = (Point::new(0.5, 1.75), Point::new(1.75, 0.25));
    let sw = sweep(&poly, &tri, s, t);
    assert_eq!(sw.events.len(), 2);
    // The second chord ends at the polygon corners (0,2) and (2,0), which
    // may merge boundary flags into it; nothing happens strictly inside.
    for e in &sw.events {
        assert_eq!(e.kind, EventKind::Path, "{:?}", e.kinds);
        assert!(!e.kinds.iter().any(|k| matches!(k, EventKind::BendT1 | EventKind::BendT2)), "{:?}", e.kinds);
    }
    let prof = oracle_profile(&poly, s, t, OracleOptions { angular_samples: 20_000 }).unwrap();
    check_against_oracle(&sw, &prof).unwrap();
}

#[test]
fn random_sweeps_match_oracle() {
    let mut r = rng(2024);
    let mut failures = Vec::new();
    let mut tested = 0;
    while tested < 25 {
        let n = r.gen_range(6..=24);
        let poly = random_polygon(&mut r, n);
        let tri = Triangulation::new(&poly).unwrap();
        let s = random_interior_point(&mut r, &poly, &tri);
        let t = random_interior_point(&mut r, &poly, &tri);
        if tri.is_visible(&poly, s, t).unwrap() {
            continue;
        }
        tested += 1;
        let sw = sweep(&poly, &tri, s, t);
        let prof = oracle_profile(&poly, s, t, OracleOptions { angular_samples: 10_000 }).unwrap();
        let checks = check_against_oracle(&sw, &prof).and_then(|_| check_no_reappearance(&sw));
        if let Err(e) = checks {
            failures.push(format!("n={n} s={s:?} t={t:?}: {e}"));
        }
        assert!(sw.events.len() <= 8 * n, "{} events for n = {n}", sw.events.len());
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
