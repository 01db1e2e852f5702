//! Properties over random instances that need no oracle.

use pairvis::generate::{random_interior_point, random_polygon, rng, star_polygon};
use pairvis::io::InstanceFile;
use pairvis::optimize::Objective;
use pairvis::solve::{solve_in, solve_with_trace_in};
use pairvis::{Point, SimplePolygon, Triangulation};
use proptest::prelude::*;

struct Instance {
    poly: SimplePolygon,
    tri: Triangulation,
    s: Point,
    t: Point,
}

fn instance(seed: u64, n: usize, star: bool) -> Instance {
    let mut r = rng(seed);
    let poly = if star { star_polygon(&mut r, n) } else { random_polygon(&mut r, n) };
    let tri = Triangulation::new(&poly).unwrap();
    let s = random_interior_point(&mut r, &poly, &tri);
    let t = random_interior_point(&mut r, &poly, &tri);
    Instance { poly, tri, s, t }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn objectives_bound_each_other(seed in any::<u64>(), n in 6usize..40, star in any::<bool>()) {
        let I { poly, tri, s, t } = instance(seed, n, star);
        let mm = solve_in(&poly, &tri, s, t, Objective::MinMax).unwrap().value;
        let ms = solve_in(&poly, &tri, s, t, Objective::MinSum).unwrap().value;
        prop_assert!(mm <= ms + 1e-9, "min-max {mm} above min-sum {ms}");
        prop_assert!(ms <= 2.0 * mm + 1e-9, "min-sum {ms} above twice min-max {mm}");
    }

    #[test]
    fn half_weights_scale_min_max(seed in any::<u64>(), n in 6usize..40) {
        let I { poly, tri, s, t } = instance(seed, n, false);
        let a = solve_in(&poly, &tri, s, t, Objective::MinMax).unwrap();
        let b = solve_in(&poly, &tri, s, t, Objective::WeightedMinMax { lambda: 0.5 }).unwrap();
        prop_assert!(close(b.value, a.value / 2.0), "{} vs {}", b.value, a.value / 2.0);
        match (a.theta, b.theta) {
            (Some(ta), Some(tb)) => prop_assert!((ta - tb).abs() <= 1e-6, "theta {ta} vs {tb}"),
            (ta, tb) => prop_assert_eq!(ta, tb),
        }
    }

    #[test]
    fn zero_offsets_are_min_max(seed in any::<u64>(), n in 6usize..30) {
        let I { poly, tri, s, t } = instance(seed, n, false);
        let a = solve_in(&poly, &tri, s, t, Objective::MinMax).unwrap();
        let b = solve_in(&poly, &tri, s, t, Objective::OffsetMinMax { alpha: 0.0, beta: 0.0 }).unwrap();
        prop_assert!(close(a.value, b.value));
    }

    #[test]
    fn sweep_is_monotone_and_tangent(seed in any::<u64>(), n in 6usize..60, star in any::<bool>()) {
        let I { poly, tri, s, t } = instance(seed, n, star);
        let (sol, trace) = solve_with_trace_in(&poly, &tri, s, t, Objective::MinMax).unwrap();
        for w in trace.events.windows(2) {
            prop_assert!(w[1].dist_s >= w[0].dist_s - 1e-9, "d_s drops at {:?}", w[1]);
            prop_assert!(w[1].dist_t <= w[0].dist_t + 1e-9, "d_t rises at {:?}", w[1]);
        }
        prop_assert!(trace.events.len() <= 8 * poly.len());
        if sol.chord.is_some() {
            prop_assert_eq!(sol.is_tangent_at_pivot(), Some(true));
        } else {
            prop_assert_eq!(sol.value, 0.0);
        }
    }

    #[test]
    fn instance_json_round_trips(
        pts in prop::collection::vec((-1e12f64..1e12, -1e12f64..1e12), 3..20),
        s in prop::option::of((-1e6f64..1e6, -1e6f64..1e6)),
        lambda in 0.0f64..=1.0,
        pick in 0usize..5,
    ) {
        let objective = [
            None,
            Some(Objective::MinMax),
            Some(Objective::MinSum),
            Some(Objective::WeightedMinMax { lambda }),
            Some(Objective::OffsetMinMax { alpha: lambda, beta: 1.0 - lambda }),
        ][pick];
        let inst = InstanceFile {
            polygon: pts.iter().map(|&(x, y)| Point::new(x, y)).collect(),
            s: s.map(|(x, y)| Point::new(x, y)),
            t: Some(Point::new(lambda, -lambda)),
            objective,
        };
        let text = inst.to_json().unwrap();
        let back = InstanceFile::from_json(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(back.to_json().unwrap(), text);
    }
}

use Instance as I;
