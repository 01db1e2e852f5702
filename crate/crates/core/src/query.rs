//! Min-max queries against a preprocessed polygon.
//!
//! Along the sweep the distance from `s` to the line of sight never
//! decreases and the distance from `t` never increases, so the min-max
//! optimum sits where their difference changes sign. A query locates that
//! sign change by three nested binary searches: over the chords through the
//! path edges (which fixes the pivot), over the boundary events of that
//! pivot, and over the rotations where one side's funnel model may change.
//! The interval optimizer finishes on the last bracket.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::{shortest_path_located, GeodesicPath, SegmentDistance, ShortestPathTree};
use crate::geom::{Point, Segment};
use crate::optimize::{minimize_interval, IntervalProblem, Objective, PivotFrame};
use crate::solve::witness_path;
use crate::sweep::{
    boundary_candidates, chord_aimed, group_candidates, Aim, hit_edges, limit_chord, pivot_frames, side_breaks, side_model,
};
use crate::topology::{Chord, SimplePolygon, Triangulation};

/// Version written to and required from serialized indexes.
pub const INDEX_VERSION: u32 = 1;

/// A polygon preprocessed for queries. Immutable; queries may run
/// concurrently.
#[derive(Debug, Clone)]
pub struct QueryStructure {
    poly: SimplePolygon,
    tri: Triangulation,
}

/// How a query was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// `s` sees `t`.
    Visible,
    /// Both distances agree on the chord through a path edge.
    PathTie,
    /// Both distances agree on the chord of a boundary event.
    BoundaryTie,
    /// Both distances agree on a chord inside a boundary interval.
    BendTie,
    /// The interval optimizer on the final bracket.
    Bracket,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryAnswer {
    pub value: f64,
    pub s_star: Point,
    pub t_star: Point,
    /// Absent when `s` sees `t`.
    pub chord: Option<Chord>,
    pub pivot: Option<Point>,
    /// Position of the pivot in the shortest path.
    pub pivot_index: Option<usize>,
    /// Rotation from the incoming path edge at the pivot.
    pub lambda: Option<f64>,
    pub path_s: GeodesicPath,
    pub path_t: GeodesicPath,
    pub resolution: Resolution,
}

/// Serialized form of a [`QueryStructure`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryIndex {
    pub version: u32,
    /// Counter-clockwise polygon vertices.
    pub vertices: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
}

#[derive(Deserialize)]
struct IndexHeader {
    version: u32,
}

/// A chord measured exactly from both sides.
struct Probe {
    lambda: f64,
    chord: Chord,
    s: SegmentDistance,
    t: SegmentDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Balance {
    /// `s` is closer to the chord than `t`: the optimum lies later.
    Below,
    Tie,
    Above,
}

impl Probe {
    /// Sign of `|pi(s, l)| - |pi(t, l)|`. Differences within 1e-12
    /// (relative) are ties: the chord is then optimal up to that margin,
    /// and descending on a rounding-level sign could pick the wrong half.
    fn balance(&self) -> Balance {
        let (ds, dt) = (self.s.distance, self.t.distance);
        let margin = 1e-12 * (1.0 + ds.max(dt));
        if (ds - dt).abs() <= margin {
            Balance::Tie
        } else if ds < dt {
            Balance::Below
        } else {
            Balance::Above
        }
    }
}

struct Ctx<'a> {
    poly: &'a SimplePolygon,
    tri: &'a Triangulation,
    spt_s: ShortestPathTree,
    spt_t: ShortestPathTree,
}

impl Ctx<'_> {
    fn probe(&self, frame: &PivotFrame, lambda: f64, aim: Aim) -> Result<Probe> {
        let (chord, locs) = chord_aimed(self.poly, self.tri, frame, aim)?;
        let seg = Segment::new(chord.a, chord.b);
        let s = self.spt_s.distance_to_segment_located(self.tri, seg, locs)?;
        let t = self.spt_t.distance_to_segment_located(self.tri, seg, locs)?;
        Ok(Probe { lambda, chord, s, t })
    }
}

/// Outcome of one binary search.
enum Search {
    /// A tie at the given position.
    Tie(usize, Probe),
    /// Consecutive positions with `Below` at the first and `Above` at the
    /// second, with their probes.
    Bracket(usize, Probe, Probe),
}

/// Finds the sign change of the balance over positions `0..=last`, given
/// the probes at both ends. `Above` at the start or `Below` at the end
/// means that end is optimal and is reported as a tie.
fn search(first: Probe, last_probe: Probe, last: usize, mut probe: impl FnMut(usize) -> Result<Probe>) -> Result<Search> {
    match first.balance() {
        Balance::Below => {}
        _ => return Ok(Search::Tie(0, first)),
    }
    match last_probe.balance() {
        Balance::Above => {}
        _ => return Ok(Search::Tie(last, last_probe)),
    }
    let (mut a, mut b) = (0, last);
    let (mut pa, mut pb) = (first, last_probe);
    while b - a > 1 {
        let m = a + (b - a) / 2;
        let pm = probe(m)?;
        match pm.balance() {
            Balance::Tie => return Ok(Search::Tie(m, pm)),
            Balance::Below => (a, pa) = (m, pm),
            Balance::Above => (b, pb) = (m, pm),
        }
    }
    Ok(Search::Bracket(a, pa, pb))
}

impl QueryAnswer {
    fn visible(s: Point, t: Point) -> Self {
        QueryAnswer {
            value: 0.0,
            s_star: s,
            t_star: t,
            chord: None,
            pivot: None,
            pivot_index: None,
            lambda: None,
            path_s: GeodesicPath::single(s, None),
            path_t: GeodesicPath::single(t, None),
            resolution: Resolution::Visible,
        }
    }

    fn on_probe(p: Probe, frame: &PivotFrame, resolution: Resolution) -> Self {
        QueryAnswer {
            value: p.s.distance.max(p.t.distance),
            s_star: p.s.closest_point,
            t_star: p.t.closest_point,
            chord: Some(p.chord),
            pivot: Some(frame.pivot),
            pivot_index: Some(frame.index),
            lambda: Some(p.lambda),
            path_s: p.s.path,
            path_t: p.t.path,
            resolution,
        }
    }
}

impl QueryStructure {
    pub fn build(poly: SimplePolygon) -> Result<Self> {
        let tri = Triangulation::new(&poly)?;
        Ok(QueryStructure { poly, tri })
    }

    pub fn polygon(&self) -> &SimplePolygon {
        &self.poly
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn to_index(&self) -> QueryIndex {
        QueryIndex { version: INDEX_VERSION, vertices: self.poly.vertices().to_vec(), triangles: self.tri.triangles().to_vec() }
    }

    /// Rebuilds the structure, checking the triangles against the polygon.
    pub fn from_index(index: QueryIndex) -> Result<Self> {
        if index.version != INDEX_VERSION {
            return Err(Error::VersionMismatch { found: index.version, expected: INDEX_VERSION });
        }
        let poly = SimplePolygon::new(index.vertices.clone())?;
        if poly.vertices() != index.vertices.as_slice() {
            return Err(Error::InvalidInput("index vertices are not in counter-clockwise order".into()));
        }
        let tri = Triangulation::from_triangles(&poly, index.triangles)?;
        Ok(QueryStructure { poly, tri })
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&self.to_index())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        // Check the version before the layout, which may differ.
        let header: IndexHeader = serde_json::from_str(text)?;
        if header.version != INDEX_VERSION {
            return Err(Error::VersionMismatch { found: header.version, expected: INDEX_VERSION });
        }
        Self::from_index(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        Ok(std::fs::write(path, self.to_json()?)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Minimum over mutually visible pairs of the longer of the two
    /// geodesic distances.
    pub fn query_minmax(&self, s: Point, t: Point) -> Result<QueryAnswer> {
        let (poly, tri) = (&self.poly, &self.tri);
        let ls = tri.locate(poly, s)?;
        let lt = tri.locate(poly, t)?;
        if s == t || tri.is_visible(poly, s, t)? {
            return Ok(QueryAnswer::visible(s, t));
        }
        let path = shortest_path_located(poly, tri, s, ls, t, lt);
        let frames = pivot_frames(&path)?;
        let Some(last_frame) = frames.last() else {
            return Err(Error::Internal("s and t do not see each other but their shortest path is straight".into()));
        };
        let ctx = Ctx {
            poly,
            tri,
            spt_s: ShortestPathTree::build(poly, tri, s, ls)?,
            spt_t: ShortestPathTree::build(poly, tri, t, lt)?,
        };

        // Stage 1: chords through the path edges. Chord j opens frame j; the
        // last one closes the last frame.
        let path_chord = |j: usize| -> Result<Probe> {
            match frames.get(j) {
                Some(f) => ctx.probe(f, 0.0, Aim::Line(f.line_in())),
                None => ctx.probe(last_frame, last_frame.sweep, Aim::Line(last_frame.line_out())),
            }
        };
        let k = frames.len();
        let (fi, start, end) = match search(path_chord(0)?, path_chord(k)?, k, path_chord)? {
            Search::Tie(j, p) => return Ok(QueryAnswer::on_probe(p, frames.get(j).unwrap_or(last_frame), Resolution::PathTie)),
            Search::Bracket(j, a, b) => (j, a, b),
        };
        let frame = &frames[fi];
        let end = Probe { lambda: frame.sweep, ..end };

        // Stage 2: boundary events of the pivot.
        let (children_s, children_t) = (ctx.spt_s.children_lists(), ctx.spt_t.children_lists());
        let cands = boundary_candidates(poly, frame, &children_s, &children_t);
        let inner = group_candidates(frame, &cands).inner;
        let m = inner.len() + 1;
        let (start, end) = match search(start, end, m, |i| ctx.probe(frame, inner[i - 1].0, Aim::Line(inner[i - 1].1[0].line)))? {
            Search::Tie(_, p) => return Ok(QueryAnswer::on_probe(p, frame, Resolution::BoundaryTie)),
            Search::Bracket(_, a, b) => (a, b),
        };

        // Stage 3: rotations where a side model may change.
        let (lo, hi) = (start.lambda, end.lambda);
        let edges = hit_edges(poly, tri, frame, lo, hi)?;
        let pb_s = ctx.spt_s.path_to_vertex(frame.pivot_id);
        let pb_t = ctx.spt_t.path_to_vertex(frame.pivot_id);
        let mut cuts = vec![lo, hi];
        side_breaks(poly, tri, frame, &ctx.spt_s, &pb_s, edges.0, -1.0, lo, hi, &mut cuts)?;
        side_breaks(poly, tri, frame, &ctx.spt_t, &pb_t, edges.1, 1.0, lo, hi, &mut cuts)?;
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15);
        let last = cuts.len() - 1;
        let bracket = search(start, end, last, |i| ctx.probe(frame, cuts[i], Aim::Dir(frame.direction(cuts[i]))))?;
        let (c, pc, pd) = match bracket {
            Search::Tie(_, p) => return Ok(QueryAnswer::on_probe(p, frame, Resolution::BendTie)),
            Search::Bracket(i, a, b) => (i, a, b),
        };
        let (c_lo, c_hi) = (cuts[c], cuts[c + 1]);
        let mid = 0.5 * (c_lo + c_hi);
        let sm = side_model(poly, tri, frame, &ctx.spt_s, &pb_s, edges.0, -1.0, mid)?;
        let tm = side_model(poly, tri, frame, &ctx.spt_t, &pb_t, edges.1, 1.0, mid)?;
        let prob = IntervalProblem { frame: *frame, lo: c_lo, hi: c_hi, s: sm, t: tm, objective: Objective::MinMax };
        let opt = minimize_interval(&prob)?;

        // The exact chords at the bracket's events may beat both limits; in
        // sweep order, ties keep the earliest.
        let value_of = |p: &Probe| p.s.distance.max(p.t.distance);
        if c == 0 && value_of(&pc) <= opt.value {
            return Ok(QueryAnswer::on_probe(pc, frame, Resolution::Bracket));
        }
        if c + 1 == last && value_of(&pd) < opt.value {
            // A path chord belongs to the pivot it opens, as in the sweep.
            return Ok(match frames.get(fi + 1) {
                Some(next) if pd.lambda >= frame.sweep => QueryAnswer::on_probe(Probe { lambda: 0.0, ..pd }, next, Resolution::Bracket),
                _ => QueryAnswer::on_probe(pd, frame, Resolution::Bracket),
            });
        }
        Ok(QueryAnswer {
            value: opt.value,
            s_star: opt.s_star,
            t_star: opt.t_star,
            chord: Some(limit_chord(poly, frame, edges, opt.lambda)),
            pivot: Some(frame.pivot),
            pivot_index: Some(frame.index),
            lambda: Some(opt.lambda),
            path_s: witness_path(&prob.s, opt.s_star),
            path_t: witness_path(&prob.t, opt.t_star),
            resolution: Resolution::Bracket,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::solve;

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn l_structure() -> QueryStructure {
        let poly = SimplePolygon::new([(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)].iter().map(|&(x, y)| p(x, y)).collect())
            .unwrap();
        QueryStructure::build(poly).unwrap()
    }

    #[test]
    fn l_instance_matches_solver() {
        let q = l_structure();
        let (s, t) = (p(0.5, 1.75), p(1.75, 0.25));
        let a = q.query_minmax(s, t).unwrap();
        assert!((a.value - 0.15 / 2.44f64.sqrt()).abs() < 1e-12);
        let r = solve(q.polygon(), s, t, Objective::MinMax).unwrap();
        assert!((a.value - r.value).abs() < 1e-12);
        assert!(a.s_star.dist(r.s_star) < 1e-9 && a.t_star.dist(r.t_star) < 1e-9);
        assert_eq!(a.pivot_index, Some(1));
        let back = q.query_minmax(t, s).unwrap();
        assert!((back.value - a.value).abs() < 1e-12);
    }

    #[test]
    fn visible_pairs_and_outside_points() {
        let q = l_structure();
        let a = q.query_minmax(p(0.2, 0.2), p(1.8, 0.2)).unwrap();
        assert_eq!((a.value, a.resolution), (0.0, Resolution::Visible));
        assert!(matches!(q.query_minmax(p(1.5, 1.5), p(0.2, 0.2)), Err(Error::OutsidePolygon(_))));
    }

    #[test]
    fn index_round_trip_and_version() {
        let q = l_structure();
        let text = q.to_json().unwrap();
        let back = QueryStructure::from_json(&text).unwrap();
        assert_eq!(back.polygon(), q.polygon());
        assert_eq!(back.triangulation().triangles(), q.triangulation().triangles());
        let mut index = q.to_index();
        index.version = INDEX_VERSION + 1;
        let text = serde_json::to_string(&index).unwrap();
        assert!(matches!(QueryStructure::from_json(&text), Err(Error::VersionMismatch { found: 2, expected: 1 })));
        let mut index = q.to_index();
        index.triangles[0] = [0, 1, 3];
        assert!(QueryStructure::from_index(index).is_err());
    }
}
