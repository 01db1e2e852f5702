//! Rotational sweep of the line of sight along the shortest path from `s`
//! to `t`.
//!
//! At every interior path vertex (the pivot) the chord through the pivot
//! turns from the incoming path edge to the outgoing one. The part of the
//! chord on `s`'s side of the pivot is `l-`, the other part `l+`. Events
//! are the chords where the combinatorial description changes:
//!
//! * path events: the chord contains a path edge (the pivot hand-off);
//! * boundary events: the chord passes through a polygon vertex, so an
//!   endpoint moves to another edge;
//! * bend events: the shortest path from `s` to the chord gains (T1) or
//!   loses (T2) a vertex, or likewise from `t`.
//!
//! Between events the sweep is cut further into pieces where each side is
//! described by a single [`SideModel`], which is what the interval optimizer
//! needs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::{segment_distance_from_paths, GeodesicPath, SegmentDistance, ShortestPathTree};
use crate::geom::{Point, Segment};
use crate::optimize::{endpoint_on_line, IntervalProblem, Objective, PivotFrame, SideCase, SideModel};
use crate::topology::{BoundaryHit, Chord, Location, SimplePolygon, Triangulation};

/// Event kinds in decreasing priority.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Path,
    Boundary,
    BendT1,
    BendT2,
}

/// Which part of the chord an event concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChordSide {
    /// The part on `s`'s side of the pivot.
    Minus,
    Plus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEvent {
    /// Highest-priority kind among `kinds`.
    pub kind: EventKind,
    pub kinds: Vec<EventKind>,
    /// Position of the pivot in the shortest path.
    pub pivot_index: usize,
    pub pivot: Point,
    /// Rotation from the incoming path edge at the pivot.
    pub lambda: f64,
    /// Chord angle in `[0, pi)`.
    pub theta: f64,
    /// Chord endpoint on `s`'s side.
    pub x: Point,
    /// Chord endpoint on `t`'s side.
    pub x_tilde: Point,
    pub side: Option<ChordSide>,
    /// Polygon vertices the chord passes through (boundary events).
    pub vertices: Vec<usize>,
    /// Geodesic distances from `s` and `t` to the chord.
    pub dist_s: f64,
    pub dist_t: f64,
}

/// A stretch of the sweep with fixed side models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    /// Index into [`Sweep::frames`].
    pub frame: usize,
    pub lo: f64,
    pub hi: f64,
    pub s: SideModel,
    pub t: SideModel,
    /// Edges hit by `l-` and `l+` inside the piece.
    pub edges: (usize, usize),
    /// Index of the event interval containing the piece.
    pub interval: usize,
}

/// The chord of a path or boundary event, measured exactly.
///
/// Such a chord grazes a vertex and may extend past it. The piece models on
/// either side are limits from inside a range and see only one of the two
/// continuations; the exact chord is their union.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventChord {
    /// Index into [`Sweep::events`].
    pub event: usize,
    pub frame: usize,
    pub lambda: f64,
    pub chord: Chord,
    pub s: SegmentDistance,
    pub t: SegmentDistance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub path: GeodesicPath,
    pub frames: Vec<PivotFrame>,
    pub events: Vec<SweepEvent>,
    pub pieces: Vec<Piece>,
    pub event_chords: Vec<EventChord>,
}

/// Rotations closer than this are one event.
pub(crate) const MERGE: f64 = 1e-12;

/// A polygon vertex whose shortest path parent is the pivot: the chord
/// reaches it at `lambda`.
pub(crate) struct Candidate {
    pub lambda: f64,
    pub side: ChordSide,
    pub vertex: usize,
    /// Two points spanning the chord line exactly, in the chord's
    /// direction.
    pub line: (Point, Point),
}

/// Boundary candidates of one pivot, grouped by rotation.
pub(crate) struct Groups<'c> {
    pub at_start: Vec<&'c Candidate>,
    pub at_end: Vec<&'c Candidate>,
    /// Distinct rotations strictly inside the range, in order.
    pub inner: Vec<(f64, Vec<&'c Candidate>)>,
}

/// One frame per interior vertex of `path`.
pub(crate) fn pivot_frames(path: &GeodesicPath) -> Result<Vec<PivotFrame>> {
    let k = path.edge_count();
    let mut frames = Vec::with_capacity(k.saturating_sub(1));
    for i in 1..k {
        let id = path.vertex_ids[i].ok_or_else(|| Error::Internal("path bends away from a vertex".into()))?;
        frames.push(PivotFrame::new(id, i, path.points[i - 1], path.points[i], path.points[i + 1]));
    }
    Ok(frames)
}

/// Sorted boundary candidates of `frame`: children of the pivot in the
/// tree of `s` are met by `l+`, those in the tree of `t` by `l-`.
pub(crate) fn boundary_candidates(
    poly: &SimplePolygon,
    frame: &PivotFrame,
    children_s: &[Vec<usize>],
    children_t: &[Vec<usize>],
) -> Vec<Candidate> {
    let v = frame.pivot;
    let mut cands: Vec<Candidate> = Vec::new();
    for &w in &children_s[frame.pivot_id] {
        let dir = poly.vertex(w) - v;
        cands.push(Candidate { lambda: frame.lambda_of(dir), side: ChordSide::Plus, vertex: w, line: (v, poly.vertex(w)) });
    }
    for &w in &children_t[frame.pivot_id] {
        let dir = v - poly.vertex(w);
        cands.push(Candidate { lambda: frame.lambda_of(dir), side: ChordSide::Minus, vertex: w, line: (poly.vertex(w), v) });
    }
    cands.retain(|c| c.lambda >= -MERGE && c.lambda <= frame.sweep + MERGE);
    cands.sort_by(|a, b| a.lambda.total_cmp(&b.lambda));
    cands
}

/// Groups candidates into distinct rotations; those at the ends of the
/// range belong to the path events.
pub(crate) fn group_candidates<'c>(frame: &PivotFrame, cands: &'c [Candidate]) -> Groups<'c> {
    let mut groups: Vec<(f64, Vec<&Candidate>)> = Vec::new();
    for c in cands {
        match groups.last_mut() {
            Some((l, g)) if c.lambda - *l <= MERGE => g.push(c),
            _ => groups.push((c.lambda, vec![c])),
        }
    }
    let mut out = Groups { at_start: Vec::new(), at_end: Vec::new(), inner: Vec::new() };
    for (l, g) in groups {
        if l <= MERGE {
            out.at_start.extend(g);
        } else if l >= frame.sweep - MERGE {
            out.at_end.extend(g);
        } else {
            out.inner.push((l, g));
        }
    }
    out
}

/// Edges hit by `l-` and `l+` strictly inside `(a, b)`.
pub(crate) fn hit_edges(poly: &SimplePolygon, tri: &Triangulation, frame: &PivotFrame, a: f64, b: f64) -> Result<(usize, usize)> {
    let loc = tri.vertex_location(frame.pivot_id);
    for frac in [0.5, 0.382, 0.618, 0.25, 0.75, 0.1, 0.9] {
        let u = frame.unit(a + (b - a) * frac);
        let (_, hm) = tri.ray_shoot_from(poly, loc, frame.pivot, -u)?;
        let (_, hp) = tri.ray_shoot_from(poly, loc, frame.pivot, u)?;
        if let (BoundaryHit::Edge(em), BoundaryHit::Edge(ep)) = (hm, hp) {
            return Ok((em, ep));
        }
    }
    Err(Error::Internal(format!("chord endpoints at pivot {} keep hitting vertices", frame.pivot_id)))
}

impl Sweep {
    pub fn compute(
        poly: &SimplePolygon,
        tri: &Triangulation,
        path: &GeodesicPath,
        spt_s: &ShortestPathTree,
        spt_t: &ShortestPathTree,
    ) -> Result<Sweep> {
        if path.edge_count() < 2 {
            return Err(Error::DegenerateInput("s and t see each other"));
        }
        let children_s = spt_s.children_lists();
        let children_t = spt_t.children_lists();
        let frames = pivot_frames(path)?;

        let mut builder = Builder {
            poly,
            tri,
            spt_s,
            spt_t,
            events: Vec::new(),
            pieces: Vec::new(),
            event_chords: Vec::new(),
            last_ids: None,
            carry: Vec::new(),
        };
        for (fi, frame) in frames.iter().enumerate() {
            let cands = boundary_candidates(poly, frame, &children_s, &children_t);
            builder.pivot(fi, frame, &cands, fi + 1 == frames.len())?;
        }
        Ok(Sweep { path: path.clone(), frames, events: builder.events, pieces: builder.pieces, event_chords: builder.event_chords })
    }

    /// Number of intervals between consecutive events.
    pub fn interval_count(&self) -> usize {
        self.events.len().saturating_sub(1)
    }

    pub fn problem(&self, piece: &Piece, objective: Objective) -> IntervalProblem {
        IntervalProblem {
            frame: self.frames[piece.frame],
            lo: piece.lo,
            hi: piece.hi,
            s: piece.s.clone(),
            t: piece.t.clone(),
            objective,
        }
    }

    /// The chord at rotation `lambda` of pivot frame `frame`, as
    /// `(x, x_tilde)` with `x` on `s`'s side.
    pub fn chord_at(&self, poly: &SimplePolygon, tri: &Triangulation, frame: usize, lambda: f64) -> Result<Chord> {
        let f = &self.frames[frame];
        chord_through(poly, tri, f, f.direction(lambda))
    }

    /// The chord at `lambda` as seen from inside piece `piece`: its ends stay
    /// on the piece's edges even where the chord jumps at the piece's ends.
    pub fn piece_chord(&self, poly: &SimplePolygon, piece: usize, lambda: f64) -> Chord {
        let pc = &self.pieces[piece];
        limit_chord(poly, &self.frames[pc.frame], pc.edges, lambda)
    }
}

/// The chord at `lambda` with its ends held on `edges`, clamped to them.
pub(crate) fn limit_chord(poly: &SimplePolygon, f: &PivotFrame, edges: (usize, usize), lambda: f64) -> Chord {
    let u = f.unit(lambda);
    let end = |e: usize| {
        let (a, b) = edge_points(poly, e);
        Segment::new(a, b).closest_point(endpoint_on_line(f.pivot, u, a, b))
    };
    Chord { a: end(edges.0), b: end(edges.1) }
}

pub(crate) fn chord_through(poly: &SimplePolygon, tri: &Triangulation, f: &PivotFrame, dir: Point) -> Result<Chord> {
    let loc = tri.vertex_location(f.pivot_id);
    let (a, _) = tri.ray_shoot_from(poly, loc, f.pivot, -dir)?;
    let (b, _) = tri.ray_shoot_from(poly, loc, f.pivot, dir)?;
    Ok(Chord { a, b })
}

/// How an event chord's line is given.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Aim {
    /// A rounded direction.
    Dir(Point),
    /// Two points spanning the line exactly.
    Line((Point, Point)),
}

/// An event chord with the locations of its ends.
pub(crate) fn chord_aimed(poly: &SimplePolygon, tri: &Triangulation, f: &PivotFrame, aim: Aim) -> Result<(Chord, (Location, Location))> {
    let loc = tri.vertex_location(f.pivot_id);
    let ((a, ha), (b, hb)) = match aim {
        Aim::Dir(d) => (tri.ray_shoot_from(poly, loc, f.pivot, -d)?, tri.ray_shoot_from(poly, loc, f.pivot, d)?),
        // `a` on the side of `p`.
        Aim::Line((p, q)) => (tri.ray_shoot_along(poly, loc, f.pivot, q, p)?, tri.ray_shoot_along(poly, loc, f.pivot, p, q)?),
    };
    Ok((Chord { a, b }, (tri.hit_location(ha), tri.hit_location(hb))))
}

struct Builder<'a> {
    poly: &'a SimplePolygon,
    tri: &'a Triangulation,
    spt_s: &'a ShortestPathTree,
    spt_t: &'a ShortestPathTree,
    events: Vec<SweepEvent>,
    pieces: Vec<Piece>,
    event_chords: Vec<EventChord>,
    /// Path vertex lists of both sides on the last piece.
    last_ids: Option<(Vec<usize>, Vec<usize>)>,
    /// Boundary incidences at the end of the previous pivot's range.
    carry: Vec<(usize, ChordSide)>,
}

/// Structural identity of a side model.
fn same_structure(a: &SideModel, b: &SideModel) -> bool {
    let case_eq = match (a.case, b.case) {
        (SideCase::Endpoint { edge: e1, .. }, SideCase::Endpoint { edge: e2, .. }) => e1 == e2,
        (x, y) => std::mem::discriminant(&x) == std::mem::discriminant(&y),
    };
    case_eq && a.anchor == b.anchor && a.path_ids == b.path_ids
}

fn bend_kinds(old: &[usize], new: &[usize], out: &mut Vec<EventKind>) {
    if old == new {
        return;
    }
    if new.len() > old.len() {
        out.push(EventKind::BendT1);
    } else if new.len() < old.len() {
        out.push(EventKind::BendT2);
    } else {
        out.push(EventKind::BendT1);
        out.push(EventKind::BendT2);
    }
}

impl Builder<'_> {
    fn pivot(&mut self, fi: usize, frame: &PivotFrame, cands: &[Candidate], last: bool) -> Result<()> {
        let (poly, tri, spt_s, spt_t) = (self.poly, self.tri, self.spt_s, self.spt_t);
        let pb_s = spt_s.path_to_vertex(frame.pivot_id);
        let pb_t = spt_t.path_to_vertex(frame.pivot_id);

        let Groups { at_start, at_end, inner } = group_candidates(frame, cands);

        let mut cuts = vec![0.0];
        cuts.extend(inner.iter().map(|g| g.0));
        cuts.push(frame.sweep);

        // Pieces of this pivot, before merging.
        let mut pieces: Vec<(f64, f64, SideModel, SideModel, (usize, usize))> = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let (em, ep) = hit_edges(poly, tri, frame, a, b)?;
            let mut pts = vec![a, b];
            for (spt, pb, edge, reach) in [(spt_s, &pb_s, em, -1.0), (spt_t, &pb_t, ep, 1.0)] {
                side_breaks(poly, tri, frame, spt, pb, edge, reach, a, b, &mut pts)?;
            }
            pts.sort_by(f64::total_cmp);
            pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15);
            for q in pts.windows(2) {
                let (c, d) = (q[0], q[1]);
                if d <= c {
                    continue;
                }
                let mid = 0.5 * (c + d);
                let sm = side_model(poly, tri, frame, spt_s, &pb_s, em, -1.0, mid)?;
                let tm = side_model(poly, tri, frame, spt_t, &pb_t, ep, 1.0, mid)?;
                match pieces.last_mut() {
                    Some(prev) if prev.1 == c && same_structure(&prev.2, &sm) && same_structure(&prev.3, &tm) && !cuts.contains(&c) => {
                        prev.1 = d;
                    }
                    _ => pieces.push((c, d, sm, tm, (em, ep))),
                }
            }
        }

        // Events and intervals.
        let boundary_at = |l: f64| inner.iter().find(|g| g.0 == l);
        for (pi, (lo, hi, sm, tm, edges)) in pieces.iter().enumerate() {
            let ids = (sm.vertex_ids(), tm.vertex_ids());
            let mut kinds = Vec::new();
            if let Some((old_s, old_t)) = &self.last_ids {
                bend_kinds(old_s, &ids.0, &mut kinds);
                bend_kinds(old_t, &ids.1, &mut kinds);
            }
            let mut vertices = Vec::new();
            let mut side = None;
            let mut aim = Aim::Dir(frame.unit(*lo));
            if pi == 0 {
                kinds.push(EventKind::Path);
                let carried = std::mem::take(&mut self.carry);
                let here = carried.into_iter().chain(at_start.iter().map(|c| (c.vertex, c.side)));
                for (w, sd) in here {
                    vertices.push(w);
                    side.get_or_insert(sd);
                }
                if !vertices.is_empty() {
                    kinds.push(EventKind::Boundary);
                }
                aim = Aim::Line(frame.line_in());
            } else if let Some((_, g)) = boundary_at(*lo) {
                kinds.push(EventKind::Boundary);
                vertices.extend(g.iter().map(|c| c.vertex));
                side = Some(g[0].side);
                aim = Aim::Line(g[0].line);
            }
            if !kinds.is_empty() {
                self.push_event(fi, frame, *lo, aim, kinds, side, vertices, sm, tm)?;
            }
            self.last_ids = Some(ids);
            let interval = self.events.len() - 1;
            self.pieces.push(Piece { frame: fi, lo: *lo, hi: *hi, s: sm.clone(), t: tm.clone(), edges: *edges, interval });
        }
        if last {
            let (_, _, sm, tm, _) = pieces.last().ok_or_else(|| Error::Internal("empty pivot range".into()))?;
            let mut kinds = vec![EventKind::Path];
            let vertices: Vec<usize> = at_end.iter().map(|c| c.vertex).collect();
            let side = at_end.first().map(|c| c.side);
            if !vertices.is_empty() {
                kinds.push(EventKind::Boundary);
            }
            self.push_event(fi, frame, frame.sweep, Aim::Line(frame.line_out()), kinds, side, vertices, sm, tm)?;
        } else {
            // Same chord as the next pivot's first path event.
            self.carry = at_end.iter().map(|c| (c.vertex, c.side)).collect();
        }
        Ok(())
    }

    #[allow(clippy::too_many_arguments)]
    fn push_event(
        &mut self,
        fi: usize,
        frame: &PivotFrame,
        lambda: f64,
        aim: Aim,
        mut kinds: Vec<EventKind>,
        side: Option<ChordSide>,
        vertices: Vec<usize>,
        sm: &SideModel,
        tm: &SideModel,
    ) -> Result<()> {
        kinds.sort();
        kinds.dedup();
        let (chord, locs) = chord_aimed(self.poly, self.tri, frame, aim)?;
        let u = frame.unit(lambda);
        let (mut dist_s, _) = sm.eval(frame.pivot, u);
        let (mut dist_t, _) = tm.eval(frame.pivot, u);
        if kinds[0] <= EventKind::Boundary {
            let seg = Segment::new(chord.a, chord.b);
            let s = self.spt_s.distance_to_segment_located(self.tri, seg, locs)?;
            let t = self.spt_t.distance_to_segment_located(self.tri, seg, locs)?;
            (dist_s, dist_t) = (s.distance, t.distance);
            self.event_chords.push(EventChord { event: self.events.len(), frame: fi, lambda, chord, s, t });
        }
        self.events.push(SweepEvent {
            kind: kinds[0],
            kinds,
            pivot_index: frame.index,
            pivot: frame.pivot,
            lambda,
            theta: frame.theta(lambda),
            x: chord.a,
            x_tilde: chord.b,
            side,
            vertices,
            dist_s,
            dist_t,
        });
        Ok(())
    }
}

pub(crate) fn edge_points(poly: &SimplePolygon, e: usize) -> (Point, Point) {
    (poly.vertex(e), poly.vertex(poly.next(e)))
}

/// Rotation at which this side's chord part points from the pivot toward
/// `p`.
fn lambda_toward(frame: &PivotFrame, reach: f64, p: Point) -> f64 {
    frame.lambda_of((p - frame.pivot) * reach)
}

/// Rotations in `(a, b)` where one side's model may change: shortest path
/// map breaks along the endpoint edge, and, for each stretch between
/// those, the angles where a funnel wedge boundary becomes perpendicular to
/// the chord or the foot of a funnel vertex reaches the pivot or the
/// endpoint.
#[allow(clippy::too_many_arguments)]
pub(crate) fn side_breaks(
    poly: &SimplePolygon,
    tri: &Triangulation,
    frame: &PivotFrame,
    spt: &ShortestPathTree,
    pb: &GeodesicPath,
    edge: usize,
    reach: f64,
    a: f64,
    b: f64,
    out: &mut Vec<f64>,
) -> Result<()> {
    let (ea, eb) = edge_points(poly, edge);
    let v = frame.pivot;
    let mut stretch = vec![a, b];
    for tau in spt.edge_breakpoints(poly, tri, edge) {
        let l = lambda_toward(frame, reach, ea.lerp(eb, tau));
        if l > a && l < b {
            stretch.push(l);
        }
    }
    stretch.sort_by(f64::total_cmp);
    out.extend_from_slice(&stretch);
    let inside = |l: f64, lo: f64, hi: f64| l > lo && l < hi;
    for w in stretch.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let mid = 0.5 * (lo + hi);
        let x = endpoint_on_line(v, frame.unit(mid) * reach, ea, eb);
        let pa = spt.path_to_located(tri, x, tri.edge_location(edge))?;
        let mut h = 0;
        while h + 1 < pa.points.len() && h + 1 < pb.points.len() && pa.points[h + 1] == pb.points[h + 1] {
            h += 1;
        }
        let mut funnel: Vec<Point> = vec![pa.points[h]];
        let mut edges: Vec<Point> = Vec::new();
        for chain in [&pa.points[h..pa.points.len() - 1], &pb.points[h..]] {
            for (j, &p) in chain.iter().enumerate().skip(1) {
                edges.push(p - chain[j - 1]);
                if p != v {
                    funnel.push(p);
                }
            }
        }
        let mut push = |l: f64| {
            if inside(l, lo, hi) {
                out.push(l);
            }
        };
        for e in edges {
            let n = e.perp();
            push(frame.lambda_of(n));
            push(frame.lambda_of(-n));
        }
        for u in funnel {
            let w = u - v;
            if w.x == 0.0 && w.y == 0.0 {
                continue;
            }
            push(frame.lambda_of(w.perp()));
            push(frame.lambda_of(-w.perp()));
            for p in thales(u, v, ea, eb) {
                push(lambda_toward(frame, reach, p));
            }
        }
    }
    Ok(())
}

/// Points `p` on segment `ab` seeing `u` and `v` at a right angle.
fn thales(u: Point, v: Point, a: Point, b: Point) -> Vec<Point> {
    let c = (u + v) * 0.5;
    let r2 = (u - v).dot(u - v) * 0.25;
    let d = b - a;
    let f = a - c;
    let qa = d.dot(d);
    let qb = 2.0 * f.dot(d);
    let qc = f.dot(f) - r2;
    let disc = qb * qb - 4.0 * qa * qc;
    if disc < 0.0 || qa == 0.0 {
        return Vec::new();
    }
    let sq = disc.sqrt();
    [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
        .into_iter()
        .filter(|t| *t > 0.0 && *t < 1.0)
        .map(|t| a + d * t)
        .collect()
}

/// The model of one side at rotation `lambda`, found by evaluating the
/// funnel to the chord part between the endpoint on `edge` and the pivot.
#[allow(clippy::too_many_arguments)]
pub(crate) fn side_model(
    poly: &SimplePolygon,
    tri: &Triangulation,
    frame: &PivotFrame,
    spt: &ShortestPathTree,
    pb: &GeodesicPath,
    edge: usize,
    reach: f64,
    lambda: f64,
) -> Result<SideModel> {
    let (ea, eb) = edge_points(poly, edge);
    let v = frame.pivot;
    let x = endpoint_on_line(v, frame.unit(lambda) * reach, ea, eb);
    let pa = spt.path_to_located(tri, x, tri.edge_location(edge))?;
    Ok(classify(&pa, pb, x, v, frame.pivot_id, edge, (ea, eb), reach))
}

/// Turns the funnel minimum over segment `x v` into a side model.
#[allow(clippy::too_many_arguments)]
pub(crate) fn classify(
    pa: &GeodesicPath,
    pb: &GeodesicPath,
    x: Point,
    v: Point,
    pivot_id: usize,
    edge: usize,
    (ea, eb): (Point, Point),
    reach: f64,
) -> SideModel {
    let sd = segment_distance_from_paths(pa, pb, Segment::new(x, v));
    let prefix_of = |pts: &[Point]| pts.windows(2).fold(0.0, |acc, w| acc + w[0].dist(w[1]));
    let (path, ids, case) = if sd.closest_point == v || (sd.perpendicular && sd.anchor_id == Some(pivot_id)) {
        let m = pb.points.len();
        (pb.points[..m - 1].to_vec(), pb.vertex_ids[..m - 1].to_vec(), SideCase::Pivot)
    } else if !sd.perpendicular {
        let m = pa.points.len();
        (pa.points[..m - 1].to_vec(), pa.vertex_ids[..m - 1].to_vec(), SideCase::Endpoint { edge, a: ea, b: eb })
    } else {
        let mut pts = sd.path.points.clone();
        let mut ids = sd.path.vertex_ids.clone();
        if pts.len() > 1 && *pts.last().unwrap() != sd.anchor {
            pts.pop();
            ids.pop();
        }
        (pts, ids, SideCase::Foot)
    };
    let anchor = *path.last().unwrap();
    let anchor_id = *ids.last().unwrap();
    SideModel { anchor, anchor_id, prefix: prefix_of(&path), case, reach, path, path_ids: ids }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::{build_spt, shortest_path};

    fn p(x: f64, y: f64) -> Point {
        Point::new(x, y)
    }

    fn sweep_of(coords: &[(f64, f64)], s: Point, t: Point) -> (SimplePolygon, Triangulation, Sweep) {
        let poly = SimplePolygon::new(coords.iter().map(|&(x, y)| p(x, y)).collect()).unwrap();
        let tri = Triangulation::new(&poly).unwrap();
        let path = shortest_path(&poly, &tri, s, t).unwrap();
        let ss = build_spt(&poly, &tri, s).unwrap();
        let st = build_spt(&poly, &tri, t).unwrap();
        let sw = Sweep::compute(&poly, &tri, &path, &ss, &st).unwrap();
        (poly, tri, sw)
    }

    const L: [(f64, f64); 6] = [(0., 0.), (2., 0.), (2., 1.), (1., 1.), (1., 2.), (0., 2.)];

    #[test]
    fn l_instance_has_two_path_events() {
        let (_, _, sw) = sweep_of(&L, p(0.5, 1.75), p(1.75, 0.25));
        assert_eq!(sw.events.len(), 2);
        assert!(sw.events.iter().all(|e| e.kind == EventKind::Path));
        // The last chord ends exactly at vertex (2,0).
        assert_eq!(sw.events[1].vertices, vec![1]);
        let (e0, e1) = (&sw.events[0], &sw.events[1]);
        assert!(e0.x.dist(p(1. / 3., 2.)) < 1e-12 && e0.x_tilde.dist(p(5. / 3., 0.)) < 1e-12);
        assert!(e1.x.dist(p(0., 2.)) < 1e-12 && e1.x_tilde.dist(p(2., 0.)) < 1e-12);
        assert_eq!(sw.interval_count(), 1);
        assert!(sw.pieces.iter().all(|pc| pc.s.anchor == p(0.5, 1.75) && pc.t.anchor == p(1.75, 0.25)));
        assert!(sw.pieces.iter().all(|pc| pc.s.case == SideCase::Foot && pc.t.case == SideCase::Foot));
    }

    #[test]
    fn zig_zag_distances_are_monotone() {
        let zz = [(0., 0.), (6., 0.), (6., 4.), (4., 4.), (4., 2.), (2., 2.), (2., 4.), (0., 4.)];
        let (_, _, sw) = sweep_of(&zz, p(1., 3.), p(5., 3.));
        assert_eq!(sw.frames.len(), 2);
        assert_eq!(sw.events.iter().filter(|e| e.kinds.contains(&EventKind::Path)).count(), 3);
        for w in sw.events.windows(2) {
            assert!(w[1].dist_s >= w[0].dist_s - 1e-9);
            assert!(w[1].dist_t <= w[0].dist_t + 1e-9);
        }
    }

    #[test]
    fn thales_points() {
        let pts = thales(p(0., 1.), p(0., -1.), p(-2., 0.), p(2., 0.));
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().any(|q| q.dist(p(1., 0.)) < 1e-12));
    }
}
