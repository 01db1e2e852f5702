//! End-to-end solver: sweep events, per-interval minima, global optimum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::{shortest_path_located, GeodesicPath, ShortestPathTree};
use crate::geom::{side_of_line, Point};
use crate::optimize::{minimize_interval, AchievedAt, LocalOptimum, Objective, PivotFrame, SideModel};
use crate::sweep::{EventChord, Sweep, SweepEvent};
use crate::topology::{Chord, SimplePolygon, Triangulation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub objective: Objective,
    pub value: f64,
    pub s_star: Point,
    pub t_star: Point,
    /// The chord containing both witnesses; absent when `s` sees `t`.
    pub chord: Option<Chord>,
    pub pivot: Option<Point>,
    pub pivot_id: Option<usize>,
    /// Position of the pivot in the shortest path from `s` to `t`.
    pub pivot_index: Option<usize>,
    /// Chord angle in `[0, pi)`.
    pub theta: Option<f64>,
    /// Rotation of the chord from the incoming path edge at the pivot.
    pub lambda: Option<f64>,
    /// The shortest path from `s` to `t`.
    pub path: GeodesicPath,
    pub path_s: GeodesicPath,
    pub path_t: GeodesicPath,
    /// Index of the event interval holding the optimum.
    pub interval_id: Option<usize>,
}

/// Best solution found within one event interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalOptimum {
    pub interval: usize,
    pub pivot_index: usize,
    pub optimum: LocalOptimum,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    pub events: Vec<SweepEvent>,
    pub intervals: Vec<IntervalOptimum>,
}

impl SolveResult {
    /// Whether both path neighbours of the pivot lie in one closed half-plane
    /// of the chord line (exact). `None` when there is no chord.
    pub fn is_tangent_at_pivot(&self) -> Option<bool> {
        let (i, lambda) = (self.pivot_index?, self.lambda?);
        let pts = &self.path.points;
        let (prev, v, next) = (pts[i - 1], pts[i], pts[i + 1]);
        let frame = PivotFrame::new(self.pivot_id?, i, prev, v, next);
        let dir = frame.direction(lambda);
        // At the ends of the range the line runs through the neighbour.
        let a = if lambda <= 0.0 { 0 } else { side_of_line(v, dir, prev) };
        let b = if lambda >= frame.sweep { 0 } else { side_of_line(v, dir, next) };
        Some(a * b >= 0)
    }
}

pub fn solve(poly: &SimplePolygon, s: Point, t: Point, objective: Objective) -> Result<SolveResult> {
    let tri = Triangulation::new(poly)?;
    solve_in(poly, &tri, s, t, objective)
}

/// Like [`solve`], reusing a triangulation.
pub fn solve_in(poly: &SimplePolygon, tri: &Triangulation, s: Point, t: Point, objective: Objective) -> Result<SolveResult> {
    Ok(solve_with_trace_in(poly, tri, s, t, objective)?.0)
}

pub fn solve_with_trace(poly: &SimplePolygon, s: Point, t: Point, objective: Objective) -> Result<(SolveResult, Trace)> {
    let tri = Triangulation::new(poly)?;
    solve_with_trace_in(poly, &tri, s, t, objective)
}

pub fn solve_with_trace_in(
    poly: &SimplePolygon,
    tri: &Triangulation,
    s: Point,
    t: Point,
    objective: Objective,
) -> Result<(SolveResult, Trace)> {
    objective.validate()?;
    let ls = tri.locate(poly, s)?;
    let lt = tri.locate(poly, t)?;
    if s == t || tri.is_visible(poly, s, t)? {
        return Ok((stationary(s, t, objective), Trace::default()));
    }
    let path = shortest_path_located(poly, tri, s, ls, t, lt);
    if path.edge_count() < 2 {
        return Err(Error::Internal("s and t do not see each other but their shortest path is straight".into()));
    }
    let spt_s = ShortestPathTree::build(poly, tri, s, ls)?;
    let spt_t = ShortestPathTree::build(poly, tri, t, lt)?;
    let sweep = Sweep::compute(poly, tri, &path, &spt_s, &spt_t)?;
    let (best, intervals) = optimize_sweep(&sweep, objective)?;
    let result = assemble(poly, &sweep, best, objective);
    Ok((result, Trace { events: sweep.events, intervals }))
}

fn stationary(s: Point, t: Point, objective: Objective) -> SolveResult {
    SolveResult {
        objective,
        value: objective.at_rest(),
        s_star: s,
        t_star: t,
        chord: None,
        pivot: None,
        pivot_id: None,
        pivot_index: None,
        theta: None,
        lambda: None,
        path: GeodesicPath::new(vec![s, t], vec![None, None]),
        path_s: GeodesicPath::single(s, None),
        path_t: GeodesicPath::single(t, None),
        interval_id: None,
    }
}

/// Where the optimum was found.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Winner {
    /// Index into [`Sweep::pieces`].
    Piece(usize),
    /// Index into [`Sweep::event_chords`].
    EventChord(usize),
}

fn event_chord_optimum(sweep: &Sweep, pc: &EventChord, objective: Objective) -> LocalOptimum {
    let frame = &sweep.frames[pc.frame];
    LocalOptimum {
        lambda: pc.lambda,
        theta: frame.theta(pc.lambda),
        value: objective.combine(pc.s.distance, pc.t.distance),
        ds: pc.s.distance,
        dt: pc.t.distance,
        s_star: pc.s.closest_point,
        t_star: pc.t.closest_point,
        at: if pc.lambda > 0.0 { AchievedAt::RightEndpoint } else { AchievedAt::LeftEndpoint },
    }
}

/// Minimizes every piece and checks every path chord, in sweep order.
/// Returns the winner with its optimum, and the best optimum per interval.
/// Ties keep the earliest.
pub(crate) fn optimize_sweep(sweep: &Sweep, objective: Objective) -> Result<((Winner, LocalOptimum), Vec<IntervalOptimum>)> {
    let mut best: Option<(Winner, LocalOptimum)> = None;
    let mut intervals: Vec<IntervalOptimum> = Vec::new();
    let last_interval = sweep.interval_count().saturating_sub(1);
    let mut offer = |w: Winner, interval: usize, pivot_index: usize, opt: LocalOptimum| {
        if best.as_ref().is_none_or(|(_, b)| opt.value < b.value) {
            best = Some((w, opt));
        }
        match intervals.last_mut() {
            Some(io) if io.interval == interval => {
                if opt.value < io.optimum.value {
                    io.optimum = opt;
                }
            }
            _ => intervals.push(IntervalOptimum { interval, pivot_index, optimum: opt }),
        }
    };
    let mut chords = sweep.event_chords.iter().enumerate().peekable();
    for (i, piece) in sweep.pieces.iter().enumerate() {
        let pivot_index = sweep.frames[piece.frame].index;
        while let Some((ci, pc)) = chords.next_if(|(_, pc)| pc.event <= piece.interval) {
            let pi = sweep.frames[pc.frame].index;
            offer(Winner::EventChord(ci), pc.event.min(last_interval), pi, event_chord_optimum(sweep, pc, objective));
        }
        let opt = minimize_interval(&sweep.problem(piece, objective))?;
        offer(Winner::Piece(i), piece.interval, pivot_index, opt);
    }
    for (ci, pc) in chords {
        let pi = sweep.frames[pc.frame].index;
        offer(Winner::EventChord(ci), pc.event.min(last_interval), pi, event_chord_optimum(sweep, pc, objective));
    }
    let best = best.ok_or_else(|| Error::Internal("sweep produced no intervals".into()))?;
    Ok((best, intervals))
}

pub(crate) fn witness_path(model: &SideModel, end: Point) -> GeodesicPath {
    let mut pts = model.path.clone();
    let mut ids = model.path_ids.clone();
    if pts.last() != Some(&end) {
        pts.push(end);
        ids.push(None);
    }
    GeodesicPath::new(pts, ids)
}

pub(crate) fn assemble(poly: &SimplePolygon, sweep: &Sweep, (winner, opt): (Winner, LocalOptimum), objective: Objective) -> SolveResult {
    let (frame_id, chord, path_s, path_t, interval) = match winner {
        Winner::Piece(id) => {
            let piece = &sweep.pieces[id];
            let chord = sweep.piece_chord(poly, id, opt.lambda);
            (piece.frame, chord, witness_path(&piece.s, opt.s_star), witness_path(&piece.t, opt.t_star), piece.interval)
        }
        Winner::EventChord(id) => {
            let pc = &sweep.event_chords[id];
            let interval = pc.event.min(sweep.interval_count().saturating_sub(1));
            (pc.frame, pc.chord, pc.s.path.clone(), pc.t.path.clone(), interval)
        }
    };
    let frame = &sweep.frames[frame_id];
    SolveResult {
        objective,
        value: opt.value,
        s_star: opt.s_star,
        t_star: opt.t_star,
        chord: Some(chord),
        pivot: Some(frame.pivot),
        pivot_id: Some(frame.pivot_id),
        pivot_index: Some(frame.index),
        theta: Some(opt.theta),
        lambda: Some(opt.lambda),
        path: sweep.path.clone(),
        path_s,
        path_t,
        interval_id: Some(interval),
    }
}
