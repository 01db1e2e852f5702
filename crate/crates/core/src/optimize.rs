//! Minimizing the objective over the chords between two consecutive events.
//!
//! Chords rotate about a pivot `v`; a chord is parametrized by the rotation
//! `lambda` from the incoming path direction. Within one interval each side
//! is described by a fixed [`SideModel`]: the path to the chord ends with a
//! perpendicular foot, at the chord endpoint sliding along a fixed edge, or
//! at the pivot itself.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{signed_angle, Point};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Objective {
    MinMax,
    MinSum,
    /// `max(lambda * d_s, (1 - lambda) * d_t)`.
    WeightedMinMax { lambda: f64 },
    /// `max(alpha + d_s, beta + d_t)`.
    OffsetMinMax { alpha: f64, beta: f64 },
}

impl Objective {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Objective::WeightedMinMax { lambda } if !(0.0..=1.0).contains(&lambda) => {
                Err(Error::InvalidObjective(format!("lambda must lie in [0, 1], got {lambda}")))
            }
            Objective::OffsetMinMax { alpha, beta } if !(alpha >= 0.0 && beta >= 0.0) || !(alpha + beta).is_finite() => {
                Err(Error::InvalidObjective(format!("offsets must be finite and nonnegative, got {alpha}, {beta}")))
            }
            _ => Ok(()),
        }
    }

    /// Affine maps `(a_s, b_s, a_t, b_t)` turning side distances into the
    /// two terms `a + b * d` that are summed or maximized.
    fn terms(&self) -> (f64, f64, f64, f64) {
        match *self {
            Objective::MinMax | Objective::MinSum => (0.0, 1.0, 0.0, 1.0),
            Objective::WeightedMinMax { lambda } => (0.0, lambda, 0.0, 1.0 - lambda),
            Objective::OffsetMinMax { alpha, beta } => (alpha, 1.0, beta, 1.0),
        }
    }

    pub fn is_sum(&self) -> bool {
        matches!(self, Objective::MinSum)
    }

    pub fn combine(&self, ds: f64, dt: f64) -> f64 {
        let (a_s, b_s, a_t, b_t) = self.terms();
        let (x, y) = (a_s + b_s * ds, a_t + b_t * dt);
        if self.is_sum() {
            x + y
        } else {
            x.max(y)
        }
    }

    /// The objective's value when neither point moves.
    pub fn at_rest(&self) -> f64 {
        self.combine(0.0, 0.0)
    }
}

/// Rotation frame of one pivot. Chord directions turn from `d_in` (the
/// path edge entering the pivot) to `d_out` (the edge leaving it) through
/// the angle `sweep < pi`, in the sense `sense` (+1 counter-clockwise).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PivotFrame {
    pub prev: Point,
    pub pivot: Point,
    pub next: Point,
    pub pivot_id: usize,
    /// Position of the pivot in the shortest path.
    pub index: usize,
    pub d_in: Point,
    pub d_out: Point,
    pub sweep: f64,
    pub sense: f64,
}

impl PivotFrame {
    pub fn new(pivot_id: usize, index: usize, prev: Point, pivot: Point, next: Point) -> Self {
        let (d_in, d_out) = (pivot - prev, next - pivot);
        let phi = signed_angle(d_in, d_out);
        let sense = if phi < 0.0 { -1.0 } else { 1.0 };
        PivotFrame { prev, pivot, next, pivot_id, index, d_in, d_out, sweep: phi.abs(), sense }
    }

    /// The incoming path edge's line, as two exact points.
    pub fn line_in(&self) -> (Point, Point) {
        (self.prev, self.pivot)
    }

    pub fn line_out(&self) -> (Point, Point) {
        (self.pivot, self.next)
    }

    /// Unit chord direction at rotation `lambda`.
    pub fn unit(&self, lambda: f64) -> Point {
        if lambda <= 0.0 {
            self.d_in.normalized()
        } else if lambda >= self.sweep {
            self.d_out.normalized()
        } else {
            self.d_in.normalized().rotated(self.sense * lambda)
        }
    }

    /// Chord direction for predicates: the exact path edge at the ends of
    /// the range.
    pub fn direction(&self, lambda: f64) -> Point {
        if lambda <= 0.0 {
            self.d_in
        } else if lambda >= self.sweep {
            self.d_out
        } else {
            self.unit(lambda)
        }
    }

    /// Rotation at which the chord has direction `dir` (unclamped).
    pub fn lambda_of(&self, dir: Point) -> f64 {
        self.sense * signed_angle(self.d_in, dir)
    }

    /// Chord angle in `[0, pi)`.
    pub fn theta(&self, lambda: f64) -> f64 {
        let a = self.unit(lambda).angle().rem_euclid(PI);
        if a >= PI {
            0.0
        } else {
            a
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SideCase {
    /// Perpendicular foot from the anchor onto the chord.
    Foot,
    /// The chord endpoint on this side, sliding along polygon edge `edge`
    /// with endpoints `a`, `b`.
    Endpoint { edge: usize, a: Point, b: Point },
    /// The pivot itself.
    Pivot,
}

/// How one source reaches the chord throughout an interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideModel {
    pub anchor: Point,
    pub anchor_id: Option<usize>,
    /// Geodesic length from the source to the anchor.
    pub prefix: f64,
    pub case: SideCase,
    /// -1 when this side's part of the chord points along `-direction`
    /// (the source `s`), +1 otherwise.
    pub reach: f64,
    /// Path from the source to the anchor.
    pub path: Vec<Point>,
    pub path_ids: Vec<Option<usize>>,
}

impl SideModel {
    /// Distance from the source to the chord with unit direction `u`, and
    /// the point where it is attained.
    pub fn eval(&self, pivot: Point, u: Point) -> (f64, Point) {
        match self.case {
            SideCase::Foot => {
                let w = self.anchor - pivot;
                let off = w.cross(u).abs();
                // An anchor on the chord is its own foot; keep it exact.
                let foot = if off <= 1e-15 * w.norm() { self.anchor } else { pivot + u * w.dot(u) };
                (self.prefix + off, foot)
            }
            SideCase::Endpoint { a, b, .. } => {
                let x = endpoint_on_line(pivot, u * self.reach, a, b);
                (self.prefix + self.anchor.dist(x), x)
            }
            SideCase::Pivot => (self.prefix + self.anchor.dist(pivot), pivot),
        }
    }

    /// Coefficients `(k, p, q)` with distance `k + |p cos a + q sin a|` at
    /// rotation angle `a = sense * lambda`, when the distance has that form.
    fn trig_form(&self, frame: &PivotFrame) -> Option<(f64, f64, f64)> {
        match self.case {
            SideCase::Foot => {
                let u0 = frame.d_in.normalized();
                let w = self.anchor - frame.pivot;
                Some((self.prefix, w.cross(u0), w.cross(u0.perp())))
            }
            SideCase::Pivot => Some((self.prefix + self.anchor.dist(frame.pivot), 0.0, 0.0)),
            SideCase::Endpoint { .. } => None,
        }
    }

    /// Polygon vertices on the path to the chord.
    pub fn vertex_ids(&self) -> Vec<usize> {
        self.path_ids.iter().flatten().copied().collect()
    }
}

/// Where the ray `pivot + tau * dir` meets the line through `a` and `b`.
pub fn endpoint_on_line(pivot: Point, dir: Point, a: Point, b: Point) -> Point {
    let e = b - a;
    let den = dir.cross(e);
    if den == 0.0 {
        return a.lerp(b, 0.5);
    }
    pivot + dir * ((a - pivot).cross(e) / den)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalProblem {
    pub frame: PivotFrame,
    pub lo: f64,
    pub hi: f64,
    pub s: SideModel,
    pub t: SideModel,
    pub objective: Objective,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AchievedAt {
    Interior,
    LeftEndpoint,
    RightEndpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Evaluation {
    pub ds: f64,
    pub dt: f64,
    pub s_star: Point,
    pub t_star: Point,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalOptimum {
    pub lambda: f64,
    pub theta: f64,
    pub value: f64,
    pub ds: f64,
    pub dt: f64,
    pub s_star: Point,
    pub t_star: Point,
    pub at: AchievedAt,
}

pub fn evaluate_at(prob: &IntervalProblem, lambda: f64) -> Evaluation {
    let u = prob.frame.unit(lambda);
    let (ds, s_star) = prob.s.eval(prob.frame.pivot, u);
    let (dt, t_star) = prob.t.eval(prob.frame.pivot, u);
    Evaluation { ds, dt, s_star, t_star, value: prob.objective.combine(ds, dt) }
}

/// Samples used to bracket minima the closed forms do not cover.
const GRID: usize = 48;

/// Global minimum of the objective over `[lo, hi]`.
/// Rotations this close to an interval end are snapped onto it.
const END_SNAP: f64 = 1e-13;

pub fn minimize_interval(prob: &IntervalProblem) -> Result<LocalOptimum> {
    let (lo, hi) = (prob.lo, prob.hi);
    if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::EmptyInterval(lo, hi));
    }
    let f = |l: f64| evaluate_at(prob, l).value;
    let mut cands = vec![lo, hi];
    if hi > lo {
        closed_form_candidates(prob, &mut cands);
        numeric_candidates(prob, &f, &mut cands);
    }
    // Candidates within rounding of an end are that end, so that the chord
    // there is the exact path edge.
    for l in cands.iter_mut() {
        if (*l - lo).abs() <= END_SNAP {
            *l = lo;
        } else if (*l - hi).abs() <= END_SNAP {
            *l = hi;
        }
    }
    cands.retain(|l| *l >= lo && *l <= hi);
    cands.sort_by(f64::total_cmp);
    cands.dedup();

    let mut best = (lo, f(lo));
    for &l in &cands {
        let v = f(l);
        if v < best.1 - 1e-15 * best.1.abs().max(1.0) {
            best = (l, v);
        }
    }
    let (lambda, _) = best;
    let e = evaluate_at(prob, lambda);
    let at = if lambda == lo {
        AchievedAt::LeftEndpoint
    } else if lambda == hi {
        AchievedAt::RightEndpoint
    } else {
        AchievedAt::Interior
    };
    Ok(LocalOptimum {
        lambda,
        theta: prob.frame.theta(lambda),
        value: e.value,
        ds: e.ds,
        dt: e.dt,
        s_star: e.s_star,
        t_star: e.t_star,
        at,
    })
}

/// All `lambda` with `sense * lambda = a + k * period` for some integer `k`.
fn push_angle(frame: &PivotFrame, a: f64, period: f64, out: &mut Vec<f64>) {
    for k in -4..=4 {
        let l = frame.sense * (a + k as f64 * period);
        if l.is_finite() && (-1e-9..=frame.sweep + 1e-9).contains(&l) {
            out.push(l.clamp(0.0, frame.sweep));
        }
    }
}

/// Branch switches, stationary points and balance points of the pieces of
/// the form `k + |p cos a + q sin a|`.
fn closed_form_candidates(prob: &IntervalProblem, out: &mut Vec<f64>) {
    let frame = &prob.frame;
    let (a_s, b_s, a_t, b_t) = prob.objective.terms();
    let fs = prob.s.trig_form(frame);
    let ft = prob.t.trig_form(frame);
    for (k, p, q) in [fs, ft].into_iter().flatten() {
        let _ = k;
        if p != 0.0 || q != 0.0 {
            // Zero of p cos a + q sin a, where the side touches the chord.
            push_angle(frame, (-p).atan2(q), PI, out);
            // Its extremum.
            push_angle(frame, q.atan2(p), PI, out);
        }
    }
    let (Some((ks, ps, qs)), Some((kt, pt, qt))) = (fs, ft) else { return };
    for es in [-1.0, 1.0] {
        for et in [-1.0, 1.0] {
            if prob.objective.is_sum() {
                let (p, q) = (b_s * es * ps + b_t * et * pt, b_s * es * qs + b_t * et * qt);
                if p != 0.0 || q != 0.0 {
                    push_angle(frame, q.atan2(p), PI, out);
                }
            } else {
                // a_s + b_s (ks + es(..)) = a_t + b_t (kt + et(..)).
                let c = a_s + b_s * ks - a_t - b_t * kt;
                let (p, q) = (b_s * es * ps - b_t * et * pt, b_s * es * qs - b_t * et * qt);
                let r = p.hypot(q);
                if r > 0.0 && c.abs() <= r {
                    let delta = q.atan2(p);
                    let w = (-c / r).acos();
                    push_angle(frame, delta + w, 2.0 * PI, out);
                    push_angle(frame, delta - w, 2.0 * PI, out);
                }
            }
        }
    }
}

/// Grid bracketing with golden-section refinement of every sampled local
/// minimum, and bisection of every sign change of the two max terms.
fn numeric_candidates(prob: &IntervalProblem, f: &dyn Fn(f64) -> f64, out: &mut Vec<f64>) {
    let (lo, hi) = (prob.lo, prob.hi);
    let xs: Vec<f64> = (0..=GRID).map(|i| lo + (hi - lo) * i as f64 / GRID as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    // Discrete minima, the ends included: a minimum in an end bin shows up
    // only as a low end sample.
    for i in 0..=GRID {
        let (a, b) = (i.saturating_sub(1), (i + 1).min(GRID));
        if ys[i] <= ys[a] && ys[i] <= ys[b] {
            out.push(golden(f, xs[a], xs[b]));
        }
    }
    if !prob.objective.is_sum() {
        let (a_s, b_s, a_t, b_t) = prob.objective.terms();
        let gap = |l: f64| {
            let e = evaluate_at(prob, l);
            (a_s + b_s * e.ds) - (a_t + b_t * e.dt)
        };
        let gs: Vec<f64> = xs.iter().map(|&x| gap(x)).collect();
        for i in 0..GRID {
            if gs[i] == 0.0 {
                out.push(xs[i]);
            } else if gs[i] * gs[i + 1] < 0.0 {
                out.push(bisect(&gap, xs[i], xs[i + 1]));
            }
        }
    }
}

fn golden(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if b - a <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        c
    } else {
        d
    }
}

fn bisect(g: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ga = g(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if (gm < 0.0) == (ga < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}
