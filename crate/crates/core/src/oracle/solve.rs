//! Dense angular sampling of the chords tangent to the shortest path.
//!
//! An optimal pair always lies on a chord through a vertex of the shortest
//! path that keeps both path neighbours of that vertex on one side. This
//! module samples those chords uniformly by angle, shooting their endpoints
//! naively and measuring both distances to the whole chord.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geodesic::GeodesicPath;
use crate::geom::{Point, Segment};
use crate::optimize::Objective;
use crate::topology::SimplePolygon;

use super::{naive_contains, naive_edge_at, naive_ray_shoot, naive_shortest_path, naive_visible, VisibilityField};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Chord angles sampled per path vertex.
    pub angular_samples: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { angular_samples: 100_000 }
    }
}

impl OracleOptions {
    pub const MIN_SAMPLES: usize = 1_000;

    pub fn validate(&self) -> Result<()> {
        if self.angular_samples < Self::MIN_SAMPLES {
            return Err(Error::InvalidInput(format!(
                "at least {} angular samples are needed, got {}",
                Self::MIN_SAMPLES,
                self.angular_samples
            )));
        }
        Ok(())
    }
}

/// One sampled chord.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChordSample {
    /// Position of the pivot in the shortest path.
    pub pivot_index: usize,
    /// Rotation from the incoming path edge.
    pub lambda: f64,
    pub x: Point,
    pub x_tilde: Point,
    pub ds: f64,
    pub dt: f64,
    pub s_star: Point,
    pub t_star: Point,
    /// Polygon vertices on the shortest paths to the chord.
    pub s_vertices: Vec<usize>,
    pub t_vertices: Vec<usize>,
    /// Edges holding `x` and `x_tilde`; `None` at a vertex.
    pub edge_s: Option<usize>,
    pub edge_t: Option<usize>,
    /// First or last sample of its pivot, where the chord runs along a
    /// path edge.
    pub range_end: bool,
}

/// All samples of an instance. Empty when `s` sees `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleProfile {
    pub s: Point,
    pub t: Point,
    pub samples: Vec<ChordSample>,
    /// Largest rotation step between consecutive samples.
    pub step: f64,
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSolution {
    pub value: f64,
    /// The true optimum lies in `[value - error_bound, value]`.
    pub error_bound: f64,
    pub s_star: Point,
    pub t_star: Point,
    pub pivot_index: Option<usize>,
    pub lambda: Option<f64>,
}

/// A change of the vertex list of one side's path between two samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructureChange {
    pub pivot_index: usize,
    /// Rotations of the samples before and after the change.
    pub between: (f64, f64),
    /// `true` for `s`'s side.
    pub s_side: bool,
}

/// Relative amount cut from both chord ends before measuring.
const SHRINK: f64 = 1e-10;

pub fn oracle_profile(poly: &SimplePolygon, s: Point, t: Point, opts: OracleOptions) -> Result<OracleProfile> {
    opts.validate()?;
    for p in [s, t] {
        if !naive_contains(poly, p) {
            return Err(Error::OutsidePolygon(p));
        }
    }
    let diameter = poly.diameter();
    let mut profile = OracleProfile { s, t, samples: Vec::new(), step: 0.0, diameter };
    if naive_visible(poly, s, t) {
        return Ok(profile);
    }
    let path = naive_shortest_path(poly, s, t)?;
    let (field_s, field_t) = (VisibilityField::new(poly, s)?, VisibilityField::new(poly, t)?);
    let n = opts.angular_samples;
    for i in 1..path.points.len() - 1 {
        let (prev, v, next) = (path.points[i - 1], path.points[i], path.points[i + 1]);
        let (d_in, d_out) = (v - prev, next - v);
        let phi = d_in.cross(d_out).atan2(d_in.dot(d_out));
        profile.step = profile.step.max(phi.abs() / n as f64);
        let u0 = d_in.normalized();
        for j in 0..=n {
            let a = phi * j as f64 / n as f64;
            let dir = match j {
                0 => d_in,
                _ if j == n => d_out,
                _ => u0.rotated(a),
            };
            let x = naive_ray_shoot(poly, v, -dir);
            let x_tilde = naive_ray_shoot(poly, v, dir);
            // Shooting rounds the ends, possibly to just outside the
            // polygon, where naive visibility would reject them.
            let chord = Segment::new(x.lerp(x_tilde, SHRINK), x_tilde.lerp(x, SHRINK));
            let rs = field_s.distance_to_segment(chord);
            let rt = field_t.distance_to_segment(chord);
            let inner = |p: &GeodesicPath| -> Vec<usize> {
                p.vertex_ids[..p.vertex_ids.len() - 1].iter().flatten().copied().collect()
            };
            profile.samples.push(ChordSample {
                pivot_index: i,
                lambda: a.abs(),
                x,
                x_tilde,
                ds: rs.distance,
                dt: rt.distance,
                s_star: rs.closest_point,
                t_star: rt.closest_point,
                s_vertices: inner(&rs.path),
                t_vertices: inner(&rt.path),
                edge_s: naive_edge_at(poly, x),
                edge_t: naive_edge_at(poly, x_tilde),
                range_end: j == 0 || j == n,
            });
        }
    }
    Ok(profile)
}

impl OracleProfile {
    pub fn best(&self, objective: Objective) -> OracleSolution {
        let Some(first) = self.samples.first() else {
            return OracleSolution {
                value: objective.at_rest(),
                error_bound: 0.0,
                s_star: self.s,
                t_star: self.t,
                pivot_index: None,
                lambda: None,
            };
        };
        let mut best = first;
        let mut best_value = objective.combine(first.ds, first.dt);
        for c in &self.samples[1..] {
            let v = objective.combine(c.ds, c.dt);
            if v < best_value {
                best = c;
                best_value = v;
            }
        }
        // Each side's distance moves by at most diameter * rotation; the
        // chord shrinking adds at most SHRINK * diameter per side.
        let weight = match objective {
            Objective::MinSum => 2.0,
            Objective::WeightedMinMax { lambda } => lambda.max(1.0 - lambda),
            _ => 1.0,
        };
        OracleSolution {
            value: best_value,
            error_bound: 2.0 * weight * self.diameter * self.step + 1e-9 * weight * (1.0 + self.diameter),
            s_star: best.s_star,
            t_star: best.t_star,
            pivot_index: Some(best.pivot_index),
            lambda: Some(best.lambda),
        }
    }

    /// Number of stretches of the sweep with one combinatorial description
    /// (pivot, hit edges, both path vertex lists). Samples at the ends of a
    /// pivot's range are skipped: their chords graze path vertices.
    pub fn interval_count(&self) -> usize {
        if self.samples.is_empty() {
            return 0;
        }
        let mut count = 1;
        for w in self.samples.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.pivot_index != b.pivot_index {
                count += 1;
            } else if !a.range_end && !b.range_end {
                let edge_moved = |x: Option<usize>, y: Option<usize>| matches!((x, y), (Some(x), Some(y)) if x != y);
                if a.s_vertices != b.s_vertices
                    || a.t_vertices != b.t_vertices
                    || edge_moved(a.edge_s, b.edge_s)
                    || edge_moved(a.edge_t, b.edge_t)
                {
                    count += 1;
                }
            }
        }
        count
    }

    /// Changes of either side's path vertex list between consecutive
    /// samples of the same pivot, away from the range ends.
    pub fn structure_changes(&self) -> Vec<StructureChange> {
        let mut out = Vec::new();
        for w in self.samples.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.pivot_index != b.pivot_index || a.range_end || b.range_end {
                continue;
            }
            if a.s_vertices != b.s_vertices {
                out.push(StructureChange { pivot_index: a.pivot_index, between: (a.lambda, b.lambda), s_side: true });
            }
            if a.t_vertices != b.t_vertices {
                out.push(StructureChange { pivot_index: a.pivot_index, between: (a.lambda, b.lambda), s_side: false });
            }
        }
        out
    }
}

/// Sampled minimum with a guaranteed error bound.
pub fn oracle_solve(
    poly: &SimplePolygon,
    s: Point,
    t: Point,
    objective: Objective,
    opts: OracleOptions,
) -> Result<OracleSolution> {
    objective.validate()?;
    Ok(oracle_profile(poly, s, t, opts)?.best(objective))
}
