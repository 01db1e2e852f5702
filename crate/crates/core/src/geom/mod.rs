//! Planar points, segments and exact predicates.

pub mod exact;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point (or free vector) in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(v: [f64; 2]) -> Self {
        Point { x: v[0], y: v[1] }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Point {
        let n = self.norm();
        Point::new(self.x / n, self.y / n)
    }

    /// Counter-clockwise rotation by `angle` radians.
    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        Point::new(self.x + (o.x - self.x) * t, self.y + (o.y - self.y) * t)
    }

    /// Angle of the vector in `(-pi, pi]`.
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub const fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn midpoint(&self) -> Point {
        self.a.lerp(self.b, 0.5)
    }

    /// Closest point of the segment to `p`.
    pub fn closest_point(&self, p: Point) -> Point {
        let d = self.b - self.a;
        let len2 = d.dot(d);
        if len2 == 0.0 {
            return self.a;
        }
        let t = ((p - self.a).dot(d) / len2).clamp(0.0, 1.0);
        self.a.lerp(self.b, t)
    }

    /// Exact test for `p` lying on the closed segment.
    pub fn contains(&self, p: Point) -> bool {
        orientation(self.a, self.b, p) == Orientation::Collinear && in_box(self.a, self.b, p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "ccw")]
    CounterClockwise,
    #[serde(rename = "cw")]
    Clockwise,
    #[serde(rename = "collinear")]
    Collinear,
}

impl Orientation {
    fn from_ordering(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }

    /// +1, -1 or 0.
    pub fn sign(self) -> i32 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        }
    }
}

/// Exact orientation of the triangle `pqr`.
pub fn orientation(p: Point, q: Point, r: Point) -> Orientation {
    Orientation::from_ordering(exact::orient2d(p.x, p.y, q.x, q.y, r.x, r.y))
}

/// Exact signed side (+1 left, -1 right, 0 on) of `w` relative to the line
/// through `origin` with direction `dir`.
pub fn side_of_line(origin: Point, dir: Point, w: Point) -> i32 {
    match exact::side_of_directed_line(origin.x, origin.y, dir.x, dir.y, w.x, w.y) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Exact sign of `dir . (w - origin)`.
pub fn direction_dot_sign(origin: Point, dir: Point, w: Point) -> i32 {
    match exact::directed_dot_sign(origin.x, origin.y, dir.x, dir.y, w.x, w.y) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Exact sign of `(q - p) . (r - p)`.
pub fn dot_sign(p: Point, q: Point, r: Point) -> i32 {
    match exact::dot_sign(p.x, p.y, q.x, q.y, r.x, r.y) {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// `p` inside the closed axis-aligned box spanned by `a` and `b`.
fn in_box(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Result of intersecting two closed segments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentIntersection {
    None,
    /// A single common point. `touching` is set when the point is an
    /// endpoint of at least one of the segments.
    Point { at: Point, touching: bool },
    /// Collinear segments sharing a sub-segment of positive length.
    Overlap(Segment),
}

/// Classifies the intersection of two non-degenerate segments.
///
/// The classification is exact; the reported coordinates are computed in
/// floating point.
pub fn segments_intersect(s1: Segment, s2: Segment) -> SegmentIntersection {
    let (p1, p2, q1, q2) = (s1.a, s1.b, s2.a, s2.b);
    let o1 = orientation(p1, p2, q1);
    let o2 = orientation(p1, p2, q2);
    let o3 = orientation(q1, q2, p1);
    let o4 = orientation(q1, q2, p2);

    use Orientation::Collinear as C;
    if o1 == C && o2 == C {
        // Collinear: project onto the dominant axis of s1.
        let d = p2 - p1;
        let key = |p: Point| if d.x.abs() >= d.y.abs() { p.x } else { p.y };
        let (mut a0, mut a1) = (p1, p2);
        if key(a0) > key(a1) {
            std::mem::swap(&mut a0, &mut a1);
        }
        let (mut b0, mut b1) = (q1, q2);
        if key(b0) > key(b1) {
            std::mem::swap(&mut b0, &mut b1);
        }
        let lo = if key(a0) >= key(b0) { a0 } else { b0 };
        let hi = if key(a1) <= key(b1) { a1 } else { b1 };
        return match key(lo).partial_cmp(&key(hi)) {
            Some(Ordering::Less) => SegmentIntersection::Overlap(Segment::new(lo, hi)),
            Some(Ordering::Equal) => SegmentIntersection::Point { at: lo, touching: true },
            _ => SegmentIntersection::None,
        };
    }

    if o1 != C && o1 == o2 {
        return SegmentIntersection::None;
    }
    if o3 != C && o3 == o4 {
        return SegmentIntersection::None;
    }
    // Endpoint contacts.
    if o1 == C {
        return SegmentIntersection::Point { at: q1, touching: true };
    }
    if o2 == C {
        return SegmentIntersection::Point { at: q2, touching: true };
    }
    if o3 == C {
        return SegmentIntersection::Point { at: p1, touching: true };
    }
    if o4 == C {
        return SegmentIntersection::Point { at: p2, touching: true };
    }
    SegmentIntersection::Point { at: line_intersection(p1, p2, q1, q2), touching: false }
}

/// Intersection point of the lines `p1p2` and `q1q2` (assumed non-parallel).
pub fn line_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Point {
    let r = p2 - p1;
    let s = q2 - q1;
    let denom = r.cross(s);
    let t = (q1 - p1).cross(s) / denom;
    let p = p1 + r * t;
    // Snap into the bounding box of the second segment; rounding can push
    // the constructed point slightly outside.
    Point::new(
        p.x.clamp(q1.x.min(q2.x), q1.x.max(q2.x)),
        p.y.clamp(q1.y.min(q2.y), q1.y.max(q2.y)),
    )
}

/// Distance from `p` to the line through `through` with unit direction `dir`.
pub fn point_line_distance(p: Point, through: Point, dir: Point) -> f64 {
    (p - through).cross(dir).abs()
}

/// Orthogonal projection of `p` onto the line through `through` with unit
/// direction `dir`.
pub fn project_onto_line(p: Point, through: Point, dir: Point) -> Point {
    through + dir * (p - through).dot(dir)
}

/// Signed angle from `a` to `b` in `(-pi, pi]`.
pub fn signed_angle(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b))
}
