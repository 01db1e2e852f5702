//! Exact sign evaluation for small polynomial expressions over `f64`.
//!
//! Every product of two doubles is split into an exact `hi + lo` pair with a
//! fused multiply-add, and the pairs are accumulated into a non-overlapping
//! floating-point expansion. The sign of the expansion is the sign of its
//! most significant non-zero component. A cheap floating-point filter runs
//! first and only falls back to the expansion when the rounded result is
//! too close to zero to be trusted.

use std::cmp::Ordering;

const EPS: f64 = f64::EPSILON * 0.5;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let x = a + b;
    let bv = x - a;
    let av = x - bv;
    let br = b - bv;
    let ar = a - av;
    (x, ar + br)
}

#[inline]
fn two_product(a: f64, b: f64) -> (f64, f64) {
    let x = a * b;
    (x, a.mul_add(b, -x))
}

/// Adds `b` to the expansion `e` in place (Shewchuk's grow-expansion with
/// zero elimination).
fn grow(e: &mut Vec<f64>, b: f64) {
    let mut q = b;
    let mut out = Vec::with_capacity(e.len() + 1);
    for &c in e.iter() {
        let (s, h) = two_sum(q, c);
        q = s;
        if h != 0.0 {
            out.push(h);
        }
    }
    if q != 0.0 {
        out.push(q);
    }
    *e = out;
}

/// Exact sign of `sum_i sign_i * a_i * b_i`.
///
/// `terms` holds `(a, b, positive)` triples.
pub fn sign_of_products(terms: &[(f64, f64, bool)]) -> Ordering {
    let mut approx = 0.0;
    let mut magnitude = 0.0;
    for &(a, b, pos) in terms {
        let p = a * b;
        approx += if pos { p } else { -p };
        magnitude += p.abs();
    }
    // Each product carries one rounding and the running sum at most
    // `terms.len()` more; the bound below is deliberately loose.
    let bound = (terms.len() as f64 + 2.0) * 2.0 * EPS * magnitude;
    if approx > bound {
        return Ordering::Greater;
    }
    if approx < -bound {
        return Ordering::Less;
    }
    if magnitude == 0.0 {
        return Ordering::Equal;
    }
    let mut e: Vec<f64> = Vec::with_capacity(terms.len() * 2);
    for &(a, b, pos) in terms {
        let (hi, lo) = two_product(a, b);
        let (hi, lo) = if pos { (hi, lo) } else { (-hi, -lo) };
        grow(&mut e, lo);
        grow(&mut e, hi);
    }
    match e.iter().rev().find(|c| **c != 0.0) {
        Some(c) if *c > 0.0 => Ordering::Greater,
        Some(_) => Ordering::Less,
        None => Ordering::Equal,
    }
}

/// Exact sign of the 2x2 determinant `| qx-px  qy-py ; rx-px  ry-py |`.
pub fn orient2d(px: f64, py: f64, qx: f64, qy: f64, rx: f64, ry: f64) -> Ordering {
    // (qx-px)(ry-py) - (qy-py)(rx-px), expanded so that no subtraction of
    // inputs is rounded.
    sign_of_products(&[
        (qx, ry, true),
        (qx, py, false),
        (px, ry, false),
        (qy, rx, false),
        (qy, px, true),
        (py, rx, true),
    ])
}

/// Exact sign of `cross(d, w - v) = dx*(wy-vy) - dy*(wx-vx)` for a free
/// direction `d` that need not be a difference of representable points.
pub fn side_of_directed_line(vx: f64, vy: f64, dx: f64, dy: f64, wx: f64, wy: f64) -> Ordering {
    sign_of_products(&[(dx, wy, true), (dx, vy, false), (dy, wx, false), (dy, vx, true)])
}

/// Exact sign of `d . (w - v)` for a free direction `d`.
pub fn directed_dot_sign(vx: f64, vy: f64, dx: f64, dy: f64, wx: f64, wy: f64) -> Ordering {
    sign_of_products(&[(dx, wx, true), (dx, vx, false), (dy, wy, true), (dy, vy, false)])
}

/// Exact sign of `(q - p) . (r - p)`.
pub fn dot_sign(px: f64, py: f64, qx: f64, qy: f64, rx: f64, ry: f64) -> Ordering {
    sign_of_products(&[
        (qx, rx, true),
        (qx, px, false),
        (px, rx, false),
        (px, px, true),
        (qy, ry, true),
        (qy, py, false),
        (py, ry, false),
        (py, py, true),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_and_expansion_agree_on_easy_cases() {
        assert_eq!(orient2d(0.0, 0.0, 1.0, 0.0, 0.0, 1.0), Ordering::Greater);
        assert_eq!(orient2d(0.0, 0.0, 0.0, 1.0, 1.0, 0.0), Ordering::Less);
        assert_eq!(orient2d(0.0, 0.0, 1.0, 1.0, 2.0, 2.0), Ordering::Equal);
    }

    #[test]
    fn near_degenerate_points_are_classified_exactly() {
        // Points on the line y = x perturbed by one ulp.
        let a = 0.5f64;
        let b = 12.0f64;
        let c = 24.0f64;
        assert_eq!(orient2d(a, a, b, b, c, c), Ordering::Equal);
        let up = f64::from_bits(c.to_bits() + 1);
        assert_eq!(orient2d(a, a, b, b, c, up), Ordering::Greater);
        assert_eq!(orient2d(a, a, b, b, up, c), Ordering::Less);
    }

    #[test]
    fn classic_shewchuk_grid_is_consistent() {
        // Walk a tiny grid near (0.5, 0.5) against a long line; the naive
        // float determinant gets many of these wrong.
        let q = (12.0, 12.0);
        let r = (24.0, 24.0);
        for i in 0..64u64 {
            for j in 0..64u64 {
                let px = f64::from_bits(0.5f64.to_bits() + i);
                let py = f64::from_bits(0.5f64.to_bits() + j);
                let s = orient2d(px, py, q.0, q.1, r.0, r.1);
                let expected = py.partial_cmp(&px).unwrap();
                assert_eq!(s, expected, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn dot_sign_detects_right_angles() {
        assert_eq!(dot_sign(0.0, 0.0, 1.0, 0.0, 0.0, 5.0), Ordering::Equal);
        assert_eq!(dot_sign(0.0, 0.0, 1.0, 0.0, 0.1, 5.0), Ordering::Greater);
        assert_eq!(dot_sign(0.0, 0.0, 1.0, 0.0, -0.1, 5.0), Ordering::Less);
    }
}
