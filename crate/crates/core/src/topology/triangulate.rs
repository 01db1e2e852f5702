//! Triangulation by y-monotone decomposition followed by the stack-based
//! monotone triangulation. O(n log n) for the sort plus O(n * s) for the
//! sweep status, where `s` is the number of edges crossing the sweep line.

use std::cmp::Ordering;

use crate::geom::{orientation, Orientation, Point};

use super::polygon::SimplePolygon;

/// `p` comes before `q` in sweep order (higher y first, then smaller x).
fn above(p: Point, q: Point) -> bool {
    p.y > q.y || (p.y == q.y && p.x < q.x)
}

fn sweep_cmp(p: Point, q: Point) -> Ordering {
    if p == q {
        Ordering::Equal
    } else if above(p, q) {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Start,
    Split,
    End,
    Merge,
    Regular,
}

fn classify(poly: &SimplePolygon, i: usize) -> Kind {
    let v = poly.vertex(i);
    let prev = poly.vertex(poly.prev(i));
    let next = poly.vertex(poly.next(i));
    let convex = orientation(prev, v, next) == Orientation::CounterClockwise;
    match (above(v, prev), above(v, next)) {
        (true, true) if convex => Kind::Start,
        (true, true) => Kind::Split,
        (false, false) if convex => Kind::End,
        (false, false) => Kind::Merge,
        _ => Kind::Regular,
    }
}

/// Edge `e` (from `e` to `e + 1`) is stored with its upper endpoint first.
fn edge_points(poly: &SimplePolygon, e: usize) -> (Point, Point) {
    let a = poly.vertex(e);
    let b = poly.vertex(poly.next(e));
    if above(a, b) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Sweep status: edges crossing the sweep line, sorted west to east, each
/// with its helper vertex. Positions are found by binary search on the
/// exact "edge lies west of v" predicate, which holds for a prefix.
struct Status {
    entries: Vec<(usize, usize)>,
}

impl Status {
    fn west_count(&self, poly: &SimplePolygon, v: Point) -> usize {
        self.entries.partition_point(|&(e, _)| {
            let (a, b) = edge_points(poly, e);
            // Downward edge: v on its left means v is east of it.
            orientation(a, b, v) == Orientation::CounterClockwise
        })
    }

    /// Slot of the edge immediately west of `v`.
    fn left_of(&self, poly: &SimplePolygon, v: Point) -> Option<usize> {
        self.west_count(poly, v).checked_sub(1)
    }

    fn insert(&mut self, poly: &SimplePolygon, e: usize, helper: usize) {
        let at = self.west_count(poly, poly.vertex(e));
        self.entries.insert(at, (e, helper));
    }

    /// Slot of edge `e`, which ends at the current event vertex `v`.
    fn find(&self, poly: &SimplePolygon, e: usize, v: Point) -> Option<usize> {
        let at = self.west_count(poly, v);
        if self.entries.get(at).map(|x| x.0) == Some(e) {
            return Some(at);
        }
        self.entries.iter().position(|x| x.0 == e)
    }
}

/// Diagonals splitting the polygon into y-monotone pieces.
fn monotone_diagonals(poly: &SimplePolygon) -> Vec<(usize, usize)> {
    let n = poly.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| sweep_cmp(poly.vertex(a), poly.vertex(b)));
    let kinds: Vec<Kind> = (0..n).map(|i| classify(poly, i)).collect();

    let mut status = Status { entries: Vec::new() };
    let mut diagonals = Vec::new();
    let connect_merge_helper = |status: &Status, slot: usize, i: usize, diagonals: &mut Vec<(usize, usize)>| {
        let h = status.entries[slot].1;
        if kinds[h] == Kind::Merge {
            diagonals.push((i, h));
        }
    };

    for &i in &order {
        let v = poly.vertex(i);
        let prev_edge = poly.prev(i);
        match kinds[i] {
            Kind::Start => status.insert(poly, i, i),
            Kind::End => {
                if let Some(slot) = status.find(poly, prev_edge, v) {
                    connect_merge_helper(&status, slot, i, &mut diagonals);
                    status.entries.remove(slot);
                }
            }
            Kind::Split => {
                if let Some(slot) = status.left_of(poly, v) {
                    diagonals.push((i, status.entries[slot].1));
                    status.entries[slot].1 = i;
                }
                status.insert(poly, i, i);
            }
            Kind::Merge => {
                if let Some(slot) = status.find(poly, prev_edge, v) {
                    connect_merge_helper(&status, slot, i, &mut diagonals);
                    status.entries.remove(slot);
                }
                if let Some(slot) = status.left_of(poly, v) {
                    connect_merge_helper(&status, slot, i, &mut diagonals);
                    status.entries[slot].1 = i;
                }
            }
            Kind::Regular => {
                // Interior lies east of v when the boundary descends through it.
                if above(poly.vertex(poly.prev(i)), v) {
                    if let Some(slot) = status.find(poly, prev_edge, v) {
                        connect_merge_helper(&status, slot, i, &mut diagonals);
                        status.entries.remove(slot);
                    }
                    status.insert(poly, i, i);
                } else if let Some(slot) = status.left_of(poly, v) {
                    connect_merge_helper(&status, slot, i, &mut diagonals);
                    status.entries[slot].1 = i;
                }
            }
        }
    }
    diagonals
}

/// Exact counter-clockwise angular order of directions around `c`,
/// starting from the positive x axis.
fn angle_cmp(c: Point, a: Point, b: Point) -> Ordering {
    let half = |p: Point| -> u8 {
        if p.y > c.y || (p.y == c.y && p.x > c.x) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    match orientation(c, a, b) {
        Orientation::CounterClockwise => Ordering::Less,
        Orientation::Clockwise => Ordering::Greater,
        Orientation::Collinear => Ordering::Equal,
    }
}

/// Splits the polygon along `diagonals` into faces, each a CCW list of
/// vertex indices.
fn faces(poly: &SimplePolygon, diagonals: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let n = poly.len();
    let mut adj: Vec<Vec<usize>> = (0..n).map(|i| vec![poly.prev(i), poly.next(i)]).collect();
    for &(a, b) in diagonals {
        adj[a].push(b);
        adj[b].push(a);
    }
    for (i, list) in adj.iter_mut().enumerate() {
        let c = poly.vertex(i);
        list.sort_by(|&a, &b| angle_cmp(c, poly.vertex(a), poly.vertex(b)));
        list.dedup();
    }
    // Half-edges are (from, to); visited per (vertex, slot in adj).
    let mut used: Vec<Vec<bool>> = adj.iter().map(|l| vec![false; l.len()]).collect();
    let mut out = Vec::new();
    // Polygon edges i -> i+1 bound interior faces on their left.
    let mut starts: Vec<(usize, usize)> = (0..n).map(|i| (i, poly.next(i))).collect();
    for &(a, b) in diagonals {
        starts.push((a, b));
        starts.push((b, a));
    }
    for (u0, w0) in starts {
        let slot = adj[u0].iter().position(|&x| x == w0).unwrap();
        if used[u0][slot] {
            continue;
        }
        let mut face = Vec::new();
        let (mut u, mut w) = (u0, w0);
        loop {
            let s = adj[u].iter().position(|&x| x == w).unwrap();
            if used[u][s] {
                break;
            }
            used[u][s] = true;
            face.push(u);
            // Next neighbour of w clockwise from u.
            let list = &adj[w];
            let k = list.iter().position(|&x| x == u).unwrap();
            let next = list[(k + list.len() - 1) % list.len()];
            u = w;
            w = next;
        }
        out.push(face);
    }
    out
}

/// Triangulates one y-monotone face (CCW vertex indices), pushing CCW
/// triangles into `out`.
fn triangulate_monotone(poly: &SimplePolygon, face: &[usize], out: &mut Vec<[usize; 3]>) {
    let m = face.len();
    if m == 3 {
        out.push([face[0], face[1], face[2]]);
        return;
    }
    let pt = |i: usize| poly.vertex(i);
    let top = (0..m).min_by(|&a, &b| sweep_cmp(pt(face[a]), pt(face[b]))).unwrap();
    let bottom = (0..m).max_by(|&a, &b| sweep_cmp(pt(face[a]), pt(face[b]))).unwrap();
    // Walking CCW from the top descends the left chain.
    let mut on_left = vec![false; m];
    let mut k = top;
    while k != bottom {
        on_left[k] = true;
        k = (k + 1) % m;
    }
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| sweep_cmp(pt(face[a]), pt(face[b])));

    let emit = |a: usize, b: usize, c: usize, out: &mut Vec<[usize; 3]>| {
        let (pa, pb, pc) = (pt(a), pt(b), pt(c));
        match orientation(pa, pb, pc) {
            Orientation::CounterClockwise => out.push([a, b, c]),
            Orientation::Clockwise => out.push([a, c, b]),
            Orientation::Collinear => out.push([a, b, c]),
        }
    };

    let mut stack: Vec<usize> = vec![order[0], order[1]];
    for &j in &order[2..m - 1] {
        let top_s = *stack.last().unwrap();
        if on_left[j] != on_left[top_s] {
            for w in stack.windows(2) {
                emit(face[j], face[w[0]], face[w[1]], out);
            }
            stack = vec![top_s, j];
        } else {
            let mut last = stack.pop().unwrap();
            while let Some(&t) = stack.last() {
                let o = orientation(pt(face[t]), pt(face[j]), pt(face[last]));
                let inside = if on_left[j] {
                    o == Orientation::Clockwise
                } else {
                    o == Orientation::CounterClockwise
                };
                if !inside {
                    break;
                }
                emit(face[j], face[last], face[t], out);
                last = stack.pop().unwrap();
            }
            stack.push(last);
            stack.push(j);
        }
    }
    let j = order[m - 1];
    for w in stack.windows(2) {
        emit(face[j], face[w[0]], face[w[1]], out);
    }
}

/// CCW triangles (vertex index triples) partitioning the polygon.
pub(crate) fn triangulate_polygon(poly: &SimplePolygon) -> Vec<[usize; 3]> {
    let diagonals = monotone_diagonals(poly);
    let mut tris = Vec::with_capacity(poly.len() - 2);
    for face in faces(poly, &diagonals) {
        triangulate_monotone(poly, &face, &mut tris);
    }
    tris
}
