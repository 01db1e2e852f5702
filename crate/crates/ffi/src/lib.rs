//! C ABI for the pairvis solvers.
//!
//! Polygons and query structures are opaque handles created and freed by
//! this library. Every fallible call returns a [`PvStatus`]; after a failure
//! `pv_last_error_message` describes it. Errors are tracked per thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pairvis::optimize::Objective;
use pairvis::query::QueryStructure;
use pairvis::solve::solve_in;
use pairvis::{Error, Point, SimplePolygon, Triangulation};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidPolygon = 2,
    OutsidePolygon = 3,
    InvalidParameter = 4,
    VersionMismatch = 5,
    Io = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PvObjective {
    MinMax = 0,
    MinSum = 1,
    /// `max(p1 * d_s, (1 - p1) * d_t)`.
    WeightedMinMax = 2,
    /// `max(p1 + d_s, p2 + d_t)`.
    OffsetMinMax = 3,
}

/// A solution. Points are `{x, y}`; the chord is `{ax, ay, bx, by}`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PvSolution {
    pub value: f64,
    pub s_star: [f64; 2],
    pub t_star: [f64; 2],
    /// 0 when `s` sees `t`; `chord` and `pivot_index` are then unset.
    pub has_chord: i32,
    pub chord: [f64; 4],
    /// Position of the pivot in the shortest path, -1 without a chord.
    pub pivot_index: i64,
}

/// A validated polygon with its triangulation.
pub struct PvPolygon {
    poly: SimplePolygon,
    tri: Triangulation,
}

/// A preprocessed polygon answering min-max queries.
pub struct PvQuery {
    inner: QueryStructure,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> PvStatus {
    match err {
        Error::TooFewVertices(_)
        | Error::NonFinite(_)
        | Error::DuplicateVertex(..)
        | Error::NotSimple(..)
        | Error::ZeroArea => PvStatus::InvalidPolygon,
        Error::OutsidePolygon(_) => PvStatus::OutsidePolygon,
        Error::DegenerateInput(_) | Error::EmptyInterval(..) | Error::InvalidObjective(_) | Error::InvalidInput(_) => {
            PvStatus::InvalidParameter
        }
        Error::VersionMismatch { .. } => PvStatus::VersionMismatch,
        Error::Io(_) | Error::Json(_) => PvStatus::Io,
        Error::Internal(_) => PvStatus::Internal,
    }
}

/// Runs `f`, recording its error and turning panics into `Internal`.
fn guard(f: impl FnOnce() -> Result<(), PvStatus>) -> PvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PvStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            PvStatus::Internal
        }
    }
}

fn fail(err: Error) -> PvStatus {
    set_error(err.to_string());
    status_of(&err)
}

fn null() -> PvStatus {
    set_error("null pointer argument".into());
    PvStatus::NullPointer
}

fn objective(kind: u32, p1: f64, p2: f64) -> Result<Objective, PvStatus> {
    Ok(match kind {
        k if k == PvObjective::MinMax as u32 => Objective::MinMax,
        k if k == PvObjective::MinSum as u32 => Objective::MinSum,
        k if k == PvObjective::WeightedMinMax as u32 => Objective::WeightedMinMax { lambda: p1 },
        k if k == PvObjective::OffsetMinMax as u32 => Objective::OffsetMinMax { alpha: p1, beta: p2 },
        _ => {
            set_error(format!("unknown objective {kind}"));
            return Err(PvStatus::InvalidParameter);
        }
    })
}

unsafe fn path_arg<'a>(path: *const c_char) -> Result<&'a str, PvStatus> {
    if path.is_null() {
        return Err(null());
    }
    CStr::from_ptr(path).to_str().map_err(|_| {
        set_error("path is not valid UTF-8".into());
        PvStatus::InvalidParameter
    })
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pv_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn pv_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a polygon from `n` vertices stored as `x0, y0, x1, y1, ...`.
///
/// # Safety
/// `xy` must point to `2 * n` doubles and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn pv_polygon_new(xy: *const f64, n: usize, out: *mut *mut PvPolygon) -> PvStatus {
    guard(|| {
        if xy.is_null() || out.is_null() {
            return Err(null());
        }
        let coords = std::slice::from_raw_parts(xy, 2 * n);
        let pts = coords.chunks_exact(2).map(|c| Point::new(c[0], c[1])).collect();
        let poly = SimplePolygon::new(pts).map_err(fail)?;
        let tri = Triangulation::new(&poly).map_err(fail)?;
        *out = Box::into_raw(Box::new(PvPolygon { poly, tri }));
        Ok(())
    })
}

/// Number of vertices.
///
/// # Safety
/// `poly` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pv_polygon_len(poly: *const PvPolygon) -> usize {
    poly.as_ref().map_or(0, |p| p.poly.len())
}

/// # Safety
/// `poly` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pv_polygon_free(poly: *mut PvPolygon) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

fn solution(value: f64, s_star: Point, t_star: Point, chord: Option<(Point, Point)>, pivot_index: Option<usize>) -> PvSolution {
    let (has_chord, chord) = match chord {
        Some((a, b)) => (1, [a.x, a.y, b.x, b.y]),
        None => (0, [0.0; 4]),
    };
    PvSolution {
        value,
        s_star: [s_star.x, s_star.y],
        t_star: [t_star.x, t_star.y],
        has_chord,
        chord,
        pivot_index: pivot_index.map_or(-1, |i| i as i64),
    }
}

/// Solves one instance. `kind` is a `PvObjective` value; `p1` and `p2`
/// parametrize the weighted and offset objectives and are ignored
/// otherwise.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pv_solve(
    poly: *const PvPolygon,
    sx: f64,
    sy: f64,
    tx: f64,
    ty: f64,
    kind: u32,
    p1: f64,
    p2: f64,
    out: *mut PvSolution,
) -> PvStatus {
    guard(|| {
        let (Some(p), false) = (poly.as_ref(), out.is_null()) else { return Err(null()) };
        let r = solve_in(&p.poly, &p.tri, Point::new(sx, sy), Point::new(tx, ty), objective(kind, p1, p2)?).map_err(fail)?;
        *out = solution(r.value, r.s_star, r.t_star, r.chord.map(|c| (c.a, c.b)), r.pivot_index);
        Ok(())
    })
}

/// Preprocesses a polygon for min-max queries. The polygon handle stays
/// owned by the caller.
///
/// # Safety
/// `poly` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pv_query_build(poly: *const PvPolygon, out: *mut *mut PvQuery) -> PvStatus {
    guard(|| {
        let (Some(p), false) = (poly.as_ref(), out.is_null()) else { return Err(null()) };
        let inner = QueryStructure::build(p.poly.clone()).map_err(fail)?;
        *out = Box::into_raw(Box::new(PvQuery { inner }));
        Ok(())
    })
}

/// # Safety
/// `q` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn pv_query_save(q: *const PvQuery, path: *const c_char) -> PvStatus {
    guard(|| {
        let Some(q) = q.as_ref() else { return Err(null()) };
        q.inner.save(path_arg(path)?).map_err(fail)
    })
}

/// Loads a saved structure; a different format version is
/// `VersionMismatch`.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pv_query_load(path: *const c_char, out: *mut *mut PvQuery) -> PvStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = QueryStructure::load(path_arg(path)?).map_err(fail)?;
        *out = Box::into_raw(Box::new(PvQuery { inner }));
        Ok(())
    })
}

/// Min-max answer for one pair.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pv_query_minmax(q: *const PvQuery, sx: f64, sy: f64, tx: f64, ty: f64, out: *mut PvSolution) -> PvStatus {
    guard(|| {
        let (Some(q), false) = (q.as_ref(), out.is_null()) else { return Err(null()) };
        let a = q.inner.query_minmax(Point::new(sx, sy), Point::new(tx, ty)).map_err(fail)?;
        *out = solution(a.value, a.s_star, a.t_star, a.chord.map(|c| (c.a, c.b)), a.pivot_index);
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pv_query_free(q: *mut PvQuery) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}
