use thiserror::Error;

use crate::geom::Point;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("polygon vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("polygon is not simple: edges {0} and {1} intersect")]
    NotSimple(usize, usize),
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("point {0} lies outside the polygon")]
    OutsidePolygon(Point),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("empty parameter interval [{0}, {1}]")]
    EmptyInterval(f64, f64),
    #[error("invalid objective parameter: {0}")]
    InvalidObjective(String),
    #[error("index format version {found} is not supported (expected {expected})")]
    VersionMismatch { found: u32, expected: u32 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
