//! Quickest pair-visibility in simple polygons.
//!
//! Two points `s` and `t` inside a simple polygon want to move so that they
//! see each other. The min-max solver minimizes the larger of the two
//! travel distances, the min-sum solver their sum. Both sweep a line around
//! the reflex vertices of the shortest path between the points.

pub mod cli;
pub mod error;
pub mod generate;
pub mod geodesic;
pub mod geom;
pub mod io;
pub mod optimize;
pub mod query;
pub mod solve;
pub mod sweep;
pub mod oracle;
pub mod topology;

pub use error::{Error, Result};
pub use geom::{Point, Segment};
pub use topology::{SimplePolygon, Triangulation};
