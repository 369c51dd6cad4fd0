//! Exact planar geometry.
//!
//! Every predicate here is decided in exact rational arithmetic; there is no
//! tolerance anywhere in the module.

mod coord;
mod polygon;
mod polyline;
mod primitives;
mod topo_line;

pub use coord::{Coord, ParseCoordError};
pub use polygon::{curve_vs_polygon, point_in_polygon, segments_vs_polygon, CurveRegion, JordanPolygon, Region};
pub use polyline::{path_first_hit_last_exit, PathPosition, Polyline};
pub use primitives::{orient, segment_relation, Point, Rect, Segment, SegmentRelation};
pub use topo_line::{Direction, ExtParam, PLTopoLine, Piece};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("segment endpoints coincide at {0:?}")]
    DegenerateSegment(Point),
    #[error("need at least {needed} vertices, got {got}")]
    TooFewVertices { needed: usize, got: usize },
    #[error("repeated consecutive vertex {0:?}")]
    RepeatedVertex(Point),
    #[error("curve is not simple")]
    NotSimple,
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("rectangle has min > max")]
    InvertedRect,
    #[error("direction vector is zero")]
    ZeroDirection,
}
