//! Doors, their topological lines and the betweenness order.

mod doors;
mod order;
mod trace;

pub use doors::{
    build_gamma, detect_doors, door_candidates, door_family, scan_doors, Door, DoorLine, DoorScan, Rejection,
};
pub use order::{
    jordan_from_pair, linear_order, order_from, portion_difference, AxiomReport, Betweenness, TopoLineFamily,
};
pub use trace::{
    analyze_corridor, check_trace_convex, door_trace, extreme_points, trace_of_segments, trace_touches_extremes,
    CorridorAnalysis, CorridorReport, DoorSummary, TraceSummary,
};

use thiserror::Error;

use crate::forest::ForestError;
use crate::geometry::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorridorError {
    #[error("door scales need 0 < k < l")]
    InvalidScales,
    #[error("difference is not a portion")]
    NotAPortion,
    #[error("lines {0} and {1} differ by more than a portion")]
    PairNotAPortion(usize, usize),
    #[error("differing arcs do not share their endpoints")]
    ArcsDoNotClose,
    #[error("germs and door segment do not splice into a simple line")]
    SpliceNotSimple,
    #[error("betweenness needs three distinct lines")]
    NotDistinct,
    #[error("J({0}, {1}) is neither inside nor outside J({0}, {2})")]
    MixedClassification(usize, usize, usize),
    #[error("betweenness is not induced by a linear order")]
    OrderInconsistent,
    #[error("empty family")]
    EmptyFamily,
    #[error("component meets the line of door {0} off its door segment")]
    TraceOffDoor(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Forest(#[from] ForestError),
}
