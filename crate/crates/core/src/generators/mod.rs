//! Random and deterministic model generators.
//!
//! Every generator is a pure function of its spec and seed.

mod contour;
mod drainage;
mod fixtures;
mod ust;

pub use contour::{contour, g_phi, PhiSchedule};
pub use drainage::{drainage_grs, DrainageSpec, TieBreak};
pub use fixtures::{bump_family, fixture_corridor, fixture_window, graph_union, iso_points, tent_family};
pub use ust::{dual_tree, ust_wilson};

use thiserror::Error;

use crate::forest::ForestError;
use crate::geometry::Point;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("grid must be at least 2×2, got {0}×{1}")]
    InvalidGrid(usize, usize),
    #[error("contour distance must lie in (0, 1/2)")]
    EpsilonOutOfRange,
    #[error("vertex {0} is not a lattice point of the grid")]
    NotLattice(usize),
    #[error("edge {0} is not a unit lattice edge")]
    NotUnitEdge(usize),
    #[error("schedule must be strictly increasing and start at n = 4")]
    InvalidSchedule,
    #[error("open probability must lie in (0, 1]")]
    InvalidProbability,
    #[error("drainage box must be at least 1×2")]
    InvalidDrainageBox,
    #[error("union has {} improperly intersecting edge pairs", .0.len())]
    ImproperIntersection(Vec<(usize, usize)>),
    #[error("empty list of graphs")]
    EmptyUnion,
    #[error("corridor fixture needs L ≥ 8")]
    FixtureTooSmall,
    #[error(transparent)]
    Graph(#[from] ForestError),
}

/// How the boundary of a grid is treated by the spanning-tree sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    /// Uniform spanning tree of the grid graph itself.
    Free,
    /// Uniform spanning forest rooted at the boundary, closed up by the
    /// boundary cycle minus one uniformly chosen boundary edge. Its dual on
    /// the interior faces is a spanning tree.
    #[default]
    Wired,
}

/// An `m × h` block of lattice points `origin + {0..m} × {0..h}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    width: usize,
    height: usize,
    origin: Point,
    boundary: BoundaryCondition,
}

impl GridSpec {
    pub fn new(width: usize, height: usize) -> Result<GridSpec, GeneratorError> {
        GridSpec::with_origin(width, height, Point::int(0, 0))
    }

    pub fn with_origin(width: usize, height: usize, origin: Point) -> Result<GridSpec, GeneratorError> {
        if width < 2 || height < 2 {
            return Err(GeneratorError::InvalidGrid(width, height));
        }
        Ok(GridSpec { width, height, origin, boundary: BoundaryCondition::default() })
    }

    pub fn boundary(mut self, boundary: BoundaryCondition) -> GridSpec {
        self.boundary = boundary;
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn boundary_condition(&self) -> BoundaryCondition {
        self.boundary
    }

    pub fn index(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }

    pub fn point(&self, x: usize, y: usize) -> Point {
        self.origin.offset(&crate::geometry::Coord::int(x as i64), &crate::geometry::Coord::int(y as i64))
    }

    /// The lattice point nearest the centre of the grid.
    pub fn center(&self) -> (usize, usize) {
        (self.width / 2, self.height / 2)
    }
}
