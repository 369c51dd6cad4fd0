//! Geometric graphs and finite-window structural estimators.

mod ends;
mod io;
mod measure;
mod path;
mod peel;
mod pendant;
mod spatial;
mod validate;

pub use ends::{
    classify_components, classify_in, escape_degree, Classification, ComponentReport, EndsClass, EndsCounts,
    EscapeCrossing, EscapeIndex,
};
pub use io::{read_graph, write_graph};
pub use measure::{chi_n, edge_intensity, grid_unit_boxes};
pub use path::{forward_path, forward_vertices, tree_path};
pub use peel::{peel, peel_n, peeling_depth, peeling_depths, PeelDepth, Peeled};
pub use pendant::{pendant_of_box, pendant_of_rect, pendant_tree};
pub use spatial::SegmentGrid;
pub use validate::{components, validate_forest, validate_planarity, ForestCheck};

use thiserror::Error;

use crate::geometry::{Coord, Point, Rect, Segment};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForestError {
    #[error("edge {edge} is a self-loop")]
    SelfLoop { edge: usize },
    #[error("edge {edge} refers to a vertex out of range")]
    IndexOutOfRange { edge: usize },
    #[error("vertices {0} and {1} share a position")]
    DuplicateVertex(usize, usize),
    #[error("oriented edges {0} and {1} form a directed 2-cycle")]
    DirectedTwoCycle(usize, usize),
    #[error("inner half-width must be positive and below the outer half-width")]
    InvalidWindow,
    #[error("vertex {0} is outside the inner box")]
    OutsideInnerBox(usize),
    #[error("no sample boxes given")]
    EmptySample,
    #[error("graph is not oriented")]
    NotOriented,
    #[error("vertex {0} has out-degree above one")]
    OutDegree(usize),
    #[error("forward path from vertex {0} revisits a vertex")]
    CycleDetected(usize),
    #[error("vertex {0} has no successor")]
    NoSuccessor(usize),
    #[error("no path between vertices {0} and {1}")]
    NoPath(usize, usize),
    #[error("graph contains a cycle")]
    NotAForest,
    #[error("graph file: {0}")]
    Format(String),
}

/// Vertex positions plus an edge list of `(tail, head)` index pairs.
///
/// When `oriented` is unset, the pair order carries no meaning and
/// duplicate undirected edges are tolerated; adjacency is always
/// deduplicated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricGraph {
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
    oriented: bool,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl GeometricGraph {
    pub fn new(vertices: Vec<Point>, edges: Vec<(usize, usize)>, oriented: bool) -> Result<Self, ForestError> {
        let n = vertices.len();
        for (i, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(ForestError::IndexOutOfRange { edge: i });
            }
            if a == b {
                return Err(ForestError::SelfLoop { edge: i });
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| vertices[i].cmp(&vertices[j]));
        if let Some(w) = order.windows(2).find(|w| vertices[w[0]] == vertices[w[1]]) {
            return Err(ForestError::DuplicateVertex(w[0].min(w[1]), w[0].max(w[1])));
        }
        if oriented {
            let mut seen = std::collections::HashMap::with_capacity(edges.len());
            for (i, &(a, b)) in edges.iter().enumerate() {
                if let Some(&j) = seen.get(&(b, a)) {
                    return Err(ForestError::DirectedTwoCycle(j, i));
                }
                seen.entry((a, b)).or_insert(i);
            }
        }
        let mut adjacency = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, i));
            adjacency[b].push((a, i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup_by_key(|(u, _)| *u);
        }
        Ok(GeometricGraph { vertices, edges, oriented, adjacency })
    }

    pub fn empty() -> Self {
        GeometricGraph { vertices: Vec::new(), edges: Vec::new(), oriented: false, adjacency: Vec::new() }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn oriented(&self) -> bool {
        self.oriented
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Distinct undirected neighbours with one representative edge each,
    /// sorted by neighbour index.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    /// Undirected degree after deduplication.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn segment(&self, e: usize) -> Segment {
        let (a, b) = self.edges[e];
        Segment::new(self.vertices[a].clone(), self.vertices[b].clone()).expect("no self-loops")
    }

    /// Successors of `v` in an oriented graph.
    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().filter(move |&&(_, e)| self.edges[e].0 == v).map(move |&(_, e)| e)
    }

    /// Vertex set of the undirected component containing `v`.
    pub fn component_of(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![v];
        seen[v] = true;
        let mut out = Vec::new();
        while let Some(x) = stack.pop() {
            out.push(x);
            for &(y, _) in self.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Nested analysis boxes `origin + [−k, k]²` inside `origin + [−L, L]²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowSpec {
    inner: Coord,
    outer: Coord,
    origin: Point,
}

impl WindowSpec {
    pub fn new(inner: Coord, outer: Coord, origin: Point) -> Result<WindowSpec, ForestError> {
        if inner <= Coord::ZERO || inner >= outer {
            return Err(ForestError::InvalidWindow);
        }
        Ok(WindowSpec { inner, outer, origin })
    }

    pub fn inner_half_width(&self) -> &Coord {
        &self.inner
    }

    pub fn outer_half_width(&self) -> &Coord {
        &self.outer
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn inner_rect(&self) -> Rect {
        Rect::centered(&self.origin, &self.inner)
    }

    pub fn outer_rect(&self) -> Rect {
        Rect::centered(&self.origin, &self.outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        let v = vec![Point::int(0, 0), Point::int(1, 0)];
        assert_eq!(GeometricGraph::new(v.clone(), vec![(0, 0)], false), Err(ForestError::SelfLoop { edge: 0 }));
        assert_eq!(GeometricGraph::new(v.clone(), vec![(0, 2)], false), Err(ForestError::IndexOutOfRange { edge: 0 }));
        assert_eq!(
            GeometricGraph::new(vec![Point::int(0, 0), Point::int(0, 0)], vec![], false),
            Err(ForestError::DuplicateVertex(0, 1))
        );
        assert_eq!(
            GeometricGraph::new(v.clone(), vec![(0, 1), (1, 0)], true),
            Err(ForestError::DirectedTwoCycle(0, 1))
        );
        let g = GeometricGraph::new(v, vec![(0, 1), (1, 0)], false).unwrap();
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
    }

    #[test]
    fn window_checks() {
        assert!(WindowSpec::new(Coord::int(2), Coord::int(2), Point::int(0, 0)).is_err());
        assert!(WindowSpec::new(Coord::ZERO, Coord::int(2), Point::int(0, 0)).is_err());
        let w = WindowSpec::new(Coord::int(1), Coord::int(3), Point::int(5, 5)).unwrap();
        assert_eq!(w.inner_rect(), Rect::new(Point::int(4, 4), Point::int(6, 6)).unwrap());
    }
}
