use std::collections::HashMap;

use crate::geometry::{Rect, Segment};

use super::GeometricGraph;

/// Uniform hash grid with unit cells over segment bounding boxes.
#[derive(Debug, Clone)]
pub struct SegmentGrid {
    cells: HashMap<(i64, i64), Vec<usize>>,
}

fn cell_range(min_x: &crate::geometry::Coord, max_x: &crate::geometry::Coord) -> std::ops::RangeInclusive<i64> {
    let lo = min_x.floor_i64().expect("coordinate fits in i64");
    let hi = max_x.floor_i64().expect("coordinate fits in i64");
    lo..=hi
}

impl SegmentGrid {
    pub fn new<'a>(segments: impl IntoIterator<Item = &'a Segment>) -> SegmentGrid {
        let mut cells: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for (i, s) in segments.into_iter().enumerate() {
            for cx in cell_range(s.min_x(), s.max_x()) {
                for cy in cell_range(s.min_y(), s.max_y()) {
                    cells.entry((cx, cy)).or_default().push(i);
                }
            }
        }
        SegmentGrid { cells }
    }

    pub fn from_graph(g: &GeometricGraph) -> (SegmentGrid, Vec<Segment>) {
        let segs: Vec<Segment> = (0..g.edge_count()).map(|e| g.segment(e)).collect();
        (SegmentGrid::new(&segs), segs)
    }

    /// Indices of segments whose bounding box shares a cell with `r`,
    /// sorted and deduplicated. A superset of the segments meeting `r`.
    pub fn candidates(&self, r: &Rect) -> Vec<usize> {
        let mut out = Vec::new();
        for cx in cell_range(&r.min.x, &r.max.x) {
            for cy in cell_range(&r.min.y, &r.max.y) {
                if let Some(v) = self.cells.get(&(cx, cy)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// All index pairs `(i, j)` with `i < j` sharing a cell, sorted.
    pub fn candidate_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for v in self.cells.values() {
            for (a, &i) in v.iter().enumerate() {
                for &j in &v[a + 1..] {
                    pairs.push((i.min(j), i.max(j)));
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }
}
