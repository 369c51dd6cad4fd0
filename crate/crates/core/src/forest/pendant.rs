use std::collections::BTreeSet;

use crate::geometry::Rect;

use super::ends::branch_escapes;
use super::{EscapeIndex, GeometricGraph, SegmentGrid, WindowSpec};

/// Windowed pendant tree: `v` together with every branch of `G − v` that
/// never reaches an edge meeting the outer boundary.
pub fn pendant_tree(g: &GeometricGraph, v: usize, w: &WindowSpec) -> BTreeSet<usize> {
    let outer = w.outer_rect();
    let flags: Vec<bool> = (0..g.edge_count()).map(|e| outer.boundary_meets(&g.segment(e))).collect();
    let mut out = BTreeSet::from([v]);
    for &(u, _) in g.neighbors(v) {
        if !branch_escapes(g, &flags, v, u) {
            out.extend(branch(g, v, u));
        }
    }
    out
}

fn branch(g: &GeometricGraph, v: usize, u: usize) -> Vec<usize> {
    let mut seen = std::collections::HashSet::from([v, u]);
    let mut stack = vec![u];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        for &(y, _) in g.neighbors(x) {
            if seen.insert(y) {
                stack.push(y);
            }
        }
    }
    out
}

/// Vertices whose pendant trees are collected for a box: heads of the edges
/// meeting it, or both endpoints for unoriented graphs.
fn box_heads(g: &GeometricGraph, k: &Rect) -> BTreeSet<usize> {
    let (grid, segs) = SegmentGrid::from_graph(g);
    let mut heads = BTreeSet::new();
    for e in grid.candidates(k) {
        if k.meets(&segs[e]) {
            let (a, b) = g.edges()[e];
            heads.insert(b);
            if !g.oriented() {
                heads.insert(a);
            }
        }
    }
    heads
}

/// Union of [`pendant_tree`] over the heads of edges meeting `k`.
pub fn pendant_of_box(g: &GeometricGraph, k: &Rect, w: &WindowSpec) -> BTreeSet<usize> {
    pendant_of_rect(g, k, &w.outer_rect())
}

/// As [`pendant_of_box`] with an explicit outer box. Uses the rooted escape
/// index when the graph is a forest.
pub fn pendant_of_rect(g: &GeometricGraph, k: &Rect, outer: &Rect) -> BTreeSet<usize> {
    let heads = box_heads(g, k);
    let mut out = BTreeSet::new();
    match EscapeIndex::new(g, outer) {
        Ok(idx) => {
            for v in heads {
                out.insert(v);
                for u in idx.branches(v).1 {
                    out.extend(idx.branch_vertices(v, u));
                }
            }
        }
        Err(_) => {
            let flags: Vec<bool> = (0..g.edge_count()).map(|e| outer.boundary_meets(&g.segment(e))).collect();
            for v in heads {
                out.insert(v);
                for &(u, _) in g.neighbors(v) {
                    if !branch_escapes(g, &flags, v, u) {
                        out.extend(branch(g, v, u));
                    }
                }
            }
        }
    }
    out
}
