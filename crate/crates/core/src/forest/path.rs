use std::collections::VecDeque;

use crate::geometry::Polyline;

use super::{ForestError, GeometricGraph};

/// Vertex sequence obtained by following successors from `v` until a vertex
/// without successor.
pub fn forward_vertices(g: &GeometricGraph, v: usize) -> Result<Vec<usize>, ForestError> {
    if !g.oriented() {
        return Err(ForestError::NotOriented);
    }
    let mut seen = vec![false; g.vertex_count()];
    let mut out = vec![v];
    seen[v] = true;
    let mut cur = v;
    loop {
        let mut succ = g.out_edges(cur);
        let Some(e) = succ.next() else { break };
        if succ.next().is_some() {
            return Err(ForestError::OutDegree(cur));
        }
        let next = g.edges()[e].1;
        if seen[next] {
            return Err(ForestError::CycleDetected(v));
        }
        seen[next] = true;
        out.push(next);
        cur = next;
    }
    Ok(out)
}

/// The forward path from `v` as a polyline.
pub fn forward_path(g: &GeometricGraph, v: usize) -> Result<Polyline, ForestError> {
    let vs = forward_vertices(g, v)?;
    if vs.len() < 2 {
        return Err(ForestError::NoSuccessor(v));
    }
    Ok(Polyline::new(vs.iter().map(|&i| g.vertex(i).clone()).collect()).expect("distinct vertex positions"))
}

/// Shortest path of vertex indices from `from` to `to` in the undirected
/// collapse (the unique path in a forest).
pub fn tree_path(g: &GeometricGraph, from: usize, to: usize) -> Result<Vec<usize>, ForestError> {
    let mut parent = vec![usize::MAX; g.vertex_count()];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut out = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                out.push(cur);
            }
            out.reverse();
            return Ok(out);
        }
        for &(y, _) in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    Err(ForestError::NoPath(from, to))
}
