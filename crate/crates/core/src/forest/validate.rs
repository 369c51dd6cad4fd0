use petgraph::unionfind::UnionFind;

use crate::geometry::{segment_relation, SegmentRelation};

use super::{GeometricGraph, SegmentGrid};

/// Pairs of edges whose segments meet other than at a common extremity.
/// Copies of the same undirected edge are not reported.
pub fn validate_planarity(g: &GeometricGraph) -> Vec<(usize, usize)> {
    let (grid, segs) = SegmentGrid::from_graph(g);
    let key = |e: usize| {
        let (a, b) = g.edges()[e];
        (a.min(b), a.max(b))
    };
    grid.candidate_pairs()
        .into_iter()
        .filter(|&(i, j)| key(i) != key(j))
        .filter(|&(i, j)| segment_relation(&segs[i], &segs[j]) == SegmentRelation::ImproperIntersection)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForestCheck {
    Ok,
    /// Edge indices of one cycle of the undirected collapse, in cyclic order.
    Cycle(Vec<usize>),
}

/// Checks that the undirected collapse is acyclic.
pub fn validate_forest(g: &GeometricGraph) -> ForestCheck {
    let mut uf = UnionFind::<usize>::new(g.vertex_count());
    let mut tree_edges: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    let mut seen = std::collections::HashSet::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !seen.insert((a.min(b), a.max(b))) {
            continue;
        }
        if !uf.union(a, b) {
            // a and b were already joined: close the cycle through the tree path
            let mut cycle = tree_path_edges(&tree_edges, a, b);
            cycle.push(e);
            return ForestCheck::Cycle(cycle);
        }
        tree_edges[a].push((b, e));
        tree_edges[b].push((a, e));
    }
    ForestCheck::Ok
}

fn tree_path_edges(adj: &[Vec<(usize, usize)>], from: usize, to: usize) -> Vec<usize> {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; adj.len()];
    let mut seen = vec![false; adj.len()];
    let mut queue = std::collections::VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, e) in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = to;
    while let Some((p, e)) = parent[cur] {
        out.push(e);
        cur = p;
    }
    out.reverse();
    out
}

/// Component label per vertex (the smallest vertex index of its component).
pub fn components(g: &GeometricGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in g.edges() {
        uf.union(a, b);
    }
    let mut label = vec![usize::MAX; n];
    let mut out = vec![0; n];
    for v in 0..n {
        let r = uf.find(v);
        if label[r] == usize::MAX {
            label[r] = v;
        }
        out[v] = label[r];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn graph(pts: &[(i64, i64)], edges: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect(), edges.to_vec(), false).unwrap()
    }

    #[test]
    fn planarity_examples() {
        let g = graph(&[(0, 0), (1, 0), (0, 1), (1, 1)], &[(0, 1), (2, 3)]);
        assert!(validate_planarity(&g).is_empty());
        let x = graph(&[(0, 0), (2, 2), (0, 2), (2, 0)], &[(0, 1), (2, 3)]);
        assert_eq!(validate_planarity(&x), vec![(0, 1)]);
        let star = graph(&[(0, 0), (1, 0), (0, 1), (-1, -1)], &[(0, 1), (0, 2), (0, 3)]);
        assert!(validate_planarity(&star).is_empty());
        let doubled = graph(&[(0, 0), (1, 0)], &[(0, 1), (1, 0)]);
        assert!(validate_planarity(&doubled).is_empty());
        // a vertex in the relative interior of another edge
        let t = graph(&[(0, 0), (2, 0), (1, 0), (1, 1)], &[(0, 1), (2, 3)]);
        assert_eq!(validate_planarity(&t), vec![(0, 1)]);
    }

    #[test]
    fn forest_examples() {
        let tree = graph(&[(0, 0), (1, 0), (2, 0), (1, 1)], &[(0, 1), (1, 2), (1, 3)]);
        assert_eq!(validate_forest(&tree), ForestCheck::Ok);
        let tri = graph(&[(0, 0), (1, 0), (0, 1)], &[(0, 1), (1, 2), (2, 0)]);
        match validate_forest(&tri) {
            ForestCheck::Cycle(c) => {
                assert_eq!(c.len(), 3);
                let mut s = c.clone();
                s.sort();
                assert_eq!(s, vec![0, 1, 2]);
            }
            ForestCheck::Ok => panic!("triangle has a cycle"),
        }
        let two_paths = graph(&[(0, 0), (1, 0), (0, 5), (1, 5)], &[(0, 1), (2, 3)]);
        assert_eq!(validate_forest(&two_paths), ForestCheck::Ok);
        let doubled = graph(&[(0, 0), (1, 0)], &[(0, 1), (1, 0)]);
        assert_eq!(validate_forest(&doubled), ForestCheck::Ok);
        assert_eq!(components(&two_paths), vec![0, 0, 2, 2]);
    }
}
