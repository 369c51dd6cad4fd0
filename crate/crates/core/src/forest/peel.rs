use super::GeometricGraph;

/// A peeled graph together with the index of each surviving vertex in the
/// original graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peeled {
    pub graph: GeometricGraph,
    pub source_index: Vec<usize>,
}

fn restrict(g: &GeometricGraph, keep: &[bool]) -> Peeled {
    let mut new_index = vec![usize::MAX; g.vertex_count()];
    let mut source_index = Vec::new();
    let mut vertices = Vec::new();
    for v in 0..g.vertex_count() {
        if keep[v] {
            new_index[v] = source_index.len();
            source_index.push(v);
            vertices.push(g.vertex(v).clone());
        }
    }
    let edges =
        g.edges().iter().filter(|&&(a, b)| keep[a] && keep[b]).map(|&(a, b)| (new_index[a], new_index[b])).collect();
    let graph = GeometricGraph::new(vertices, edges, g.oriented()).expect("subgraph of a valid graph");
    Peeled { graph, source_index }
}

/// Removes every leaf (undirected degree one) at once.
pub fn peel(g: &GeometricGraph) -> Peeled {
    let keep: Vec<bool> = (0..g.vertex_count()).map(|v| g.degree(v) != 1).collect();
    restrict(g, &keep)
}

/// `n` successive peelings, with indices referring to `g`.
pub fn peel_n(g: &GeometricGraph, n: usize) -> Peeled {
    let depths = peeling_depths(g, n);
    let keep: Vec<bool> = depths.iter().map(|d| *d == PeelDepth::NotRemoved).collect();
    restrict(g, &keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeelDepth {
    Removed(usize),
    NotRemoved,
}

/// Peeling depth of every vertex, up to `max_iter` rounds.
pub fn peeling_depths(g: &GeometricGraph, max_iter: usize) -> Vec<PeelDepth> {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut depth = vec![PeelDepth::NotRemoved; n];
    let mut round: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut r = 1;
    while !round.is_empty() && r <= max_iter {
        for &v in &round {
            depth[v] = PeelDepth::Removed(r);
        }
        let mut next = Vec::new();
        for &v in &round {
            for &(u, _) in g.neighbors(v) {
                if depth[u] == PeelDepth::NotRemoved {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
        }
        next.retain(|&u| degree[u] == 1);
        next.sort_unstable();
        next.dedup();
        round = next;
        r += 1;
    }
    depth
}

pub fn peeling_depth(g: &GeometricGraph, v: usize, max_iter: usize) -> PeelDepth {
    peeling_depths(g, max_iter)[v]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn graph(pts: &[(i64, i64)], edges: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect(), edges.to_vec(), false).unwrap()
    }

    fn path(n: i64) -> GeometricGraph {
        let pts: Vec<(i64, i64)> = (0..n).map(|x| (x, 0)).collect();
        let edges: Vec<(usize, usize)> = (0..n as usize - 1).map(|i| (i, i + 1)).collect();
        graph(&pts, &edges)
    }

    #[test]
    fn peel_examples() {
        let p = peel(&path(3));
        assert_eq!(p.source_index, vec![1]);
        assert_eq!(p.graph.edge_count(), 0);
        let star = graph(&[(0, 0), (1, 0), (0, 1), (-1, 0), (0, -1)], &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        assert_eq!(peel(&star).source_index, vec![0]);
        let iso = graph(&[(0, 0)], &[]);
        assert_eq!(peel(&iso).source_index, vec![0]);
    }

    #[test]
    fn depth_examples() {
        let p = path(3);
        assert_eq!(peeling_depth(&p, 0, 10), PeelDepth::Removed(1));
        // the middle vertex is isolated after one round and is never a leaf
        assert_eq!(peeling_depth(&p, 1, 10), PeelDepth::NotRemoved);
        let long = path(41);
        assert_eq!(peeling_depth(&long, 20, 5), PeelDepth::NotRemoved);
        assert_eq!(peeling_depth(&long, 3, 50), PeelDepth::Removed(4));
        // both ends of an even path meet in a single edge
        assert_eq!(
            peeling_depths(&path(4), 10),
            vec![PeelDepth::Removed(1), PeelDepth::Removed(2), PeelDepth::Removed(2), PeelDepth::Removed(1)]
        );
    }

    #[test]
    fn depths_agree_with_repeated_peel() {
        let g = graph(
            &[(0, 0), (1, 0), (2, 0), (3, 0), (1, 1), (1, 2), (2, 2), (3, 1)],
            &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (5, 6), (3, 7)],
        );
        let depths = peeling_depths(&g, 100);
        let mut current = Peeled { graph: g.clone(), source_index: (0..g.vertex_count()).collect() };
        for r in 1..6 {
            let next = peel(&current.graph);
            let survivors: Vec<usize> = next.source_index.iter().map(|&i| current.source_index[i]).collect();
            for &v in &current.source_index {
                if !survivors.contains(&v) {
                    assert_eq!(depths[v], PeelDepth::Removed(r));
                }
            }
            assert_eq!(peel_n(&g, r).source_index, survivors);
            current = Peeled { graph: next.graph, source_index: survivors };
        }
    }

    #[test]
    fn leafless_graphs_are_fixed_points() {
        let square = graph(&[(0, 0), (1, 0), (1, 1), (0, 1)], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let once = peel(&square);
        assert_eq!(once.graph, square);
        assert_eq!(peel(&once.graph).graph, once.graph);
    }
}
