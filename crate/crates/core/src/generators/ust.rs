use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forest::GeometricGraph;
use crate::geometry::{Coord, Point};

use super::{BoundaryCondition, GeneratorError, GridSpec};

fn grid_neighbors(spec: &GridSpec, v: usize, out: &mut Vec<usize>) {
    out.clear();
    let (m, h) = (spec.width(), spec.height());
    let (x, y) = (v % m, v / m);
    if x > 0 {
        out.push(v - 1);
    }
    if x + 1 < m {
        out.push(v + 1);
    }
    if y > 0 {
        out.push(v - m);
    }
    if y + 1 < h {
        out.push(v + m);
    }
}

/// Boundary vertices in cyclic order, counter-clockwise from the origin.
fn boundary_cycle(spec: &GridSpec) -> Vec<usize> {
    let (m, h) = (spec.width(), spec.height());
    let mut out = Vec::with_capacity(2 * (m + h) - 4);
    out.extend((0..m).map(|x| spec.index(x, 0)));
    out.extend((1..h).map(|y| spec.index(m - 1, y)));
    out.extend((0..m - 1).rev().map(|x| spec.index(x, h - 1)));
    out.extend((1..h - 1).rev().map(|y| spec.index(0, y)));
    out
}

/// Spanning tree of the grid by Wilson's loop-erased random walks. Edges
/// are stored child → parent; the graph is unoriented.
pub fn ust_wilson(spec: &GridSpec, seed: u64) -> GeometricGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.width() * spec.height();
    let mut in_tree = vec![false; n];
    let mut next = vec![usize::MAX; n];
    let cycle = boundary_cycle(spec);
    match spec.boundary_condition() {
        BoundaryCondition::Free => {
            let root = rng.gen_range(0..n);
            in_tree[root] = true;
        }
        BoundaryCondition::Wired => {
            for &v in &cycle {
                in_tree[v] = true;
            }
        }
    }
    let mut nbrs = Vec::with_capacity(4);
    for start in 0..n {
        let mut u = start;
        while !in_tree[u] {
            grid_neighbors(spec, u, &mut nbrs);
            next[u] = nbrs[rng.gen_range(0..nbrs.len())];
            u = next[u];
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            u = next[u];
        }
    }
    let mut edges: Vec<(usize, usize)> = (0..n).filter(|&v| next[v] != usize::MAX).map(|v| (v, next[v])).collect();
    if spec.boundary_condition() == BoundaryCondition::Wired {
        let skip = rng.gen_range(0..cycle.len());
        for i in 0..cycle.len() {
            if i != skip {
                edges.push((cycle[i], cycle[(i + 1) % cycle.len()]));
            }
        }
    }
    let vertices = (0..n).map(|v| spec.point(v % spec.width(), v / spec.width())).collect();
    GeometricGraph::new(vertices, edges, false).expect("grid tree is a valid graph")
}

/// Grid coordinates of a vertex, if it is a lattice point of the grid.
fn lattice_coords(spec: &GridSpec, p: &Point) -> Option<(usize, usize)> {
    let (dx, dy) = p.sub(spec.origin());
    let (x, y) = (dx.as_i64()?, dy.as_i64()?);
    let ok = (0..spec.width() as i64).contains(&x) && (0..spec.height() as i64).contains(&y);
    ok.then_some((x as usize, y as usize))
}

/// Dual graph on the interior faces `origin + (1/2, 1/2) + {0..m-1} × {0..h-1}`
/// with exactly the dual edges whose primal edge is absent.
pub fn dual_tree(ust: &GeometricGraph, spec: &GridSpec) -> Result<GeometricGraph, GeneratorError> {
    let mut present: HashSet<(usize, usize)> = HashSet::new();
    for (e, &(a, b)) in ust.edges().iter().enumerate() {
        let pa = lattice_coords(spec, ust.vertex(a)).ok_or(GeneratorError::NotLattice(a))?;
        let pb = lattice_coords(spec, ust.vertex(b)).ok_or(GeneratorError::NotLattice(b))?;
        if pa.0.abs_diff(pb.0) + pa.1.abs_diff(pb.1) != 1 {
            return Err(GeneratorError::NotUnitEdge(e));
        }
        let (ia, ib) = (spec.index(pa.0, pa.1), spec.index(pb.0, pb.1));
        present.insert((ia.min(ib), ia.max(ib)));
    }
    let has = |x0: usize, y0: usize, x1: usize, y1: usize| {
        let (a, b) = (spec.index(x0, y0), spec.index(x1, y1));
        present.contains(&(a.min(b), a.max(b)))
    };
    let (fm, fh) = (spec.width() - 1, spec.height() - 1);
    let half = Coord::ratio(1, 2);
    let face = |i: usize, j: usize| j * fm + i;
    let vertices = (0..fm * fh).map(|f| spec.point(f % fm, f / fm).offset(&half, &half)).collect();
    let mut edges = Vec::new();
    for j in 0..fh {
        for i in 0..fm {
            // east neighbour is separated by the vertical primal edge at x = i + 1
            if i + 1 < fm && !has(i + 1, j, i + 1, j + 1) {
                edges.push((face(i, j), face(i + 1, j)));
            }
            // north neighbour is separated by the horizontal primal edge at y = j + 1
            if j + 1 < fh && !has(i, j + 1, i + 1, j + 1) {
                edges.push((face(i, j), face(i, j + 1)));
            }
        }
    }
    Ok(GeometricGraph::new(vertices, edges, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{components, validate_forest, validate_planarity, ForestCheck};
    use crate::generators::graph_union;

    fn is_spanning_tree(g: &GeometricGraph) -> bool {
        let labels = components(g);
        validate_forest(g) == ForestCheck::Ok
            && g.edge_count() + 1 == g.vertex_count()
            && labels.iter().all(|&l| l == 0)
    }

    #[test]
    fn small_grids() {
        for bc in [BoundaryCondition::Free, BoundaryCondition::Wired] {
            let spec = GridSpec::new(2, 2).unwrap().boundary(bc);
            let t = ust_wilson(&spec, 7);
            assert_eq!((t.vertex_count(), t.edge_count()), (4, 3));
            assert!(is_spanning_tree(&t));
            let d = dual_tree(&t, &spec).unwrap();
            assert_eq!((d.vertex_count(), d.edge_count()), (1, 0));
        }
        assert_eq!(GridSpec::new(1, 5), Err(GeneratorError::InvalidGrid(1, 5)));
    }

    #[test]
    fn deterministic_in_seed() {
        let spec = GridSpec::new(6, 5).unwrap();
        assert_eq!(ust_wilson(&spec, 3), ust_wilson(&spec, 3));
        assert_ne!(ust_wilson(&spec, 3), ust_wilson(&spec, 4));
    }

    #[test]
    fn dual_of_three_by_three() {
        let spec = GridSpec::new(3, 3).unwrap();
        for seed in 0..20 {
            let t = ust_wilson(&spec, seed);
            let d = dual_tree(&t, &spec).unwrap();
            assert_eq!(d.vertex_count(), 4);
            assert!(is_spanning_tree(&d));
            // duality oracle: each interior primal edge is present iff its
            // crossing dual edge is absent
            let interior = [((1, 0), (1, 1)), ((1, 1), (1, 2)), ((0, 1), (1, 1)), ((1, 1), (2, 1))];
            let primal: HashSet<(Point, Point)> = t
                .edges()
                .iter()
                .map(|&(a, b)| {
                    let (p, q) = (t.vertex(a).clone(), t.vertex(b).clone());
                    if p < q {
                        (p, q)
                    } else {
                        (q, p)
                    }
                })
                .collect();
            let dual_count = interior
                .iter()
                .filter(|&&((x0, y0), (x1, y1))| !primal.contains(&(Point::int(x0, y0), Point::int(x1, y1))))
                .count();
            assert_eq!(dual_count, d.edge_count());
        }
    }

    #[test]
    fn free_dual_can_be_disconnected() {
        let spec = GridSpec::new(6, 6).unwrap().boundary(BoundaryCondition::Free);
        let forests = (0..30)
            .filter(|&s| {
                let d = dual_tree(&ust_wilson(&spec, s), &spec).unwrap();
                d.edge_count() + 1 < d.vertex_count()
            })
            .count();
        assert!(forests > 0);
    }

    #[test]
    fn wired_tree_and_dual_on_offset_grid() {
        let spec = GridSpec::with_origin(9, 7, Point::int(-4, 10)).unwrap();
        for seed in 0..10 {
            let t = ust_wilson(&spec, seed);
            assert!(is_spanning_tree(&t));
            let d = dual_tree(&t, &spec).unwrap();
            assert_eq!(d.edge_count(), 8 * 6 - 1);
            assert!(is_spanning_tree(&d));
            let u = graph_union(&[t, d]).unwrap();
            assert!(validate_planarity(&u).is_empty());
        }
    }

    #[test]
    fn edge_directions_are_balanced() {
        // horizontal minus vertical edge counts, centred by symmetry
        let spec = GridSpec::new(20, 20).unwrap();
        let diffs: Vec<f64> = (0..200)
            .map(|s| {
                let t = ust_wilson(&spec, s);
                let horiz = t.edges().iter().filter(|&&(a, b)| t.vertex(a).y == t.vertex(b).y).count() as f64;
                2.0 * horiz - t.edge_count() as f64
            })
            .collect();
        let n = diffs.len() as f64;
        let mean = diffs.iter().sum::<f64>() / n;
        let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n - 1.0);
        assert!(mean.abs() <= 3.0 * (var / n).sqrt() + 1e-9, "mean {mean}, var {var}");
    }
}
