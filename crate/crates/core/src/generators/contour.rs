use std::collections::{HashMap, HashSet};

use crate::forest::{peel_n, GeometricGraph, PeelDepth};
use crate::geometry::Coord;

use super::{graph_union, GeneratorError};

/// Corner offsets in the order used for vertex indices: vertex `i` of `Z`
/// owns contour vertices `4i..4i+4`.
const CORNERS: [(i64, i64); 4] = [(-1, -1), (1, -1), (1, 1), (-1, 1)];

fn corner_index(d: (i64, i64)) -> usize {
    CORNERS.iter().position(|&c| c == d).expect("corner of {-1,1}²")
}

/// Contour of a lattice subgraph at distance `eps`: the corner points
/// `v + eps·δ` for `δ ∈ {−1, 1}²`, joined around every side of `v` without
/// an edge of `Z` and along every edge of `Z`.
pub fn contour(z: &GeometricGraph, eps: &Coord) -> Result<GeometricGraph, GeneratorError> {
    if *eps <= Coord::ZERO || *eps >= Coord::ratio(1, 2) {
        return Err(GeneratorError::EpsilonOutOfRange);
    }
    let mut lattice = Vec::with_capacity(z.vertex_count());
    for (i, p) in z.vertices().iter().enumerate() {
        match (p.x.as_i64(), p.y.as_i64()) {
            (Some(x), Some(y)) => lattice.push((x, y)),
            _ => return Err(GeneratorError::NotLattice(i)),
        }
    }
    let mut index: HashMap<(i64, i64), usize> = HashMap::with_capacity(lattice.len());
    for (i, &p) in lattice.iter().enumerate() {
        index.insert(p, i);
    }
    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(z.edge_count());
    for (e, &(a, b)) in z.edges().iter().enumerate() {
        let (pa, pb) = (lattice[a], lattice[b]);
        if (pa.0 - pb.0).abs() + (pa.1 - pb.1).abs() != 1 {
            return Err(GeneratorError::NotUnitEdge(e));
        }
        present.insert((a.min(b), a.max(b)));
    }
    let has_edge = |v: usize, u: (i64, i64)| {
        let (x, y) = lattice[v];
        index.get(&(x + u.0, y + u.1)).is_some_and(|&w| present.contains(&(v.min(w), v.max(w))))
    };
    let mut vertices = Vec::with_capacity(4 * lattice.len());
    for p in z.vertices() {
        for (dx, dy) in CORNERS {
            vertices.push(p.offset(&(eps * &Coord::int(dx)), &(eps * &Coord::int(dy))));
        }
    }
    let mut edges = Vec::new();
    for v in 0..lattice.len() {
        // consecutive corners differ in one coordinate; their half-sum is the side direction
        for c in 0..4 {
            let (d1, d2) = (CORNERS[c], CORNERS[(c + 1) % 4]);
            let side = ((d1.0 + d2.0) / 2, (d1.1 + d2.1) / 2);
            if !has_edge(v, side) {
                edges.push((4 * v + c, 4 * v + (c + 1) % 4));
            }
        }
    }
    let mut pairs: Vec<(usize, usize)> = present.into_iter().collect();
    pairs.sort_unstable();
    for (a, b) in pairs {
        let (pa, pb) = (lattice[a], lattice[b]);
        let u = (pb.0 - pa.0, pb.1 - pa.1);
        // δ − δ' = 2u: δ takes +u in the edge coordinate, δ' takes −u, and the
        // other coordinate is shared
        for s in [-1, 1] {
            let (d, dp) = if u.0 != 0 { ((u.0, s), (-u.0, s)) } else { ((s, u.1), (s, -u.1)) };
            edges.push((4 * a + corner_index(d), 4 * b + corner_index(dp)));
        }
    }
    Ok(GeometricGraph::new(vertices, edges, false)?)
}

/// Peeling schedule `φ(4) < φ(5) < … < φ(n_max)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSchedule {
    phi: Vec<usize>,
}

impl PhiSchedule {
    /// `phi[i]` is `φ(4 + i)`.
    pub fn new(phi: Vec<usize>) -> Result<PhiSchedule, GeneratorError> {
        if phi.is_empty() || phi.windows(2).any(|w| w[1] <= w[0]) {
            return Err(GeneratorError::InvalidSchedule);
        }
        Ok(PhiSchedule { phi })
    }

    /// Smallest schedule with `P̂[d > φ(n)] ≤ 2^{−(n−3)}` for the empirical
    /// depth sample, made strictly increasing. Unremoved vertices count as
    /// exceeding every level.
    pub fn from_quantiles(depths: &[PeelDepth], n_max: usize) -> Result<PhiSchedule, GeneratorError> {
        if n_max < 4 || depths.is_empty() {
            return Err(GeneratorError::InvalidSchedule);
        }
        let mut finite: Vec<usize> = depths
            .iter()
            .filter_map(|d| match d {
                PeelDepth::Removed(r) => Some(*r),
                PeelDepth::NotRemoved => None,
            })
            .collect();
        finite.sort_unstable();
        let total = depths.len();
        let exceed = |q: usize| total - finite.partition_point(|&d| d <= q);
        let max_depth = finite.last().copied().unwrap_or(0);
        let mut phi = Vec::new();
        for n in 4..=n_max {
            // exceed(q) / total ≤ 2^{-(n-3)}  ⇔  exceed(q) · 2^{n-3} ≤ total
            let ok = |q: usize| (exceed(q) as u128) << (n - 3) <= total as u128;
            let q = (0..=max_depth).find(|&q| ok(q)).unwrap_or(max_depth);
            let floor = phi.last().map_or(0, |&p: &usize| p + 1);
            phi.push(q.max(floor));
        }
        PhiSchedule::new(phi)
    }

    pub fn n_max(&self) -> usize {
        3 + self.phi.len()
    }

    pub fn phi(&self, n: usize) -> usize {
        self.phi[n - 4]
    }

    pub fn levels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.phi.iter().enumerate().map(|(i, &p)| (i + 4, p))
    }

    /// `Σ_n P̂[d > φ(n)]` for a depth sample.
    pub fn tail_sum(&self, depths: &[PeelDepth]) -> f64 {
        let total = depths.len() as f64;
        self.levels().map(|(_, p)| depths.iter().filter(|d| **d > PeelDepth::Removed(p)).count() as f64 / total).sum()
    }
}

/// Union over `n = 4..=n_max` of the contours at distance `1/n` of the
/// `φ(n)`-fold peelings.
pub fn g_phi(ust: &GeometricGraph, sched: &PhiSchedule) -> Result<GeometricGraph, GeneratorError> {
    let mut layers = Vec::new();
    for (n, p) in sched.levels() {
        let peeled = peel_n(ust, p);
        if peeled.graph.vertex_count() == 0 {
            continue;
        }
        layers.push(contour(&peeled.graph, &Coord::ratio(1, n as i64))?);
    }
    if layers.is_empty() {
        return Ok(GeometricGraph::empty());
    }
    graph_union(&layers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{components, validate_planarity};
    use crate::generators::{ust_wilson, GridSpec};
    use crate::geometry::Point;

    fn graph(pts: &[(i64, i64)], edges: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect(), edges.to_vec(), false).unwrap()
    }

    fn is_single_cycle(g: &GeometricGraph) -> bool {
        (0..g.vertex_count()).all(|v| g.degree(v) == 2) && components(g).iter().all(|&c| c == 0)
    }

    #[test]
    fn isolated_vertex_gives_a_square() {
        let c = contour(&graph(&[(0, 0)], &[]), &Coord::ratio(1, 4)).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (4, 4));
        assert!(is_single_cycle(&c));
    }

    #[test]
    fn single_edge_gives_an_octagon() {
        let c = contour(&graph(&[(0, 0), (1, 0)], &[(0, 1)]), &Coord::ratio(1, 4)).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count()), (8, 8));
        assert!(is_single_cycle(&c));
        assert!(validate_planarity(&c).is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let g = graph(&[(0, 0)], &[]);
        assert_eq!(contour(&g, &Coord::ratio(1, 2)), Err(GeneratorError::EpsilonOutOfRange));
        assert_eq!(contour(&g, &Coord::ZERO), Err(GeneratorError::EpsilonOutOfRange));
        let diag = graph(&[(0, 0), (1, 1)], &[(0, 1)]);
        assert_eq!(contour(&diag, &Coord::ratio(1, 4)), Err(GeneratorError::NotUnitEdge(0)));
        let off = GeometricGraph::new(vec![Point::new(Coord::ratio(1, 2), 0)], vec![], false).unwrap();
        assert_eq!(contour(&off, &Coord::ratio(1, 4)), Err(GeneratorError::NotLattice(0)));
    }

    #[test]
    fn tree_contour_is_one_cycle() {
        // rule-1 sides plus two connectors per edge: 4V - 2(V - 1) + 2(V - 1) = 4V
        let spec = GridSpec::new(7, 6).unwrap();
        for seed in 0..10 {
            let t = ust_wilson(&spec, seed);
            let c = contour(&t, &Coord::ratio(1, 4)).unwrap();
            assert_eq!(c.vertex_count(), 4 * 42);
            assert!(is_single_cycle(&c));
        }
    }

    #[test]
    fn schedule_validation_and_quantiles() {
        assert!(PhiSchedule::new(vec![]).is_err());
        assert!(PhiSchedule::new(vec![2, 2]).is_err());
        let depths: Vec<PeelDepth> = (1..=16).map(PeelDepth::Removed).collect();
        let s = PhiSchedule::from_quantiles(&depths, 8).unwrap();
        // P̂[d > q] = (16 - q)/16 ≤ 1/2, 1/4, 1/8, 1/16, then the depth maximum
        assert_eq!(s.levels().collect::<Vec<_>>(), vec![(4, 8), (5, 12), (6, 14), (7, 15), (8, 16)]);
        assert!(s.tail_sum(&depths) <= 1.0);
    }

    #[test]
    fn g_phi_single_layer_and_empty_tail() {
        let spec = GridSpec::new(8, 8).unwrap();
        let t = ust_wilson(&spec, 5);
        let s = PhiSchedule::new(vec![1]).unwrap();
        let single = g_phi(&t, &s).unwrap();
        assert_eq!(single, contour(&peel_n(&t, 1).graph, &Coord::ratio(1, 4)).unwrap());
        let s = PhiSchedule::new(vec![1, 10_000]).unwrap();
        assert_eq!(g_phi(&t, &s).unwrap(), single);
        let s = PhiSchedule::new(vec![0, 1, 2, 3]).unwrap();
        let layered = g_phi(&t, &s).unwrap();
        assert!(validate_planarity(&layered).is_empty());
    }
}
