use std::collections::{BTreeMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::geometry::{Point, Rect, Segment};

use super::{components, validate_forest, ForestCheck, ForestError, GeometricGraph, WindowSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EndsClass {
    FiniteComponent,
    OneEnded,
    TwoEnded,
    Trifurcating(usize),
}

impl EndsClass {
    pub fn from_escapes(e: usize) -> EndsClass {
        match e {
            0 => EndsClass::FiniteComponent,
            1 => EndsClass::OneEnded,
            2 => EndsClass::TwoEnded,
            n => EndsClass::Trifurcating(n),
        }
    }

    pub fn escapes(&self) -> usize {
        match self {
            EndsClass::FiniteComponent => 0,
            EndsClass::OneEnded => 1,
            EndsClass::TwoEnded => 2,
            EndsClass::Trifurcating(n) => *n,
        }
    }
}

/// Where an escaping branch first reaches the outer boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EscapeCrossing {
    pub edge: usize,
    pub point: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    /// Smallest vertex index of the component.
    pub component_id: usize,
    /// Vertices of the component inside the closed inner box.
    pub vertex_count_in_window: usize,
    pub ends: EndsClass,
    /// One crossing per escaping branch.
    pub escapes: Vec<EscapeCrossing>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EndsCounts {
    pub finite: usize,
    pub one_ended: usize,
    pub two_ended: usize,
    pub trifurcating: usize,
}

impl EndsCounts {
    fn add(&mut self, c: EndsClass) {
        match c {
            EndsClass::FiniteComponent => self.finite += 1,
            EndsClass::OneEnded => self.one_ended += 1,
            EndsClass::TwoEnded => self.two_ended += 1,
            EndsClass::Trifurcating(_) => self.trifurcating += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub reports: Vec<ComponentReport>,
    pub counts: EndsCounts,
}

fn outer_flags(g: &GeometricGraph, outer: &Rect) -> Vec<bool> {
    (0..g.edge_count()).map(|e| outer.boundary_meets(&g.segment(e))).collect()
}

/// Number of neighbours `u` of `v` whose component in `G − v` contains an
/// edge meeting the boundary of the outer box.
pub fn escape_degree(g: &GeometricGraph, v: usize, w: &WindowSpec) -> Result<usize, ForestError> {
    if !w.inner_rect().contains(g.vertex(v)) {
        return Err(ForestError::OutsideInnerBox(v));
    }
    let flags = outer_flags(g, &w.outer_rect());
    Ok(g.neighbors(v).iter().filter(|&&(u, _)| branch_escapes(g, &flags, v, u)).count())
}

/// Breadth-first search of the component of `u` in `G − v`, stopping at the
/// first flagged edge.
pub(crate) fn branch_escapes(g: &GeometricGraph, flags: &[bool], v: usize, u: usize) -> bool {
    let mut seen = vec![false; g.vertex_count()];
    seen[v] = true;
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in g.neighbors(x) {
            if y == v {
                continue;
            }
            if flags[e] {
                return true;
            }
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    false
}

/// Rooted-forest index answering escape queries for every vertex in one
/// pass. Requires an acyclic undirected collapse.
#[derive(Debug, Clone)]
pub struct EscapeIndex {
    parent: Vec<Option<(usize, bool)>>,
    children: Vec<Vec<(usize, bool)>>,
    /// Flagged edges strictly inside the subtree of each vertex.
    below: Vec<usize>,
    tree_total: Vec<usize>,
    root: Vec<usize>,
}

impl EscapeIndex {
    pub fn new(g: &GeometricGraph, outer: &Rect) -> Result<EscapeIndex, ForestError> {
        if validate_forest(g) != ForestCheck::Ok {
            return Err(ForestError::NotAForest);
        }
        let n = g.vertex_count();
        let flags = outer_flags(g, outer);
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut root = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        for r in 0..n {
            if root[r] != usize::MAX {
                continue;
            }
            root[r] = r;
            let mut stack = vec![r];
            while let Some(x) = stack.pop() {
                order.push(x);
                for &(y, e) in g.neighbors(x) {
                    if root[y] == usize::MAX {
                        root[y] = r;
                        parent[y] = Some((x, flags[e]));
                        children[x].push((y, flags[e]));
                        stack.push(y);
                    }
                }
            }
        }
        let mut below = vec![0usize; n];
        for &x in order.iter().rev() {
            if let Some((p, f)) = parent[x] {
                below[p] += below[x] + usize::from(f);
            }
        }
        let mut tree_total = vec![0usize; n];
        for x in 0..n {
            if root[x] == x {
                tree_total[x] = below[x];
            }
        }
        Ok(EscapeIndex { parent, children, below, tree_total, root })
    }

    /// Neighbours of `v` whose branch reaches the outer boundary, and those
    /// whose branch does not.
    pub fn branches(&self, v: usize) -> (Vec<usize>, Vec<usize>) {
        let mut escaping = Vec::new();
        let mut finite = Vec::new();
        for &(c, _) in &self.children[v] {
            if self.below[c] > 0 {
                escaping.push(c);
            } else {
                finite.push(c);
            }
        }
        if let Some((p, f)) = self.parent[v] {
            let rest = self.tree_total[self.root[v]] - self.below[v] - usize::from(f);
            if rest > 0 {
                escaping.push(p);
            } else {
                finite.push(p);
            }
        }
        (escaping, finite)
    }

    pub fn escape_degree(&self, v: usize) -> usize {
        self.branches(v).0.len()
    }

    /// Vertices of the branch of `G − v` containing the neighbour `u`.
    pub fn branch_vertices(&self, v: usize, u: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![u];
        let mut seen = std::collections::HashSet::from([v, u]);
        while let Some(x) = stack.pop() {
            out.push(x);
            let nbrs = self.children[x].iter().map(|&(c, _)| c).chain(self.parent[x].map(|(p, _)| p));
            for y in nbrs {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Ends classification of every component with a vertex in `inner`.
///
/// The annulus pieces are the connected components of the graph with the
/// closed inner box removed, where an edge crossing the inner box is cut into
/// the parts attached to its outside endpoints. A piece escapes when one of
/// its edges or edge parts meets the boundary of `outer`.
pub fn classify_in(g: &GeometricGraph, inner: &Rect, outer: &Rect) -> Classification {
    let n = g.vertex_count();
    let label = components(g);
    let mut in_window: BTreeMap<usize, usize> = BTreeMap::new();
    for v in 0..n {
        if inner.contains(g.vertex(v)) {
            *in_window.entry(label[v]).or_default() += 1;
        }
    }
    let mut pieces = UnionFind::<usize>::new(n);
    // (vertex, edge, boundary point) for every escaping edge or edge part
    let mut witnesses: Vec<(usize, usize, Point)> = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if !in_window.contains_key(&label[a]) {
            continue;
        }
        let s = g.segment(e);
        match inner.clip(&s) {
            None => {
                pieces.union(a, b);
                if let Some(t) = outer.first_boundary_param(&s) {
                    witnesses.push((a, e, s.point_at(&t)));
                }
            }
            Some((t0, t1)) => {
                if let Ok(part) = Segment::new(s.a().clone(), s.point_at(&t0)) {
                    if let Some(t) = outer.first_boundary_param(&part) {
                        witnesses.push((a, e, part.point_at(&t)));
                    }
                }
                if let Ok(part) = Segment::new(s.b().clone(), s.point_at(&t1)) {
                    if let Some(t) = outer.first_boundary_param(&part) {
                        witnesses.push((b, e, part.point_at(&t)));
                    }
                }
            }
        }
    }
    let mut per_piece: BTreeMap<usize, (usize, EscapeCrossing)> = BTreeMap::new();
    for (v, e, point) in witnesses {
        let root = pieces.find(v);
        let entry =
            per_piece.entry(root).or_insert_with(|| (label[v], EscapeCrossing { edge: e, point: point.clone() }));
        if e < entry.1.edge {
            entry.1 = EscapeCrossing { edge: e, point };
        }
    }
    let mut escapes: BTreeMap<usize, Vec<EscapeCrossing>> = BTreeMap::new();
    for (_, (comp, crossing)) in per_piece {
        escapes.entry(comp).or_default().push(crossing);
    }
    let mut counts = EndsCounts::default();
    let reports = in_window
        .into_iter()
        .map(|(comp, count)| {
            let mut esc = escapes.remove(&comp).unwrap_or_default();
            esc.sort_by_key(|c| c.edge);
            let ends = EndsClass::from_escapes(esc.len());
            counts.add(ends);
            ComponentReport { component_id: comp, vertex_count_in_window: count, ends, escapes: esc }
        })
        .collect();
    Classification { reports, counts }
}

pub fn classify_components(g: &GeometricGraph, w: &WindowSpec) -> Classification {
    classify_in(g, &w.inner_rect(), &w.outer_rect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Coord;
    use proptest::prelude::*;

    fn graph(pts: &[(i64, i64)], edges: &[(usize, usize)]) -> GeometricGraph {
        GeometricGraph::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect(), edges.to_vec(), false).unwrap()
    }

    fn window(k: i64, l: i64) -> WindowSpec {
        WindowSpec::new(Coord::int(k), Coord::int(l), Point::int(0, 0)).unwrap()
    }

    fn horizontal_path(y: i64, from: i64, to: i64) -> (Vec<(i64, i64)>, Vec<(usize, usize)>) {
        let pts: Vec<(i64, i64)> = (from..=to).map(|x| (x, y)).collect();
        let edges = (0..pts.len() - 1).map(|i| (i, i + 1)).collect();
        (pts, edges)
    }

    /// Arms of length `len` from the origin in the four axis directions.
    fn plus(len: i64) -> GeometricGraph {
        let mut pts = vec![(0, 0)];
        let mut edges = Vec::new();
        for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
            let mut prev = 0;
            for s in 1..=len {
                pts.push((dx * s, dy * s));
                edges.push((prev, pts.len() - 1));
                prev = pts.len() - 1;
            }
        }
        graph(&pts, &edges)
    }

    #[test]
    fn escape_degree_examples() {
        let w = window(2, 5);
        let small = graph(&[(0, 0), (1, 0), (1, 1)], &[(0, 1), (1, 2)]);
        assert_eq!(escape_degree(&small, 2, &w).unwrap(), 0);
        let (p, e) = horizontal_path(0, -8, 8);
        let line = graph(&p, &e);
        assert_eq!(escape_degree(&line, 8, &w).unwrap(), 2);
        let star = plus(7);
        assert_eq!(escape_degree(&star, 0, &w).unwrap(), 4);
        assert_eq!(escape_degree(&line, 0, &w), Err(ForestError::OutsideInnerBox(0)));
    }

    #[test]
    fn index_matches_search() {
        let star = plus(7);
        let w = window(3, 5);
        let idx = EscapeIndex::new(&star, &w.outer_rect()).unwrap();
        for v in 0..star.vertex_count() {
            if w.inner_rect().contains(star.vertex(v)) {
                assert_eq!(idx.escape_degree(v), escape_degree(&star, v, &w).unwrap());
            }
        }
    }

    #[test]
    fn classification_examples() {
        let w = window(2, 5);
        let iso = graph(&[(0, 0)], &[]);
        let c = classify_components(&iso, &w);
        assert_eq!(c.counts, EndsCounts { finite: 1, ..Default::default() });
        let (p, e) = horizontal_path(0, -8, 8);
        let c = classify_components(&graph(&p, &e), &w);
        assert_eq!(c.counts, EndsCounts { two_ended: 1, ..Default::default() });
        assert_eq!(c.reports[0].vertex_count_in_window, 5);
        let c = classify_components(&plus(7), &w);
        assert_eq!(c.reports[0].ends, EndsClass::Trifurcating(4));
        // a component reaching out on one side only
        let (p, e) = horizontal_path(0, -1, 8);
        let c = classify_components(&graph(&p, &e), &w);
        assert_eq!(c.reports[0].ends, EndsClass::OneEnded);
        assert_eq!(c.reports[0].escapes[0].point, Point::int(5, 0));
    }

    #[test]
    fn edge_through_inner_box_is_cut() {
        // a single long edge through the inner box: two ends, no vertex inside
        let g = graph(&[(-9, 0), (9, 0), (0, 1)], &[(0, 1)]);
        let c = classify_components(&g, &window(2, 5));
        assert_eq!(c.counts, EndsCounts { finite: 1, ..Default::default() });
        // the same edge with a pendant vertex inside
        let g = graph(&[(-9, 0), (9, 0), (0, 0), (0, 1)], &[(0, 2), (2, 1), (2, 3)]);
        let c = classify_components(&g, &window(2, 5));
        assert_eq!(c.counts.two_ended, 1);
    }

    fn random_tree() -> impl Strategy<Value = GeometricGraph> {
        // random recursive tree on distinct lattice points of a 9×9 grid
        proptest::collection::vec((0usize..1000, -6i64..=6, -6i64..=6), 1..40).prop_map(|spec| {
            let mut pts: Vec<(i64, i64)> = vec![(0, 0)];
            let mut edges = Vec::new();
            for (p, x, y) in spec {
                if pts.contains(&(x, y)) {
                    continue;
                }
                let parent = p % pts.len();
                pts.push((x, y));
                edges.push((parent, pts.len() - 1));
            }
            GeometricGraph::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect(), edges, false).unwrap()
        })
    }

    proptest! {
        #[test]
        fn escape_degree_bounded_by_degree(g in random_tree()) {
            let w = window(3, 5);
            let idx = EscapeIndex::new(&g, &w.outer_rect()).unwrap();
            for v in 0..g.vertex_count() {
                if w.inner_rect().contains(g.vertex(v)) {
                    let d = escape_degree(&g, v, &w).unwrap();
                    prop_assert!(d <= g.degree(v));
                    prop_assert_eq!(d, idx.escape_degree(v));
                }
            }
        }

        #[test]
        fn escapes_bounded_by_inner_crossings(g in random_tree()) {
            let w = window(2, 5);
            let inner = w.inner_rect();
            let crossing = (0..g.edge_count()).filter(|&e| inner.boundary_meets(&g.segment(e))).count();
            let c = classify_components(&g, &w);
            let total: usize = c.reports.iter().map(|r| r.ends.escapes()).sum();
            prop_assert!(total <= crossing);
        }

        #[test]
        fn larger_outer_box_never_adds_escapes(g in random_tree()) {
            let small = classify_components(&g, &window(2, 4));
            let large = classify_components(&g, &window(2, 6));
            for (a, b) in small.reports.iter().zip(&large.reports) {
                prop_assert_eq!(a.component_id, b.component_id);
                prop_assert!(b.ends.escapes() <= a.ends.escapes());
            }
        }
    }
}
