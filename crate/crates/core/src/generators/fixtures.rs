use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::forest::{validate_planarity, GeometricGraph, WindowSpec};
use crate::geometry::{Coord, Direction, PLTopoLine, Point, Polyline};

use super::{GeneratorError, GridSpec};

/// Isolated vertices at `origin + (1/3, 1/3) + {0..m} × {0..h}`.
pub fn iso_points(spec: &GridSpec) -> GeometricGraph {
    let third = Coord::ratio(1, 3);
    let vertices = (0..spec.height())
        .flat_map(|y| (0..spec.width()).map(move |x| (x, y)))
        .map(|(x, y)| spec.point(x, y).offset(&third, &third))
        .collect();
    GeometricGraph::new(vertices, Vec::new(), false).expect("distinct points")
}

/// Disjoint union with shifted indices. The result is oriented only when
/// every part is.
pub fn graph_union(gs: &[GeometricGraph]) -> Result<GeometricGraph, GeneratorError> {
    if gs.is_empty() {
        return Err(GeneratorError::EmptyUnion);
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for g in gs {
        let base = vertices.len();
        vertices.extend(g.vertices().iter().cloned());
        edges.extend(g.edges().iter().map(|&(a, b)| (a + base, b + base)));
    }
    let oriented = gs.iter().all(|g| g.oriented());
    let union = GeometricGraph::new(vertices, edges, oriented)?;
    let bad = validate_planarity(&union);
    if !bad.is_empty() {
        return Err(GeneratorError::ImproperIntersection(bad));
    }
    Ok(union)
}

#[derive(Default)]
struct Builder {
    index: HashMap<(i64, i64), usize>,
    vertices: Vec<Point>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, p: (i64, i64)) -> usize {
        let n = self.vertices.len();
        *self.index.entry(p).or_insert_with(|| {
            self.vertices.push(Point::int(p.0, p.1));
            n
        })
    }

    fn path(&mut self, pts: impl IntoIterator<Item = (i64, i64)>) {
        let mut prev: Option<usize> = None;
        for p in pts {
            let v = self.vertex(p);
            if let Some(u) = prev {
                self.edges.push((u, v));
            }
            prev = Some(v);
        }
    }
}

/// Deterministic corridor test bed on `[−L, L]²`.
///
/// * Top rake: a spine at `y = L − 3` over `|x| ≤ L − 2`, a column
///   hanging from every spine vertex down to `y = 3` (to `y = 2` at even `x`
///   when `teeth` is set), and a trunk from the spine centre up to `y = L`.
/// * Bottom rake: the mirror image in the `x`-axis.
/// * Middle path along `y = 0` from `x = −L` to `x = L`.
///
/// Seen through [`fixture_window`] the rakes are one-ended and the middle
/// path is two-ended. Pendant trees near the axis are the short column
/// stubs, so doors exist at every admissible centre on the axis.
pub fn fixture_corridor(l: i64, teeth: bool) -> Result<GeometricGraph, GeneratorError> {
    if l < 8 {
        return Err(GeneratorError::FixtureTooSmall);
    }
    let mut b = Builder::default();
    let spine = l - 3;
    for sign in [1, -1] {
        for x in -(l - 2)..=(l - 2) {
            let foot = if teeth && x % 2 == 0 { 2 } else { 3 };
            b.path((foot..=spine).map(|y| (x, sign * y)));
        }
        b.path((-(l - 2)..=(l - 2)).map(|x| (x, sign * spine)));
        b.path((spine..=l).map(|y| (0, sign * y)));
    }
    b.path((-l..=l).map(|x| (x, 0)));
    Ok(GeometricGraph::new(b.vertices, b.edges, false)?)
}

/// Analysis window for [`fixture_corridor`]: centred at the origin, outer
/// half-width `L − 1`, inner half-width `max(L − 8, 3)`.
pub fn fixture_window(l: i64) -> WindowSpec {
    WindowSpec::new(Coord::int((l - 8).max(3)), Coord::int(l - 1), Point::int(0, 0)).expect("L ≥ 8")
}

/// Horizontal lines carrying bumps `h · f` over `[−1, 1]` for a shared
/// random positive piecewise-linear profile `f` and distinct random heights,
/// returned in random order together with their heights.
pub fn bump_family(size: usize, seed: u64) -> Vec<(i64, PLTopoLine)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let knots = rng.gen_range(1..=5);
    let profile: Vec<i64> = (0..knots).map(|_| rng.gen_range(1..=12)).collect();
    let mut heights: Vec<i64> = (1..=(4 * size as i64).max(8)).collect();
    heights.shuffle(&mut rng);
    heights.truncate(size);
    heights
        .into_iter()
        .map(|h| {
            let mut pts = vec![Point::int(-1, 0)];
            for (j, &f) in profile.iter().enumerate() {
                let x = Coord::ratio(2 * (j as i64 + 1), knots as i64 + 1) - Coord::ONE;
                pts.push(Point::new(x, Coord::ratio(h * f, 4)));
            }
            pts.push(Point::int(1, 0));
            (h, horizontal_line(pts))
        })
        .collect()
}

/// Horizontal lines with a slope-one tent of height `h` over `[−h, h]`.
pub fn tent_family(heights: &[i64]) -> Vec<PLTopoLine> {
    heights.iter().map(|&h| horizontal_line(vec![Point::int(-h, 0), Point::int(0, h), Point::int(h, 0)])).collect()
}

fn horizontal_line(chain: Vec<Point>) -> PLTopoLine {
    let left = Direction::new(Coord::int(-1), Coord::ZERO).expect("nonzero");
    let right = Direction::new(Coord::ONE, Coord::ZERO).expect("nonzero");
    PLTopoLine::new(left, Polyline::new(chain).expect("distinct knots"), right).expect("graph of a positive function")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{classify_components, components, EndsCounts};
    use crate::generators::{contour, dual_tree, ust_wilson};

    #[test]
    fn iso_examples() {
        let spec = GridSpec::new(3, 3).unwrap();
        let g = iso_points(&spec);
        assert_eq!((g.vertex_count(), g.edge_count()), (9, 0));
        let w = WindowSpec::new(Coord::int(1), Coord::int(2), Point::int(1, 1)).unwrap();
        let c = classify_components(&g, &w);
        assert_eq!(c.counts, EndsCounts { finite: 4, ..Default::default() });
        assert!(graph_union(&[ust_wilson(&spec, 1), g]).is_ok());
    }

    #[test]
    fn union_examples() {
        let spec = GridSpec::new(6, 6).unwrap();
        let t = ust_wilson(&spec, 9);
        assert_eq!(graph_union(std::slice::from_ref(&t)).unwrap(), t);
        let d = dual_tree(&t, &spec).unwrap();
        let c4 = contour(&t, &Coord::ratio(1, 4)).unwrap();
        let c5 = contour(&t, &Coord::ratio(1, 5)).unwrap();
        let iso = iso_points(&spec);
        let layers = [t.clone(), d, c4.clone(), iso];
        let u = graph_union(&layers).unwrap();
        let count = |g: &GeometricGraph| {
            let mut l = components(g);
            l.sort_unstable();
            l.dedup();
            l.len()
        };
        assert_eq!(count(&u), layers.iter().map(count).sum::<usize>());
        assert!(graph_union(&[t, c4, c5]).is_ok());
        let crossing = GeometricGraph::new(
            vec![Point::new(Coord::ratio(1, 2), -1), Point::new(Coord::ratio(1, 2), 9)],
            vec![(0, 1)],
            false,
        )
        .unwrap();
        assert!(matches!(graph_union(&[ust_wilson(&spec, 9), crossing]), Err(GeneratorError::ImproperIntersection(_))));
        assert_eq!(graph_union(&[]), Err(GeneratorError::EmptyUnion));
    }

    #[test]
    fn fixture_classification() {
        for teeth in [false, true] {
            let g = fixture_corridor(16, teeth).unwrap();
            assert!(validate_planarity(&g).is_empty());
            let c = classify_components(&g, &fixture_window(16));
            assert_eq!(c.counts, EndsCounts { one_ended: 2, two_ended: 1, ..Default::default() });
        }
        assert_eq!(fixture_corridor(7, false), Err(GeneratorError::FixtureTooSmall));
    }

    #[test]
    fn families_are_nested() {
        let fam = bump_family(8, 3);
        assert_eq!(fam.len(), 8);
        let mut hs: Vec<i64> = fam.iter().map(|(h, _)| *h).collect();
        hs.sort_unstable();
        hs.dedup();
        assert_eq!(hs.len(), 8);
        assert_eq!(tent_family(&[1, 2, 3]).len(), 3);
    }
}
