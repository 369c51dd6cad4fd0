use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::forest::GeometricGraph;
use crate::geometry::{Coord, Point};

use super::GeneratorError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    Left,
    Right,
}

/// Site percolation on `origin + {0..width} × {0..height}` with every open
/// site pointing to the nearest open site of the next row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrainageSpec {
    pub width: usize,
    pub height: usize,
    /// Open probability as an exact fraction `num / den`.
    pub p: (u64, u64),
    pub tie_break: TieBreak,
    pub seed: u64,
    pub origin: Point,
}

impl DrainageSpec {
    pub fn new(width: usize, height: usize, p: (u64, u64), tie_break: TieBreak, seed: u64) -> DrainageSpec {
        DrainageSpec { width, height, p, tie_break, seed, origin: Point::int(0, 0) }
    }

    fn validate(&self) -> Result<(), GeneratorError> {
        let (num, den) = self.p;
        if num == 0 || den == 0 || num > den {
            return Err(GeneratorError::InvalidProbability);
        }
        if self.width < 1 || self.height < 2 {
            return Err(GeneratorError::InvalidDrainageBox);
        }
        Ok(())
    }
}

/// Index of the open site nearest to `x` in a sorted row.
fn nearest(row: &[usize], x: usize, tie: TieBreak) -> Option<usize> {
    let i = row.partition_point(|&v| v < x);
    let right = row.get(i).copied();
    let left = i.checked_sub(1).map(|j| row[j]);
    match (left, right) {
        (None, None) => None,
        (Some(l), None) => Some(l),
        (None, Some(r)) => Some(r),
        (Some(l), Some(r)) => {
            let (dl, dr) = (x - l, r - x);
            Some(match dl.cmp(&dr) {
                std::cmp::Ordering::Less => l,
                std::cmp::Ordering::Greater => r,
                std::cmp::Ordering::Equal => match tie {
                    TieBreak::Left => l,
                    TieBreak::Right => r,
                },
            })
        }
    }
}

/// Open sites of each row, sorted by `x`.
pub(crate) fn open_rows(spec: &DrainageSpec) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (num, den) = spec.p;
    (0..spec.height).map(|_| (0..spec.width).filter(|_| num == den || rng.gen_range(0..den) < num).collect()).collect()
}

/// Oriented drainage network. Sites are indexed row by row from the bottom;
/// the top row has no successors.
pub fn drainage_grs(spec: &DrainageSpec) -> Result<GeometricGraph, GeneratorError> {
    spec.validate()?;
    let rows = open_rows(spec);
    let mut first = Vec::with_capacity(rows.len());
    let mut vertices = Vec::new();
    for (y, row) in rows.iter().enumerate() {
        first.push(vertices.len());
        for &x in row {
            vertices.push(spec.origin.offset(&Coord::int(x as i64), &Coord::int(y as i64)));
        }
    }
    let mut edges = Vec::new();
    for y in 0..rows.len().saturating_sub(1) {
        let up = &rows[y + 1];
        for (i, &x) in rows[y].iter().enumerate() {
            if let Some(t) = nearest(up, x, spec.tie_break) {
                let j = up.binary_search(&t).expect("target is an open site");
                edges.push((first[y] + i, first[y + 1] + j));
            }
        }
    }
    Ok(GeometricGraph::new(vertices, edges, true)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::{classify_components, validate_forest, validate_planarity, ForestCheck, WindowSpec};

    #[test]
    fn nearest_with_ties() {
        assert_eq!(nearest(&[2, 6], 4, TieBreak::Right), Some(6));
        assert_eq!(nearest(&[2, 6], 4, TieBreak::Left), Some(2));
        assert_eq!(nearest(&[2, 6], 5, TieBreak::Left), Some(6));
        assert_eq!(nearest(&[], 5, TieBreak::Left), None);
        assert_eq!(nearest(&[9], 0, TieBreak::Left), Some(9));
    }

    #[test]
    fn full_occupation_gives_columns() {
        let spec = DrainageSpec::new(6, 5, (1, 1), TieBreak::Right, 0);
        let g = drainage_grs(&spec).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (30, 24));
        assert!(g.edges().iter().all(|&(a, b)| g.vertex(a).x == g.vertex(b).x));
        let w = WindowSpec::new(Coord::int(1), Coord::ratio(3, 2), Point::new(Coord::ratio(5, 2), 2)).unwrap();
        let c = classify_components(&g, &w);
        assert_eq!(c.counts.two_ended, 2);
        assert_eq!(c.counts.one_ended + c.counts.finite + c.counts.trifurcating, 0);
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            drainage_grs(&DrainageSpec::new(4, 4, (0, 1), TieBreak::Left, 0)),
            Err(GeneratorError::InvalidProbability)
        );
        assert_eq!(
            drainage_grs(&DrainageSpec::new(4, 4, (3, 2), TieBreak::Left, 0)),
            Err(GeneratorError::InvalidProbability)
        );
        assert_eq!(
            drainage_grs(&DrainageSpec::new(4, 1, (1, 2), TieBreak::Left, 0)),
            Err(GeneratorError::InvalidDrainageBox)
        );
    }

    #[test]
    fn targets_are_monotone_and_edges_planar() {
        for (seed, tie) in [(1, TieBreak::Left), (2, TieBreak::Right), (3, TieBreak::Right)] {
            let spec = DrainageSpec::new(40, 30, (1, 2), tie, seed);
            let g = drainage_grs(&spec).unwrap();
            let mut by_row: std::collections::BTreeMap<Coord, Vec<(Coord, Coord)>> = Default::default();
            for &(a, b) in g.edges() {
                let (p, q) = (g.vertex(a), g.vertex(b));
                assert_eq!(&q.y - &p.y, Coord::ONE);
                by_row.entry(p.y.clone()).or_default().push((p.x.clone(), q.x.clone()));
            }
            for row in by_row.values_mut() {
                row.sort();
                assert!(row.windows(2).all(|w| w[0].1 <= w[1].1));
            }
            assert!(validate_planarity(&g).is_empty());
            assert_eq!(validate_forest(&g), ForestCheck::Ok);
        }
    }
}
