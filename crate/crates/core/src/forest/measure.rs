use crate::geometry::{Coord, Point, Rect};

use super::{ForestError, GeometricGraph, SegmentGrid};

/// Mean number of edges meeting each sample box (closed boxes).
pub fn edge_intensity(g: &GeometricGraph, boxes: &[Rect]) -> Result<Coord, ForestError> {
    if boxes.is_empty() {
        return Err(ForestError::EmptySample);
    }
    let (grid, segs) = SegmentGrid::from_graph(g);
    let total: i64 =
        boxes.iter().map(|b| grid.candidates(b).into_iter().filter(|&e| b.meets(&segs[e])).count() as i64).sum();
    Ok(Coord::ratio(total, boxes.len() as i64))
}

/// Unit boxes with integer corners lying in `region` shrunk by `margin`.
pub fn grid_unit_boxes(region: &Rect, margin: &Coord) -> Vec<Rect> {
    let ceil = |c: Coord| -(-c).floor_i64().expect("fits");
    let floor = |c: Coord| c.floor_i64().expect("fits");
    let (x0, y0) = (ceil(&region.min.x + margin), ceil(&region.min.y + margin));
    let (x1, y1) = (floor(&region.max.x - margin), floor(&region.max.y - margin));
    (y0..y1).flat_map(|y| (x0..x1).map(move |x| Rect::unit(x, y))).collect()
}

/// Number of edges meeting the boundary of `origin + [0, n]²`.
pub fn chi_n(g: &GeometricGraph, n: u32, origin: &Point) -> u64 {
    let side = Coord::int(i64::from(n));
    let bx = Rect { min: origin.clone(), max: origin.offset(&side, &side) };
    let (grid, segs) = SegmentGrid::from_graph(g);
    grid.candidates(&bx).into_iter().filter(|&e| bx.boundary_meets(&segs[e])).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Segment;

    fn lattice(n: i64) -> GeometricGraph {
        let mut pts = Vec::new();
        for y in 0..=n {
            for x in 0..=n {
                pts.push(Point::int(x, y));
            }
        }
        let id = |x: i64, y: i64| (y * (n + 1) + x) as usize;
        let mut edges = Vec::new();
        for y in 0..=n {
            for x in 0..=n {
                if x < n {
                    edges.push((id(x, y), id(x + 1, y)));
                }
                if y < n {
                    edges.push((id(x, y), id(x, y + 1)));
                }
            }
        }
        GeometricGraph::new(pts, edges, false).unwrap()
    }

    /// Direct count over all edges and all four box sides.
    fn brute_meets(g: &GeometricGraph, b: &Rect) -> i64 {
        (0..g.edge_count()).filter(|&e| b.meets(&g.segment(e))).count() as i64
    }

    fn brute_boundary(g: &GeometricGraph, b: &Rect) -> u64 {
        let sides = b.boundary_segments();
        (0..g.edge_count())
            .filter(|&e| {
                let s = g.segment(e);
                sides.iter().any(|side| s.intersection_params(side).is_some())
            })
            .count() as u64
    }

    #[test]
    fn trivial_intensities() {
        let boxes = vec![Rect::unit(0, 0)];
        assert_eq!(edge_intensity(&GeometricGraph::empty(), &boxes).unwrap(), Coord::ZERO);
        let g = GeometricGraph::new(vec![Point::int(0, 0), Point::int(1, 0)], vec![(0, 1)], false).unwrap();
        assert_eq!(edge_intensity(&g, &boxes).unwrap(), Coord::ONE);
        assert_eq!(edge_intensity(&g, &[]), Err(ForestError::EmptySample));
    }

    #[test]
    fn lattice_intensity_matches_direct_count() {
        let g = lattice(10);
        let boxes: Vec<Rect> = (0..5).flat_map(|y| (0..5).map(move |x| Rect::unit(3 + x, 3 + y))).collect();
        let direct: i64 = boxes.iter().map(|b| brute_meets(&g, b)).sum();
        let lam = edge_intensity(&g, &boxes).unwrap();
        assert_eq!(lam, Coord::ratio(direct, 25));
        // a closed unit box of Z² meets its 4 sides and the 8 edges sticking
        // out of its corners
        assert_eq!(lam, Coord::int(12));
    }

    #[test]
    fn grid_boxes_respect_margin() {
        let region = Rect::new(Point::int(0, 0), Point::int(10, 10)).unwrap();
        let boxes = grid_unit_boxes(&region, &Coord::int(2));
        assert_eq!(boxes.len(), 36);
        assert!(boxes.iter().all(|b| b.min.x >= Coord::int(2) && b.max.x <= Coord::int(8)));
        let frac = grid_unit_boxes(&region, &Coord::ratio(5, 2));
        assert_eq!(frac.len(), 16);
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_n(&GeometricGraph::empty(), 5, &Point::int(0, 0)), 0);
        let g = GeometricGraph::new(vec![Point::int(-1, 2), Point::int(1, 2)], vec![(0, 1)], false).unwrap();
        assert_eq!(chi_n(&g, 5, &Point::int(0, 0)), 1);
        let lat = lattice(12);
        let o = Point::int(3, 3);
        let b = Rect { min: o.clone(), max: Point::int(8, 8) };
        assert_eq!(chi_n(&lat, 5, &o), brute_boundary(&lat, &b));
        let seg = Segment::new(Point::int(4, 4), Point::int(5, 4)).unwrap();
        assert!(!b.boundary_meets(&seg));
    }
}
