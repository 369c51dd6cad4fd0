use std::cmp::Ordering;

use super::{orient, segment_relation, Coord, GeometryError, Point, Polyline, Segment, SegmentRelation};

/// Simple closed polygon. Vertices are stored in the given cyclic order
/// (either orientation).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct JordanPolygon {
    vertices: Vec<Point>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Interior,
    Boundary,
    Exterior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveRegion {
    InClosureOfInterior,
    InClosureOfExterior,
    Mixed,
}

impl JordanPolygon {
    /// Validates simplicity and nonzero area. Collinear consecutive vertices
    /// are kept.
    pub fn new(vertices: Vec<Point>) -> Result<JordanPolygon, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices { needed: 3, got: n });
        }
        for i in 0..n {
            if vertices[i] == vertices[(i + 1) % n] {
                return Err(GeometryError::RepeatedVertex(vertices[i].clone()));
            }
        }
        let poly = JordanPolygon { vertices };
        if poly.twice_signed_area().is_zero() {
            return Err(GeometryError::ZeroArea);
        }
        let edges: Vec<Segment> = poly.edges().collect();
        for i in 0..n {
            for j in i + 1..n {
                let rel = segment_relation(&edges[i], &edges[j]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let ok = if adjacent {
                    rel == SegmentRelation::SharedEndpointOnly
                } else {
                    rel == SegmentRelation::Disjoint
                };
                if !ok {
                    return Err(GeometryError::NotSimple);
                }
            }
        }
        Ok(poly)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| {
            Segment::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()).expect("validated")
        })
    }

    pub fn twice_signed_area(&self) -> Coord {
        let n = self.vertices.len();
        let mut acc = Coord::ZERO;
        for i in 0..n {
            let p = &self.vertices[i];
            let q = &self.vertices[(i + 1) % n];
            acc = &acc + &(&(&p.x * &q.y) - &(&q.x * &p.y));
        }
        acc
    }

    /// The boundary as a closed polyline (first vertex repeated at the end).
    pub fn as_closed_polyline(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.push(self.vertices[0].clone());
        Polyline::new(v).expect("validated")
    }

    /// Largest L∞ norm over the vertices.
    pub fn max_linf_norm(&self) -> Coord {
        let origin = Point::int(0, 0);
        self.vertices.iter().map(|v| v.linf(&origin)).max().unwrap_or(Coord::ZERO)
    }
}

/// Even-odd classification with exact boundary detection.
pub fn point_in_polygon(poly: &JordanPolygon, p: &Point) -> Region {
    let mut inside = false;
    for e in poly.edges() {
        if e.contains(p) {
            return Region::Boundary;
        }
        let (a, b) = (e.a(), e.b());
        // half-open rule on y avoids double counting at vertices
        if a.y <= p.y && p.y < b.y {
            if orient(a, b, p) == Ordering::Greater {
                inside = !inside;
            }
        } else if b.y <= p.y && p.y < a.y && orient(a, b, p) == Ordering::Less {
            inside = !inside;
        }
    }
    if inside {
        Region::Interior
    } else {
        Region::Exterior
    }
}

/// Decides whether a curve lies in the closed interior or the closed
/// exterior of `poly`. Each segment is split at every boundary contact and the
/// midpoints of the open pieces are classified. A curve lying entirely on the
/// boundary is reported as `InClosureOfInterior`.
pub fn curve_vs_polygon(curve: &Polyline, poly: &JordanPolygon) -> CurveRegion {
    segments_vs_polygon(curve.segments(), poly)
}

pub fn segments_vs_polygon(segments: impl Iterator<Item = Segment>, poly: &JordanPolygon) -> CurveRegion {
    let edges: Vec<Segment> = poly.edges().collect();
    let mut saw_interior = false;
    let mut saw_exterior = false;
    let two = Coord::int(2);
    for s in segments {
        let mut cuts = vec![Coord::ZERO, Coord::ONE];
        for e in &edges {
            if let Some((t0, t1)) = s.intersection_params(e) {
                cuts.push(t0);
                cuts.push(t1);
            }
        }
        cuts.sort();
        cuts.dedup();
        for w in cuts.windows(2) {
            let mid = &(&w[0] + &w[1]) / &two;
            match point_in_polygon(poly, &s.point_at(&mid)) {
                Region::Interior => saw_interior = true,
                Region::Exterior => saw_exterior = true,
                Region::Boundary => {}
            }
            if saw_interior && saw_exterior {
                return CurveRegion::Mixed;
            }
        }
    }
    if saw_exterior {
        CurveRegion::InClosureOfExterior
    } else {
        CurveRegion::InClosureOfInterior
    }
}
