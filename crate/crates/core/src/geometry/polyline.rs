use super::{Coord, GeometryError, Point, Rect, Segment};

/// Open polygonal chain with at least two vertices and no repeated
/// consecutive vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polyline {
    vertices: Vec<Point>,
}

/// A point on a polyline: segment index plus a fraction in `[0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct PathPosition {
    pub segment: usize,
    pub t: Coord,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Polyline, GeometryError> {
        if vertices.len() < 2 {
            return Err(GeometryError::TooFewVertices { needed: 2, got: vertices.len() });
        }
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::RepeatedVertex(w[0].clone()));
        }
        Ok(Polyline { vertices })
    }

    /// Like [`Polyline::new`] but drops repeated consecutive vertices first.
    pub fn dedup(mut vertices: Vec<Point>) -> Result<Polyline, GeometryError> {
        vertices.dedup();
        Polyline::new(vertices)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn first(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn last(&self) -> &Point {
        &self.vertices[self.vertices.len() - 1]
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn segment(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i].clone(), self.vertices[i + 1].clone()).expect("consecutive vertices are distinct")
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.segment_count()).map(move |i| self.segment(i))
    }

    pub fn point_at(&self, pos: &PathPosition) -> Point {
        self.vertices[pos.segment].lerp(&self.vertices[pos.segment + 1], &pos.t)
    }

    pub fn reversed(&self) -> Polyline {
        let mut v = self.vertices.clone();
        v.reverse();
        Polyline { vertices: v }
    }

    /// The sub-chain from `from` to the end.
    pub fn suffix_from(&self, from: &PathPosition) -> Result<Polyline, GeometryError> {
        let mut v = vec![self.point_at(from)];
        v.extend(self.vertices[from.segment + 1..].iter().cloned());
        Polyline::dedup(v)
    }

    /// The sub-chain from the start to `to`.
    pub fn prefix_to(&self, to: &PathPosition) -> Result<Polyline, GeometryError> {
        let mut v: Vec<Point> = self.vertices[..=to.segment].to_vec();
        v.push(self.point_at(to));
        Polyline::dedup(v)
    }

    /// Whether no two non-adjacent segments meet and adjacent ones meet only
    /// at their shared vertex.
    pub fn is_simple(&self) -> bool {
        use super::{segment_relation, SegmentRelation};
        let segs: Vec<Segment> = self.segments().collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let rel = segment_relation(&segs[i], &segs[j]);
                let ok = if j == i + 1 {
                    rel == SegmentRelation::SharedEndpointOnly && segs[i].a() != segs[j].b()
                } else {
                    rel == SegmentRelation::Disjoint
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// Exact positions of the first intersection with and the last exit from a
/// closed box. Both are `None` when the path avoids the box.
pub fn path_first_hit_last_exit(path: &Polyline, bx: &Rect) -> (Option<PathPosition>, Option<PathPosition>) {
    let mut first = None;
    let mut last = None;
    for (i, s) in path.segments().enumerate() {
        if let Some((t0, t1)) = bx.clip(&s) {
            if first.is_none() {
                first = Some(PathPosition { segment: i, t: t0 });
            }
            last = Some(PathPosition { segment: i, t: t1 });
        }
    }
    (first, last)
}
