use std::cmp::Ordering;
use std::fmt;

use super::{Coord, GeometryError};

/// A point of the plane. Ordered lexicographically by `x` then `y`, so the
/// minimum of a set is its westmost-southmost element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Coord,
    pub y: Coord,
}

impl Point {
    pub fn new(x: impl Into<Coord>, y: impl Into<Coord>) -> Point {
        Point { x: x.into(), y: y.into() }
    }

    pub fn int(x: i64, y: i64) -> Point {
        Point { x: Coord::int(x), y: Coord::int(y) }
    }

    pub fn offset(&self, dx: &Coord, dy: &Coord) -> Point {
        Point { x: &self.x + dx, y: &self.y + dy }
    }

    pub fn sub(&self, other: &Point) -> (Coord, Coord) {
        (&self.x - &other.x, &self.y - &other.y)
    }

    /// `self + t·(other − self)`.
    pub fn lerp(&self, other: &Point, t: &Coord) -> Point {
        if t.is_zero() {
            return self.clone();
        }
        if *t == Coord::ONE {
            return other.clone();
        }
        Point { x: &self.x + &(t * &(&other.x - &self.x)), y: &self.y + &(t * &(&other.y - &self.y)) }
    }

    /// L∞ distance.
    pub fn linf(&self, other: &Point) -> Coord {
        Coord::max(&(&self.x - &other.x).abs(), &(&self.y - &other.y).abs())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the cross product `(b − a) × (c − a)`: `Greater` for a left turn.
pub fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    let lhs = &(&b.x - &a.x) * &(&c.y - &a.y);
    let rhs = &(&b.y - &a.y) * &(&c.x - &a.x);
    lhs.cmp(&rhs)
}

/// A closed segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    a: Point,
    b: Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Disjoint,
    SharedEndpointOnly,
    /// Interior crossings, collinear overlaps and endpoint-in-interior touches.
    ImproperIntersection,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Segment, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn point_at(&self, t: &Coord) -> Point {
        self.a.lerp(&self.b, t)
    }

    pub fn reversed(&self) -> Segment {
        Segment { a: self.b.clone(), b: self.a.clone() }
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &Point) -> bool {
        orient(&self.a, &self.b, p) == Ordering::Equal && in_box(&self.a, &self.b, p)
    }

    /// Parameter of a point known to lie on the supporting line.
    pub fn param_of(&self, p: &Point) -> Coord {
        let (dx, dy) = self.b.sub(&self.a);
        if !dx.is_zero() {
            &(&p.x - &self.a.x) / &dx
        } else {
            &(&p.y - &self.a.y) / &dy
        }
    }

    /// Exact intersection of two closed segments, as a parameter interval on
    /// `self` (`t0 == t1` for a single point).
    pub fn intersection_params(&self, other: &Segment) -> Option<(Coord, Coord)> {
        let o1 = orient(&self.a, &self.b, &other.a);
        let o2 = orient(&self.a, &self.b, &other.b);
        if o1 == Ordering::Equal && o2 == Ordering::Equal {
            // collinear: overlap of parameter ranges
            let s = self.param_of(&other.a);
            let e = self.param_of(&other.b);
            let (lo, hi) = if s <= e { (s, e) } else { (e, s) };
            let lo = Coord::max(&lo, &Coord::ZERO);
            let hi = Coord::min(&hi, &Coord::ONE);
            return (lo <= hi).then_some((lo, hi));
        }
        let o3 = orient(&other.a, &other.b, &self.a);
        let o4 = orient(&other.a, &other.b, &self.b);
        if o1 == o2 || o3 == o4 {
            return None;
        }
        // proper or touching non-collinear intersection: solve exactly
        let (rx, ry) = self.b.sub(&self.a);
        let (sx, sy) = other.b.sub(&other.a);
        let (qx, qy) = other.a.sub(&self.a);
        let denom = &(&rx * &sy) - &(&ry * &sx);
        let t = &(&(&qx * &sy) - &(&qy * &sx)) / &denom;
        Some((t.clone(), t))
    }

    pub fn min_x(&self) -> &Coord {
        std::cmp::min(&self.a.x, &self.b.x)
    }
    pub fn max_x(&self) -> &Coord {
        std::cmp::max(&self.a.x, &self.b.x)
    }
    pub fn min_y(&self) -> &Coord {
        std::cmp::min(&self.a.y, &self.b.y)
    }
    pub fn max_y(&self) -> &Coord {
        std::cmp::max(&self.a.y, &self.b.y)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}-{:?}]", self.a, self.b)
    }
}

fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    std::cmp::min(&a.x, &b.x) <= &p.x
        && &p.x <= std::cmp::max(&a.x, &b.x)
        && std::cmp::min(&a.y, &b.y) <= &p.y
        && &p.y <= std::cmp::max(&a.y, &b.y)
}

/// Exact classification of how two closed segments meet.
pub fn segment_relation(s1: &Segment, s2: &Segment) -> SegmentRelation {
    if s1.max_x() < s2.min_x() || s2.max_x() < s1.min_x() || s1.max_y() < s2.min_y() || s2.max_y() < s1.min_y() {
        return SegmentRelation::Disjoint;
    }
    let Some((t0, t1)) = s1.intersection_params(s2) else {
        return SegmentRelation::Disjoint;
    };
    if t0 != t1 {
        return SegmentRelation::ImproperIntersection;
    }
    let p = s1.point_at(&t0);
    let endpoint_of_1 = p == s1.a || p == s1.b;
    let endpoint_of_2 = p == s2.a || p == s2.b;
    if endpoint_of_1 && endpoint_of_2 {
        SegmentRelation::SharedEndpointOnly
    } else {
        SegmentRelation::ImproperIntersection
    }
}

/// Closed axis-aligned rectangle.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Result<Rect, GeometryError> {
        if min.x > max.x || min.y > max.y {
            return Err(GeometryError::InvertedRect);
        }
        Ok(Rect { min, max })
    }

    /// `center + [−half, half]²`.
    pub fn centered(center: &Point, half: &Coord) -> Rect {
        let nh = -half;
        Rect { min: center.offset(&nh, &nh), max: center.offset(half, half) }
    }

    /// `[x, x+1] × [y, y+1]`.
    pub fn unit(x: i64, y: i64) -> Rect {
        Rect { min: Point::int(x, y), max: Point::int(x + 1, y + 1) }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn contains_open(&self, p: &Point) -> bool {
        self.min.x < p.x && p.x < self.max.x && self.min.y < p.y && p.y < self.max.y
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.contains(p) && !self.contains_open(p)
    }

    /// Whether `other` is contained in the open interior of `self`.
    pub fn strictly_contains_rect(&self, other: &Rect) -> bool {
        self.contains_open(&other.min) && self.contains_open(&other.max)
    }

    fn bbox_disjoint(&self, s: &Segment) -> bool {
        s.max_x() < &self.min.x || s.min_x() > &self.max.x || s.max_y() < &self.min.y || s.min_y() > &self.max.y
    }

    /// Parameter interval `[t0, t1]` of the part of `s` inside the closed
    /// rectangle, or `None` when they are disjoint.
    pub fn clip(&self, s: &Segment) -> Option<(Coord, Coord)> {
        if self.bbox_disjoint(s) {
            return None;
        }
        let a_in = self.contains(&s.a);
        let b_in = self.contains(&s.b);
        if a_in && b_in {
            return Some((Coord::ZERO, Coord::ONE));
        }
        let (dx, dy) = s.b.sub(&s.a);
        let mut t0 = Coord::ZERO;
        let mut t1 = Coord::ONE;
        let constraints = [
            (-&dx, &s.a.x - &self.min.x),
            (dx.clone(), &self.max.x - &s.a.x),
            (-&dy, &s.a.y - &self.min.y),
            (dy.clone(), &self.max.y - &s.a.y),
        ];
        for (p, q) in constraints {
            match p.signum() {
                Ordering::Equal => {
                    if q.signum() == Ordering::Less {
                        return None;
                    }
                }
                Ordering::Less => {
                    let r = &q / &p;
                    if r > t1 {
                        return None;
                    }
                    if r > t0 {
                        t0 = r;
                    }
                }
                Ordering::Greater => {
                    let r = &q / &p;
                    if r < t0 {
                        return None;
                    }
                    if r < t1 {
                        t1 = r;
                    }
                }
            }
        }
        Some((t0, t1))
    }

    pub fn meets(&self, s: &Segment) -> bool {
        self.clip(s).is_some()
    }

    /// Whether `s` meets the boundary of the rectangle. A segment meets the
    /// closed box but misses its boundary exactly when it lies in the open
    /// interior, which by convexity is decided by the endpoints.
    pub fn boundary_meets(&self, s: &Segment) -> bool {
        if self.contains_open(&s.a) && self.contains_open(&s.b) {
            return false;
        }
        self.meets(s)
    }

    /// First parameter at which `s` touches the boundary.
    pub fn first_boundary_param(&self, s: &Segment) -> Option<Coord> {
        let (t0, t1) = self.clip(s)?;
        if self.contains_open(&s.a) {
            if self.contains_open(&s.b) {
                None
            } else {
                Some(t1)
            }
        } else {
            Some(t0)
        }
    }

    pub fn boundary_segments(&self) -> Vec<Segment> {
        let c = [
            self.min.clone(),
            Point { x: self.max.x.clone(), y: self.min.y.clone() },
            self.max.clone(),
            Point { x: self.min.x.clone(), y: self.max.y.clone() },
        ];
        (0..4).filter_map(|i| Segment::new(c[i].clone(), c[(i + 1) % 4].clone()).ok()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(Point::int(a.0, a.1), Point::int(b.0, b.1)).unwrap()
    }

    #[test]
    fn relation_examples() {
        assert_eq!(segment_relation(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))), SegmentRelation::Disjoint);
        assert_eq!(segment_relation(&seg((0, 0), (1, 0)), &seg((1, 0), (1, 1))), SegmentRelation::SharedEndpointOnly);
        let s1 = seg((0, 0), (2, 2));
        let s2 = seg((0, 2), (2, 0));
        assert_eq!(segment_relation(&s1, &s2), SegmentRelation::ImproperIntersection);
        // crossing point solved exactly: (1, 1)
        let (t0, t1) = s1.intersection_params(&s2).unwrap();
        assert_eq!(t0, t1);
        assert_eq!(s1.point_at(&t0), Point::int(1, 1));
    }

    #[test]
    fn relation_degenerate_touches() {
        // collinear, shared endpoint, opposite directions
        assert_eq!(segment_relation(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 0))), SegmentRelation::SharedEndpointOnly);
        // collinear overlap
        assert_eq!(segment_relation(&seg((0, 0), (2, 0)), &seg((0, 0), (1, 0))), SegmentRelation::ImproperIntersection);
        // T-junction: endpoint in the other's interior
        assert_eq!(segment_relation(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 1))), SegmentRelation::ImproperIntersection);
        // identical
        assert_eq!(segment_relation(&seg((0, 0), (2, 0)), &seg((2, 0), (0, 0))), SegmentRelation::ImproperIntersection);
        // parallel, disjoint
        assert_eq!(segment_relation(&seg((0, 0), (2, 0)), &seg((0, 1), (2, 1))), SegmentRelation::Disjoint);
        // collinear with a gap, bboxes overlap in y only
        assert_eq!(segment_relation(&seg((0, 0), (1, 1)), &seg((2, 2), (3, 3))), SegmentRelation::Disjoint);
    }

    #[test]
    fn degenerate_segment_rejected() {
        assert!(Segment::new(Point::int(1, 1), Point::int(1, 1)).is_err());
    }

    #[test]
    fn clip_and_boundary() {
        let r = Rect::centered(&Point::int(0, 0), &Coord::int(1));
        let s = seg((-2, 0), (2, 0));
        assert_eq!(r.clip(&s), Some((Coord::ratio(1, 4), Coord::ratio(3, 4))));
        assert!(r.boundary_meets(&s));
        let inner = Segment::new(Point::new(Coord::ratio(-1, 2), 0), Point::new(Coord::ratio(1, 2), 0)).unwrap();
        assert!(r.meets(&inner));
        assert!(!r.boundary_meets(&inner));
        // touching the corner counts
        assert!(r.meets(&seg((1, 1), (2, 2))));
        assert_eq!(r.clip(&seg((1, 1), (2, 2))), Some((Coord::ZERO, Coord::ZERO)));
        assert_eq!(r.clip(&seg((2, 2), (3, 3))), None);
        assert_eq!(r.first_boundary_param(&s), Some(Coord::ratio(1, 4)));
        assert_eq!(r.first_boundary_param(&seg((0, 0), (4, 0))), Some(Coord::ratio(1, 4)));
    }

    fn small_seg() -> impl Strategy<Value = Segment> {
        (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4, 1i64..=3)
            .prop_filter("distinct", |(a, b, c, d, _)| (a, b) != (c, d))
            .prop_map(|(a, b, c, d, den)| {
                Segment::new(
                    Point::new(Coord::ratio(a, den), Coord::ratio(b, den)),
                    Point::new(Coord::ratio(c, den), Coord::ratio(d, den)),
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn relation_is_symmetric(s1 in small_seg(), s2 in small_seg()) {
            prop_assert_eq!(segment_relation(&s1, &s2), segment_relation(&s2, &s1));
            prop_assert_eq!(segment_relation(&s1, &s2), segment_relation(&s1.reversed(), &s2));
        }

        #[test]
        fn clip_endpoints_lie_in_rect(s in small_seg(), h in 1i64..4) {
            let r = Rect::centered(&Point::int(0, 0), &Coord::int(h));
            if let Some((t0, t1)) = r.clip(&s) {
                prop_assert!(t0 <= t1);
                prop_assert!(r.contains(&s.point_at(&t0)));
                prop_assert!(r.contains(&s.point_at(&t1)));
            }
        }
    }
}
