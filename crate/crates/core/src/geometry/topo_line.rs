use std::cmp::Ordering;

use super::{Coord, GeometryError, Point, Polyline, Segment};

/// Nonzero direction vector, scaled so that `max(|dx|, |dy|) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Direction {
    dx: Coord,
    dy: Coord,
}

impl Direction {
    pub fn new(dx: Coord, dy: Coord) -> Result<Direction, GeometryError> {
        let norm = Coord::max(&dx.abs(), &dy.abs());
        if norm.is_zero() {
            return Err(GeometryError::ZeroDirection);
        }
        Ok(Direction { dx: &dx / &norm, dy: &dy / &norm })
    }

    /// Direction from `a` towards `b`.
    pub fn between(a: &Point, b: &Point) -> Result<Direction, GeometryError> {
        let (dx, dy) = b.sub(a);
        Direction::new(dx, dy)
    }

    pub fn dx(&self) -> &Coord {
        &self.dx
    }

    pub fn dy(&self) -> &Coord {
        &self.dy
    }
}

/// A parameter value on the extended real line.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ExtParam {
    NegInf,
    Fin(Coord),
    PosInf,
}

impl ExtParam {
    fn neg(&self) -> ExtParam {
        match self {
            ExtParam::NegInf => ExtParam::PosInf,
            ExtParam::Fin(c) => ExtParam::Fin(-c),
            ExtParam::PosInf => ExtParam::NegInf,
        }
    }

    fn shift(&self, by: &Coord) -> ExtParam {
        match self {
            ExtParam::Fin(c) => ExtParam::Fin(c + by),
            other => other.clone(),
        }
    }

    pub fn finite(&self) -> Option<&Coord> {
        match self {
            ExtParam::Fin(c) => Some(c),
            _ => None,
        }
    }
}

/// One straight piece of a topological line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Piece {
    LeftRay,
    Chain(usize),
    RightRay,
}

/// Bi-infinite piecewise-linear curve: a ray leaving the first chain vertex,
/// the chain, and a ray leaving the last chain vertex.
///
/// Global parametrisation: `-s` on the left ray at distance parameter `s`,
/// `i + t` on chain segment `i`, and `m + s` on the right ray, where `m` is
/// the number of chain segments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PLTopoLine {
    left: Direction,
    chain: Polyline,
    right: Direction,
}

/// A straight piece as `base + t·dir` with `t ∈ [0, 1]` or `t ∈ [0, ∞)`.
struct Line<'a> {
    base: &'a Point,
    dx: Coord,
    dy: Coord,
    unbounded: bool,
}

fn cross(ax: &Coord, ay: &Coord, bx: &Coord, by: &Coord) -> Coord {
    &(ax * by) - &(ay * bx)
}

fn dot(ax: &Coord, ay: &Coord, bx: &Coord, by: &Coord) -> Coord {
    &(ax * bx) + &(ay * by)
}

impl<'a> Line<'a> {
    fn upper(&self) -> ExtParam {
        if self.unbounded {
            ExtParam::PosInf
        } else {
            ExtParam::Fin(Coord::ONE)
        }
    }

    fn in_range(&self, t: &Coord) -> bool {
        *t >= Coord::ZERO && (self.unbounded || *t <= Coord::ONE)
    }

    /// Intersection with `other` as a closed interval of this piece's local
    /// parameter.
    fn meet(&self, other: &Line<'_>) -> Option<(ExtParam, ExtParam)> {
        let (wx, wy) = other.base.sub(self.base);
        let c = cross(&self.dx, &self.dy, &other.dx, &other.dy);
        if !c.is_zero() {
            let t = &cross(&wx, &wy, &other.dx, &other.dy) / &c;
            let u = &cross(&wx, &wy, &self.dx, &self.dy) / &c;
            return (self.in_range(&t) && other.in_range(&u)).then(|| (ExtParam::Fin(t.clone()), ExtParam::Fin(t)));
        }
        if !cross(&wx, &wy, &self.dx, &self.dy).is_zero() {
            return None;
        }
        let dd = dot(&self.dx, &self.dy, &self.dx, &self.dy);
        let k = dot(&other.dx, &other.dy, &self.dx, &self.dy);
        let t0 = &dot(&wx, &wy, &self.dx, &self.dy) / &dd;
        let (lo, hi) = if other.unbounded {
            if k.signum() == Ordering::Greater {
                (ExtParam::Fin(t0), ExtParam::PosInf)
            } else {
                (ExtParam::NegInf, ExtParam::Fin(t0))
            }
        } else {
            let t1 = &t0 + &(&k / &dd);
            if t0 <= t1 {
                (ExtParam::Fin(t0), ExtParam::Fin(t1))
            } else {
                (ExtParam::Fin(t1), ExtParam::Fin(t0))
            }
        };
        let lo = std::cmp::max(lo, ExtParam::Fin(Coord::ZERO));
        let hi = std::cmp::min(hi, self.upper());
        (lo <= hi).then_some((lo, hi))
    }
}

impl PLTopoLine {
    /// Builds the line and checks that the whole curve is simple.
    pub fn new(left: Direction, chain: Polyline, right: Direction) -> Result<PLTopoLine, GeometryError> {
        let line = PLTopoLine { left, chain, right };
        if !line.is_simple() {
            return Err(GeometryError::NotSimple);
        }
        Ok(line)
    }

    /// A line whose rays continue the first and last chain segments.
    pub fn extending(chain: Polyline) -> Result<PLTopoLine, GeometryError> {
        let v = chain.vertices();
        let left = Direction::between(&v[1], &v[0])?;
        let right = Direction::between(&v[v.len() - 2], &v[v.len() - 1])?;
        PLTopoLine::new(left, chain, right)
    }

    pub fn chain(&self) -> &Polyline {
        &self.chain
    }

    pub fn left_dir(&self) -> &Direction {
        &self.left
    }

    pub fn right_dir(&self) -> &Direction {
        &self.right
    }

    /// Number of chain segments.
    pub fn chain_len(&self) -> usize {
        self.chain.segment_count()
    }

    pub fn pieces(&self) -> impl Iterator<Item = Piece> {
        std::iter::once(Piece::LeftRay)
            .chain((0..self.chain_len()).map(Piece::Chain))
            .chain(std::iter::once(Piece::RightRay))
    }

    fn line(&self, piece: Piece) -> Line<'_> {
        match piece {
            Piece::LeftRay => {
                Line { base: self.chain.first(), dx: self.left.dx.clone(), dy: self.left.dy.clone(), unbounded: true }
            }
            Piece::RightRay => {
                Line { base: self.chain.last(), dx: self.right.dx.clone(), dy: self.right.dy.clone(), unbounded: true }
            }
            Piece::Chain(i) => {
                let v = self.chain.vertices();
                let (dx, dy) = v[i + 1].sub(&v[i]);
                Line { base: &v[i], dx, dy, unbounded: false }
            }
        }
    }

    fn to_global(&self, piece: Piece, lo: ExtParam, hi: ExtParam) -> (ExtParam, ExtParam) {
        match piece {
            Piece::LeftRay => (hi.neg(), lo.neg()),
            Piece::Chain(i) => {
                let i = Coord::int(i as i64);
                (lo.shift(&i), hi.shift(&i))
            }
            Piece::RightRay => {
                let m = Coord::int(self.chain_len() as i64);
                (lo.shift(&m), hi.shift(&m))
            }
        }
    }

    /// Point at a finite global parameter.
    pub fn point_at(&self, g: &Coord) -> Point {
        let m = self.chain_len() as i64;
        let v = self.chain.vertices();
        if *g <= Coord::ZERO {
            let s = -g;
            v[0].offset(&(&s * &self.left.dx), &(&s * &self.left.dy))
        } else if *g >= Coord::int(m) {
            let s = g - &Coord::int(m);
            v[v.len() - 1].offset(&(&s * &self.right.dx), &(&s * &self.right.dy))
        } else {
            let i = g.floor_i64().expect("chain index fits") as usize;
            let t = g - &Coord::int(i as i64);
            v[i].lerp(&v[i + 1], &t)
        }
    }

    /// The bounded sub-arc between two finite global parameters, as a
    /// polyline through every chain vertex strictly between them.
    pub fn subarc(&self, a: &Coord, b: &Coord) -> Result<Polyline, GeometryError> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mut pts = vec![self.point_at(lo)];
        let v = self.chain.vertices();
        for (i, p) in v.iter().enumerate() {
            let gi = Coord::int(i as i64);
            if gi > *lo && gi < *hi {
                pts.push(p.clone());
            }
        }
        pts.push(self.point_at(hi));
        if a > b {
            pts.reverse();
        }
        Polyline::dedup(pts)
    }

    /// The set of global parameters of `self` lying on `other`, as sorted,
    /// merged closed intervals.
    pub fn intersection_set(&self, other: &PLTopoLine) -> Vec<(ExtParam, ExtParam)> {
        let mut raw = Vec::new();
        for p in self.pieces() {
            let lp = self.line(p);
            for q in other.pieces() {
                let lq = other.line(q);
                if let Some((lo, hi)) = lp.meet(&lq) {
                    raw.push(self.to_global(p, lo, hi));
                }
            }
        }
        merge_intervals(raw)
    }

    /// Global parameters where `self` meets a closed segment.
    pub fn segment_hits(&self, s: &Segment) -> Vec<(ExtParam, ExtParam)> {
        let (dx, dy) = s.b().sub(s.a());
        let ls = Line { base: s.a(), dx, dy, unbounded: false };
        let raw =
            self.pieces().filter_map(|p| self.line(p).meet(&ls).map(|(lo, hi)| self.to_global(p, lo, hi))).collect();
        merge_intervals(raw)
    }

    fn is_simple(&self) -> bool {
        let pieces: Vec<Piece> = self.pieces().collect();
        for i in 0..pieces.len() {
            let li = self.line(pieces[i]);
            for (j, pj) in pieces.iter().enumerate().skip(i + 1) {
                let hit = li.meet(&self.line(*pj));
                if j == i + 1 {
                    // the shared point is t = 0 of a left ray and t = 1 of a segment
                    let shared = match pieces[i] {
                        Piece::LeftRay => ExtParam::Fin(Coord::ZERO),
                        _ => ExtParam::Fin(Coord::ONE),
                    };
                    if hit != Some((shared.clone(), shared)) {
                        return false;
                    }
                } else if hit.is_some() {
                    return false;
                }
            }
        }
        true
    }
}

fn merge_intervals(mut raw: Vec<(ExtParam, ExtParam)>) -> Vec<(ExtParam, ExtParam)> {
    raw.sort();
    let mut out: Vec<(ExtParam, ExtParam)> = Vec::new();
    for (lo, hi) in raw {
        match out.last_mut() {
            Some(last) if lo <= last.1 => {
                if hi > last.1 {
                    last.1 = hi;
                }
            }
            _ => out.push((lo, hi)),
        }
    }
    out
}
