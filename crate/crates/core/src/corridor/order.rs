use std::collections::HashMap;

use serde::Serialize;

use crate::geometry::{segments_vs_polygon, Coord, CurveRegion, ExtParam, JordanPolygon, PLTopoLine, Point, Polyline};

use super::CorridorError;

/// `γ ∖ γ′` as an open parameter interval of `γ`, when it is a single
/// bounded subarc. `None` stands for NotAPortion.
pub fn portion_difference(g: &PLTopoLine, other: &PLTopoLine) -> Option<(Coord, Coord)> {
    let hits = g.intersection_set(other);
    let (first, last) = (hits.first()?, hits.last()?);
    let mut gaps: Vec<(ExtParam, ExtParam)> = Vec::new();
    if first.0 != ExtParam::NegInf {
        gaps.push((ExtParam::NegInf, first.0.clone()));
    }
    for w in hits.windows(2) {
        gaps.push((w[0].1.clone(), w[1].0.clone()));
    }
    if last.1 != ExtParam::PosInf {
        gaps.push((last.1.clone(), ExtParam::PosInf));
    }
    match gaps.as_slice() {
        [(ExtParam::Fin(a), ExtParam::Fin(b))] => Some((a.clone(), b.clone())),
        _ => None,
    }
}

/// The Jordan curve `J(γ, γ′)`: the two differing arcs glued at their
/// common endpoints.
pub fn jordan_from_pair(g: &PLTopoLine, other: &PLTopoLine) -> Result<JordanPolygon, CorridorError> {
    let (a, b) = portion_difference(g, other).ok_or(CorridorError::NotAPortion)?;
    let (c, d) = portion_difference(other, g).ok_or(CorridorError::NotAPortion)?;
    let arc1 = g.subarc(&a, &b)?;
    let arc2 = other.subarc(&c, &d)?;
    let back = if arc2.first() == arc1.last() && arc2.last() == arc1.first() {
        arc2
    } else if arc2.first() == arc1.first() && arc2.last() == arc1.last() {
        arc2.reversed()
    } else {
        return Err(CorridorError::ArcsDoNotClose);
    };
    let inner = &back.vertices()[1..back.vertices().len() - 1];
    let mut pts: Vec<Point> = arc1.vertices().to_vec();
    pts.extend(inner.iter().cloned());
    Ok(JordanPolygon::new(pts)?)
}

/// A family of topological lines satisfying the pairwise portion
/// hypothesis, with every `J(γ_i, γ_j)` precomputed.
#[derive(Debug, Clone)]
pub struct TopoLineFamily {
    lines: Vec<PLTopoLine>,
    jordan: HashMap<(usize, usize), JordanPolygon>,
}

impl TopoLineFamily {
    pub fn new(lines: Vec<PLTopoLine>) -> Result<TopoLineFamily, CorridorError> {
        if lines.is_empty() {
            return Err(CorridorError::EmptyFamily);
        }
        let mut jordan = HashMap::new();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                let poly = jordan_from_pair(&lines[i], &lines[j]).map_err(|e| match e {
                    CorridorError::NotAPortion => CorridorError::PairNotAPortion(i, j),
                    other => other,
                })?;
                jordan.insert((i, j), poly);
            }
        }
        Ok(TopoLineFamily { lines, jordan })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn lines(&self) -> &[PLTopoLine] {
        &self.lines
    }

    pub fn line(&self, i: usize) -> &PLTopoLine {
        &self.lines[i]
    }

    /// `J(γ_i, γ_j)`; symmetric in `i` and `j`.
    pub fn jordan(&self, i: usize, j: usize) -> &JordanPolygon {
        &self.jordan[&(i.min(j), i.max(j))]
    }

    /// Whether `σ ∈ (γ, γ′)`, i.e. `J(γ, σ)` lies in the closed interior of
    /// `J(γ, γ′)`.
    pub fn between(&self, g: usize, s: usize, gp: usize) -> Result<bool, CorridorError> {
        if g == s || s == gp || g == gp {
            return Err(CorridorError::NotDistinct);
        }
        match segments_vs_polygon(self.jordan(g, s).edges(), self.jordan(g, gp)) {
            CurveRegion::InClosureOfInterior => Ok(true),
            CurveRegion::InClosureOfExterior => Ok(false),
            CurveRegion::Mixed => Err(CorridorError::MixedClassification(g, s, gp)),
        }
    }
}

/// The full ternary relation of a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Betweenness {
    n: usize,
    table: Vec<bool>,
}

impl Betweenness {
    pub fn compute(fam: &TopoLineFamily) -> Result<Betweenness, CorridorError> {
        let n = fam.len();
        let mut table = vec![false; n * n * n];
        for a in 0..n {
            for s in 0..n {
                for b in 0..n {
                    if a != s && s != b && a != b {
                        table[(a * n + s) * n + b] = fam.between(a, s, b)?;
                    }
                }
            }
        }
        Ok(Betweenness { n, table })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `s` strictly between `a` and `b`; false unless all three are distinct.
    pub fn get(&self, a: usize, s: usize, b: usize) -> bool {
        self.table[(a * self.n + s) * self.n + b]
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.n;
        let mut r = AxiomReport { symmetry: true, trichotomy: true, transitivity: true, oriented_triples: 0 };
        for a in 0..n {
            for s in 0..n {
                for b in 0..n {
                    if a == s || s == b || a == b {
                        continue;
                    }
                    r.oriented_triples += 1;
                    if self.get(a, s, b) != self.get(b, s, a) {
                        r.symmetry = false;
                    }
                    if a < s && s < b {
                        let held = [self.get(s, a, b), self.get(a, s, b), self.get(a, b, s)];
                        if held.iter().filter(|&&h| h).count() != 1 {
                            r.trichotomy = false;
                        }
                    }
                    for c in 0..n {
                        if c == a || c == s || c == b {
                            continue;
                        }
                        if self.get(a, s, b) && !self.get(a, s, c) && !self.get(b, s, c) {
                            r.transitivity = false;
                        }
                    }
                }
            }
        }
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub symmetry: bool,
    pub trichotomy: bool,
    pub transitivity: bool,
    /// Ordered triples of distinct indices examined.
    pub oriented_triples: usize,
}

impl AxiomReport {
    pub fn all_hold(&self) -> bool {
        self.symmetry && self.trichotomy && self.transitivity
    }
}

/// The total order induced by betweenness, built by insertion and verified
/// on every triple.
///
/// Of the two orders, the one returned starts with the line whose divergence
/// arc from the last line is lexicographically smaller, each arc read from
/// its smaller endpoint.
pub fn linear_order(fam: &TopoLineFamily) -> Result<Vec<usize>, CorridorError> {
    let rel = Betweenness::compute(fam)?;
    let mut order = order_from(&rel)?;
    if order.len() >= 2 {
        let (f, l) = (order[0], order[order.len() - 1]);
        if anchor(fam.line(l), fam.line(f))? < anchor(fam.line(f), fam.line(l))? {
            order.reverse();
        }
    }
    Ok(order)
}

/// Insertion order from a precomputed relation, before normalisation.
pub fn order_from(rel: &Betweenness) -> Result<Vec<usize>, CorridorError> {
    let mut order: Vec<usize> = Vec::with_capacity(rel.len());
    for x in 0..rel.len() {
        if order.len() < 2 {
            order.push(x);
            continue;
        }
        let (first, last) = (order[0], order[order.len() - 1]);
        if rel.get(x, first, last) {
            order.insert(0, x);
        } else if rel.get(first, last, x) {
            order.push(x);
        } else if rel.get(first, x, last) {
            let pos =
                (1..order.len()).find(|&i| rel.get(first, x, order[i])).ok_or(CorridorError::OrderInconsistent)?;
            order.insert(pos, x);
        } else {
            return Err(CorridorError::OrderInconsistent);
        }
    }
    let mut pos = vec![0; rel.len()];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    for a in 0..rel.len() {
        for s in 0..rel.len() {
            for b in 0..rel.len() {
                if a == s || s == b || a == b {
                    continue;
                }
                let inside = (pos[a] < pos[s] && pos[s] < pos[b]) || (pos[b] < pos[s] && pos[s] < pos[a]);
                if inside != rel.get(a, s, b) {
                    return Err(CorridorError::OrderInconsistent);
                }
            }
        }
    }
    Ok(order)
}

/// The arc of `g` off `other`, read from its lexicographically smaller end.
fn anchor(g: &PLTopoLine, other: &PLTopoLine) -> Result<Vec<Point>, CorridorError> {
    let (a, b) = portion_difference(g, other).ok_or(CorridorError::NotAPortion)?;
    let arc: Polyline = g.subarc(&a, &b)?;
    let mut pts = arc.vertices().to_vec();
    if pts.last() < pts.first() {
        pts.reverse();
    }
    Ok(pts)
}
