use std::collections::BTreeSet;

use serde::Serialize;

use crate::forest::{classify_components, ComponentReport, EndsClass, GeometricGraph, WindowSpec};
use crate::geometry::{Coord, ExtParam, Segment};

use super::{door_family, linear_order, scan_doors, AxiomReport, Betweenness, CorridorError, DoorLine, Rejection};

/// Doors whose line meets one of `segments`. Every contact must lie on the
/// door segment.
pub fn trace_of_segments(
    segments: impl IntoIterator<Item = Segment>,
    lines: &[DoorLine],
) -> Result<BTreeSet<usize>, CorridorError> {
    let mut out = BTreeSet::new();
    for s in segments {
        for (i, line) in lines.iter().enumerate() {
            let (lo, hi) = (ExtParam::Fin(line.door_range.0.clone()), ExtParam::Fin(line.door_range.1.clone()));
            for (a, b) in line.gamma.segment_hits(&s) {
                if a < lo || b > hi {
                    return Err(CorridorError::TraceOffDoor(i));
                }
                out.insert(i);
            }
        }
    }
    Ok(out)
}

/// `Tr(C)` for a classified component; empty unless it is two-ended.
pub fn door_trace(
    g: &GeometricGraph,
    c: &ComponentReport,
    lines: &[DoorLine],
) -> Result<BTreeSet<usize>, CorridorError> {
    if c.ends != EndsClass::TwoEnded {
        return Ok(BTreeSet::new());
    }
    let members: BTreeSet<usize> = g.component_of(c.component_id).into_iter().collect();
    let segs = g.edges().iter().enumerate().filter(|(_, (a, _))| members.contains(a)).map(|(e, _)| g.segment(e));
    trace_of_segments(segs, lines)
}

/// Minimum and maximum of `x` under `order`, without repeats.
pub fn extreme_points(x: &BTreeSet<usize>, order: &[usize]) -> Vec<usize> {
    let mut found = order.iter().copied().filter(|i| x.contains(i));
    let first = found.next();
    let last = found.last();
    first.into_iter().chain(last).collect()
}

/// Whether `trace` is an interval of `order`.
pub fn check_trace_convex(trace: &BTreeSet<usize>, order: &[usize]) -> bool {
    let pos: Vec<usize> = order.iter().enumerate().filter(|(_, i)| trace.contains(i)).map(|(p, _)| p).collect();
    pos.len() == trace.len() && pos.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Finite-scale stand-in for unboundedness: the trace holds both ends of
/// the detected order.
pub fn trace_touches_extremes(trace: &BTreeSet<usize>, order: &[usize]) -> bool {
    match (order.first(), order.last()) {
        (Some(f), Some(l)) => trace.contains(f) && trace.contains(l),
        _ => false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoorSummary {
    pub center: (i64, i64),
    pub segment: [(String, String); 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceSummary {
    pub component_id: usize,
    pub doors: Vec<usize>,
    pub convex: bool,
    /// Substitute for unboundedness at finite scale.
    pub touches_extremes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorridorReport {
    pub candidates: usize,
    pub doors: Vec<DoorSummary>,
    pub rejected: Vec<Rejection>,
    pub order: Vec<usize>,
    pub traces: Vec<TraceSummary>,
    pub axioms: Option<AxiomReport>,
}

impl CorridorReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }
}

/// Everything the corridor layer derives from one graph and window.
#[derive(Debug, Clone)]
pub struct CorridorAnalysis {
    pub lines: Vec<DoorLine>,
    pub order: Vec<usize>,
    pub report: CorridorReport,
}

fn coord_pair(p: &crate::geometry::Point) -> (String, String) {
    (p.x.to_string(), p.y.to_string())
}

pub fn analyze_corridor(
    g: &GeometricGraph,
    k: &Coord,
    l: &Coord,
    w: &WindowSpec,
) -> Result<CorridorAnalysis, CorridorError> {
    let scan = scan_doors(g, k, l, w)?;
    let candidates = scan.candidates;
    let (lines, mut rejected, fam) = door_family(scan.doors);
    rejected.extend(scan.rejected);
    rejected.sort_by_key(|r| r.center);
    let (order, axioms) = match &fam {
        Some(f) => (linear_order(f)?, Some(Betweenness::compute(f)?.check_axioms())),
        None => (Vec::new(), None),
    };
    let mut traces = Vec::new();
    for c in classify_components(g, w).reports {
        if c.ends != EndsClass::TwoEnded {
            continue;
        }
        let t = door_trace(g, &c, &lines)?;
        traces.push(TraceSummary {
            component_id: c.component_id,
            convex: check_trace_convex(&t, &order),
            touches_extremes: trace_touches_extremes(&t, &order),
            doors: t.into_iter().collect(),
        });
    }
    let doors = lines
        .iter()
        .map(|d| DoorSummary {
            center: d.door.center,
            segment: [coord_pair(d.door.door_segment.a()), coord_pair(d.door.door_segment.b())],
        })
        .collect();
    let report = CorridorReport { candidates, doors, rejected, order: order.clone(), traces, axioms };
    Ok(CorridorAnalysis { lines, order, report })
}
