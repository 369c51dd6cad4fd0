use serde::Serialize;

use crate::forest::{classify_in, forward_vertices, pendant_of_rect, tree_path, EndsClass, GeometricGraph, WindowSpec};
use crate::geometry::{
    path_first_hit_last_exit, Coord, Direction, PLTopoLine, PathPosition, Point, Polyline, Rect, Segment,
};

use super::{jordan_from_pair, CorridorError, TopoLineFamily};

/// An occurrence of the door event at `2ℓ·center`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Door {
    /// Lattice index of the centre, in units of `2ℓ`.
    pub center: (i64, i64),
    pub center_point: Point,
    /// Component ids of the two one-ended components, germ order.
    pub components: (usize, usize),
    pub germ1: Polyline,
    pub germ2: Polyline,
    pub door_segment: Segment,
}

/// A candidate centre where the event held but no door could be built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rejection {
    pub center: (i64, i64),
    pub reason: String,
}

#[derive(Debug, Clone, Default)]
pub struct DoorScan {
    pub doors: Vec<Door>,
    pub rejected: Vec<Rejection>,
    /// Candidate centres examined.
    pub candidates: usize,
}

fn ceil(c: &Coord) -> i64 {
    -(-c).floor_i64().expect("window fits in i64")
}

/// Lattice indices `d` with `2ℓd` in the closed inner box and the `ℓ`-box
/// around it inside the open outer box.
pub fn door_candidates(l: &Coord, w: &WindowSpec) -> Vec<(i64, i64)> {
    let step = l * &Coord::int(2);
    let inner = w.inner_rect();
    let outer = w.outer_rect();
    let (x0, x1) = (ceil(&(&inner.min.x / &step)), (&inner.max.x / &step).floor_i64().expect("fits"));
    let (y0, y1) = (ceil(&(&inner.min.y / &step)), (&inner.max.y / &step).floor_i64().expect("fits"));
    let mut out = Vec::new();
    for dy in y0..=y1 {
        for dx in x0..=x1 {
            let c = Point::new(&step * &Coord::int(dx), &step * &Coord::int(dy));
            if outer.strictly_contains_rect(&Rect::centered(&c, l)) {
                out.push((dx, dy));
            }
        }
    }
    out
}

/// Doors of `g` on the `2ℓ`-grid inside the window, with diagnostics for
/// centres where the event held but germ construction failed.
pub fn scan_doors(g: &GeometricGraph, k: &Coord, l: &Coord, w: &WindowSpec) -> Result<DoorScan, CorridorError> {
    if *k <= Coord::ZERO || k >= l {
        return Err(CorridorError::InvalidScales);
    }
    let outer = w.outer_rect();
    let mut scan = DoorScan::default();
    let step = l * &Coord::int(2);
    for d in door_candidates(l, w) {
        scan.candidates += 1;
        let c = Point::new(&step * &Coord::int(d.0), &step * &Coord::int(d.1));
        let kbox = Rect::centered(&c, k);
        let lbox = Rect::centered(&c, l);
        let class = classify_in(g, &kbox, &outer);
        if class.counts.one_ended != 2 {
            continue;
        }
        if !pendant_of_rect(g, &kbox, &outer).iter().all(|&v| lbox.contains_open(g.vertex(v))) {
            continue;
        }
        let mut reps: Vec<(Point, usize, usize)> = class
            .reports
            .iter()
            .filter(|r| r.ends == EndsClass::OneEnded)
            .map(|r| {
                let u = g
                    .component_of(r.component_id)
                    .into_iter()
                    .filter(|&v| kbox.contains(g.vertex(v)))
                    .min_by(|&a, &b| g.vertex(a).cmp(g.vertex(b)))
                    .expect("component has a vertex in the box");
                (g.vertex(u).clone(), u, r.component_id)
            })
            .collect();
        reps.sort();
        let germs: Result<Vec<Polyline>, String> = reps.iter().map(|(_, u, _)| germ(g, *u, &kbox, w)).collect();
        match germs {
            Err(reason) => scan.rejected.push(Rejection { center: d, reason }),
            Ok(gs) => {
                let (germ1, germ2) = (gs[0].clone(), gs[1].clone());
                let door_segment =
                    Segment::new(germ1.first().clone(), germ2.first().clone()).expect("germs of distinct components");
                scan.doors.push(Door {
                    center: d,
                    center_point: c,
                    components: (reps[0].2, reps[1].2),
                    germ1,
                    germ2,
                    door_segment,
                });
            }
        }
    }
    Ok(scan)
}

pub fn detect_doors(g: &GeometricGraph, k: &Coord, l: &Coord, w: &WindowSpec) -> Result<Vec<Door>, CorridorError> {
    Ok(scan_doors(g, k, l, w)?.doors)
}

/// Escape path of `u`: the forward path when oriented, otherwise the tree
/// path to the component vertex farthest from the window origin.
fn escape_path(g: &GeometricGraph, u: usize, w: &WindowSpec) -> Result<Polyline, String> {
    let vs = if g.oriented() {
        forward_vertices(g, u).map_err(|e| e.to_string())?
    } else {
        let o = w.origin();
        let far = g
            .component_of(u)
            .into_iter()
            .max_by(|&a, &b| {
                let (pa, pb) = (g.vertex(a), g.vertex(b));
                pa.linf(o).cmp(&pb.linf(o)).then_with(|| pb.cmp(pa))
            })
            .expect("component contains u");
        tree_path(g, u, far).map_err(|e| e.to_string())?
    };
    Polyline::new(vs.iter().map(|&v| g.vertex(v).clone()).collect())
        .map_err(|_| format!("vertex {u} has no escape path"))
}

/// The part of the escape path after its last contact with the `k`-box, cut
/// at its first contact with the outer boundary.
fn germ(g: &GeometricGraph, u: usize, kbox: &Rect, w: &WindowSpec) -> Result<Polyline, String> {
    let path = escape_path(g, u, w)?;
    let (_, exit) = path_first_hit_last_exit(&path, kbox);
    let exit = exit.expect("path starts in the box");
    let tail = path.suffix_from(&exit).map_err(|_| format!("escape path of vertex {u} ends in the k-box"))?;
    let outer = w.outer_rect();
    for (i, s) in tail.segments().enumerate() {
        if let Some(t) = outer.first_boundary_param(&s) {
            return tail
                .prefix_to(&PathPosition { segment: i, t })
                .map_err(|_| format!("germ of vertex {u} starts on the outer boundary"));
        }
    }
    Err(format!("escape path of vertex {u} stays inside the outer box"))
}

/// `γ_d`: germ 1 reversed, the door segment, germ 2, and straight rays
/// continuing the last segment of each germ.
pub fn build_gamma(door: &Door) -> Result<PLTopoLine, CorridorError> {
    let mut chain: Vec<Point> = door.germ1.reversed().vertices().to_vec();
    chain.extend(door.germ2.vertices().iter().cloned());
    let dir = |p: &Polyline| {
        let v = p.vertices();
        Direction::between(&v[v.len() - 2], &v[v.len() - 1]).expect("distinct vertices")
    };
    let chain = Polyline::new(chain).map_err(|_| CorridorError::SpliceNotSimple)?;
    PLTopoLine::new(dir(&door.germ1), chain, dir(&door.germ2)).map_err(|_| CorridorError::SpliceNotSimple)
}

/// A door with its topological line. The door segment occupies the chain
/// parameters `door_range`.
#[derive(Debug, Clone)]
pub struct DoorLine {
    pub door: Door,
    pub gamma: PLTopoLine,
    pub door_range: (Coord, Coord),
}

impl DoorLine {
    pub fn new(door: Door) -> Result<DoorLine, CorridorError> {
        let gamma = build_gamma(&door)?;
        let i = Coord::int(door.germ1.segment_count() as i64);
        let door_range = (i.clone(), &i + &Coord::ONE);
        Ok(DoorLine { door, gamma, door_range })
    }
}

/// Door lines admitted greedily in scan order: a door joins when its line
/// builds and forms a valid pair with every admitted line.
pub fn door_family(doors: Vec<Door>) -> (Vec<DoorLine>, Vec<Rejection>, Option<TopoLineFamily>) {
    let mut accepted: Vec<DoorLine> = Vec::new();
    let mut rejected = Vec::new();
    for door in doors {
        let center = door.center;
        let line = match DoorLine::new(door) {
            Ok(l) => l,
            Err(e) => {
                rejected.push(Rejection { center, reason: e.to_string() });
                continue;
            }
        };
        let clash =
            accepted.iter().find_map(|a| jordan_from_pair(&a.gamma, &line.gamma).err().map(|e| (a.door.center, e)));
        match clash {
            Some((with, e)) => rejected.push(Rejection { center, reason: format!("{e} with door {with:?}") }),
            None => accepted.push(line),
        }
    }
    let fam = if accepted.is_empty() {
        None
    } else {
        Some(
            TopoLineFamily::new(accepted.iter().map(|d| d.gamma.clone()).collect())
                .expect("pairs checked on admission"),
        )
    };
    (accepted, rejected, fam)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::classify_components;
    use crate::generators::{drainage_grs, fixture_corridor, fixture_window, DrainageSpec, TieBreak};

    fn poly(pts: &[(i64, i64)]) -> Polyline {
        Polyline::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).unwrap()
    }

    fn door(g1: &[(i64, i64)], g2: &[(i64, i64)]) -> Door {
        let (germ1, germ2) = (poly(g1), poly(g2));
        let door_segment = Segment::new(germ1.first().clone(), germ2.first().clone()).unwrap();
        Door { center: (0, 0), center_point: Point::int(0, 0), components: (0, 1), germ1, germ2, door_segment }
    }

    #[test]
    fn fixture_has_one_vertical_door() {
        for teeth in [false, true] {
            let g = fixture_corridor(16, teeth).unwrap();
            let doors = detect_doors(&g, &Coord::int(4), &Coord::int(6), &fixture_window(16)).unwrap();
            assert_eq!(doors.len(), 1);
            let d = &doors[0];
            assert_eq!(d.center, (0, 0));
            assert_eq!(d.door_segment.a(), &Point::int(-4, -4));
            assert_eq!(d.door_segment.b(), &Point::int(-4, 4));
            assert_eq!(d.germ1.last(), &Point::int(0, -15));
            assert_eq!(d.germ2.last(), &Point::int(0, 15));
        }
    }

    #[test]
    fn fixture_gamma_separates_the_rakes() {
        let g = fixture_corridor(16, false).unwrap();
        let d = detect_doors(&g, &Coord::int(4), &Coord::int(6), &fixture_window(16)).unwrap().remove(0);
        let line = DoorLine::new(d).unwrap();
        let chain = line.gamma.chain().vertices();
        assert_eq!(chain.first(), Some(&Point::int(0, -15)));
        assert_eq!(chain.last(), Some(&Point::int(0, 15)));
        assert_eq!(line.gamma.left_dir(), &Direction::new(Coord::ZERO, Coord::int(-1)).unwrap());
        // the middle path crosses the line exactly on the door segment
        let cross = line.gamma.segment_hits(&Segment::new(Point::int(-16, 0), Point::int(16, 0)).unwrap());
        let mid = crate::geometry::ExtParam::Fin(&line.door_range.0 + &Coord::ratio(1, 2));
        assert_eq!(cross, vec![(mid.clone(), mid)]);
    }

    #[test]
    fn wide_fixture_has_five_axis_doors() {
        let g = fixture_corridor(40, true).unwrap();
        let doors = detect_doors(&g, &Coord::int(4), &Coord::int(6), &fixture_window(40)).unwrap();
        let centers: Vec<(i64, i64)> = doors.iter().map(|d| d.center).collect();
        assert_eq!(centers, vec![(-2, 0), (-1, 0), (0, 0), (1, 0), (2, 0)]);
        let (lines, rejected, fam) = door_family(doors);
        assert_eq!((lines.len(), rejected.len()), (5, 0));
        assert_eq!(fam.unwrap().len(), 5);
    }

    #[test]
    fn straight_germs_give_a_vertical_line() {
        let line = build_gamma(&door(&[(0, -1), (0, -5)], &[(0, 1), (0, 5)])).unwrap();
        assert_eq!(line.chain().vertices(), poly(&[(0, -5), (0, -1), (0, 1), (0, 5)]).vertices());
        assert_eq!(line.right_dir(), &Direction::new(Coord::ZERO, Coord::ONE).unwrap());
    }

    #[test]
    fn crossing_germs_are_rejected() {
        let d = door(&[(0, -1), (0, -3), (5, -3), (5, 3), (-2, 3)], &[(0, 1), (0, 5)]);
        assert_eq!(build_gamma(&d), Err(CorridorError::SpliceNotSimple));
        let touching = door(&[(0, -1), (2, -1), (2, 1), (0, 2)], &[(0, 1), (0, 5)]);
        assert_eq!(build_gamma(&touching), Err(CorridorError::SpliceNotSimple));
    }

    #[test]
    fn full_drainage_has_no_doors() {
        let g = drainage_grs(&DrainageSpec::new(40, 40, (1, 1), TieBreak::Left, 0)).unwrap();
        let w = WindowSpec::new(Coord::int(12), Coord::int(18), Point::new(Coord::ratio(39, 2), Coord::ratio(39, 2)))
            .unwrap();
        assert_eq!(classify_components(&g, &w).counts.one_ended, 0);
        let scan = scan_doors(&g, &Coord::int(2), &Coord::int(3), &w).unwrap();
        assert!(scan.candidates > 0);
        assert!(scan.doors.is_empty() && scan.rejected.is_empty());
    }

    #[test]
    fn scales_are_checked() {
        let g = fixture_corridor(16, false).unwrap();
        let w = fixture_window(16);
        assert_eq!(scan_doors(&g, &Coord::int(6), &Coord::int(6), &w).unwrap_err(), CorridorError::InvalidScales);
        assert_eq!(scan_doors(&g, &Coord::ZERO, &Coord::int(6), &w).unwrap_err(), CorridorError::InvalidScales);
    }
}
