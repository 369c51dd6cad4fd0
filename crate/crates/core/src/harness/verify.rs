//! The acceptance suite. Every criterion returns a deterministic detail
//! string; the concatenation of those strings is the stats file compared
//! for reproducibility.

use std::fmt::Write;
use std::time::{Duration, Instant};

use crate::corridor::{analyze_corridor, linear_order, Betweenness, TopoLineFamily};
use crate::forest::{
    chi_n, classify_components, components, edge_intensity, grid_unit_boxes, peeling_depth, validate_forest,
    validate_planarity, ForestCheck, GeometricGraph, PeelDepth, WindowSpec,
};
use crate::generators::{
    bump_family, contour, drainage_grs, dual_tree, fixture_corridor, fixture_window, g_phi, graph_union, ust_wilson,
    BoundaryCondition, DrainageSpec, GridSpec, PhiSchedule, TieBreak,
};
use crate::geometry::{Coord, Point, Rect};

use super::{centred_box_origin, derive_seed, mean_stderr, trifurcation_density, HarnessError};

pub const DEFAULT_MASTER_SEED: u64 = 20_240_601;

pub const C1_GRID: usize = 15;
pub const C1_SEEDS: usize = 50;
pub const C1_EPS: (i64, i64) = (1, 4);
pub const C1_RUNTIME: Duration = Duration::from_secs(10);

pub const C2_GRID: usize = 15;
pub const C2_SEEDS: usize = 50;

pub const C3_GRID: usize = 200;
pub const C3_SEEDS: usize = 100;
pub const C3_SIZES: [u32; 3] = [5, 10, 20];
pub const C3_LAMBDA_MARGIN: i64 = 20;
pub const C3_SIGMAS: f64 = 3.0;
pub const C3_RUNTIME: Duration = Duration::from_secs(60);

/// `(L, seeds)`: the UST lives on `2L × 2L`, inner half-width `L/2`,
/// outer `L − 1`.
pub const C4_SCALES: [(i64, usize); 3] = [(10, 200), (20, 100), (40, 50)];
pub const C4_DECAY: f64 = 0.5;

pub const C5_GRID: usize = 40;
pub const C5_SEEDS: usize = 10;
pub const C5_INNER: i64 = 10;
pub const C5_OUTER: i64 = 18;

pub const C6_WIDTH: usize = 400;
pub const C6_HEIGHT: usize = 1000;
pub const C6_K: i64 = 2;
pub const C6_L: i64 = 20;
pub const C6_SEEDS: usize = 50;
pub const C6_CONNECTED: f64 = 0.95;
pub const C6_RUNTIME: Duration = Duration::from_secs(60);

pub const C7_LINES: usize = 8;
pub const C7_SEEDS: usize = 100;
pub const C7_RUNTIME: Duration = Duration::from_secs(10);

pub const C8_SIZES: [i64; 2] = [16, 40];
pub const C8_K: i64 = 4;
pub const C8_L: i64 = 6;
pub const C8_RUNTIME: Duration = Duration::from_secs(5);

pub const C9_GRID: usize = 40;
pub const C9_SEEDS: usize = 100;
pub const C9_N_MAX: usize = 10;
pub const C9_MAX_PEEL: usize = 10_000;
pub const C9_TAIL_FACTOR: f64 = 8.0;
pub const C9_TAIL_BOUND: f64 = 16.0;
pub const C9_LAMBDA_MARGIN: i64 = 10;
pub const C9_SIGMAS: f64 = 3.0;
pub const C9_RUNTIME: Duration = Duration::from_secs(120);

#[derive(Debug, Clone, PartialEq)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    /// Measured values; deterministic given the master seed.
    pub detail: String,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} {:<28} {} ({:.2}s) {}",
            self.id,
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Stats file contents: one line per criterion without timings.
pub fn stats_text(outcomes: &[CriterionOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let _ = writeln!(s, "{}\t{}\t{}\t{}", o.id, o.name, if o.pass { "pass" } else { "fail" }, o.detail);
    }
    s
}

fn par_map<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Replicate seed `k` of criterion `c`.
pub fn criterion_seed(master: u64, c: u8, k: usize) -> u64 {
    derive_seed(derive_seed(master, u64::from(c)), k as u64)
}

fn timed(
    id: u8,
    name: &'static str,
    limit: Option<Duration>,
    run: impl FnOnce() -> (bool, String),
) -> CriterionOutcome {
    let t = Instant::now();
    let (ok, detail) = run();
    let elapsed = t.elapsed();
    let pass = ok && limit.map_or(true, |l| elapsed < l);
    CriterionOutcome { id, name, pass, detail, elapsed }
}

fn f(x: f64) -> String {
    format!("{x:.6}")
}

fn single_component(g: &GeometricGraph) -> bool {
    components(g).iter().all(|&c| c == 0)
}

pub fn contour_cycle_law(master: u64) -> CriterionOutcome {
    timed(1, "contour cycle law", Some(C1_RUNTIME), || {
        let spec = GridSpec::new(C1_GRID, C1_GRID).expect("grid");
        let want = 4 * C1_GRID * C1_GRID;
        let eps = Coord::ratio(C1_EPS.0, C1_EPS.1);
        let bad = par_map(C1_SEEDS, |k| {
            let t = ust_wilson(&spec, criterion_seed(master, 1, k));
            match contour(&t, &eps) {
                Ok(c) => {
                    let ok = c.vertex_count() == want
                        && c.edge_count() == want
                        && (0..want).all(|v| c.degree(v) == 2)
                        && single_component(&c);
                    usize::from(!ok)
                }
                Err(_) => 1,
            }
        })
        .into_iter()
        .sum::<usize>();
        (bad == 0, format!("samples={C1_SEEDS} cycle_length={want} failures={bad}"))
    })
}

pub fn duality(master: u64) -> CriterionOutcome {
    timed(2, "duality", None, || {
        let spec = GridSpec::new(C2_GRID, C2_GRID).expect("grid");
        let faces = (C2_GRID - 1) * (C2_GRID - 1);
        let bad = par_map(C2_SEEDS, |k| {
            let t = ust_wilson(&spec, criterion_seed(master, 2, k));
            let Ok(d) = dual_tree(&t, &spec) else { return 1 };
            let tree = d.vertex_count() == faces
                && d.edge_count() == faces - 1
                && validate_forest(&d) == ForestCheck::Ok
                && single_component(&d);
            let planar = graph_union(&[t, d]).map(|u| validate_planarity(&u).is_empty()).unwrap_or(false);
            usize::from(!(tree && planar))
        })
        .into_iter()
        .sum::<usize>();
        (bad == 0, format!("samples={C2_SEEDS} dual_vertices={faces} dual_edges={} failures={bad}", faces - 1))
    })
}

pub fn box_crossing_bound(master: u64) -> CriterionOutcome {
    timed(3, "box crossing bound", Some(C3_RUNTIME), || {
        let side = C3_GRID as i64 - 1;
        let region = Rect::new(Point::int(0, 0), Point::int(side, side)).expect("rect");
        let boxes = grid_unit_boxes(&region, &Coord::int(C3_LAMBDA_MARGIN));
        let centre = Point::new(Coord::ratio(side, 2), Coord::ratio(side, 2));
        let rows = par_map(C3_SEEDS, |k| {
            let spec = DrainageSpec::new(C3_GRID, C3_GRID, (1, 2), TieBreak::Left, criterion_seed(master, 3, k));
            let g = drainage_grs(&spec).expect("valid spec");
            let lambda = edge_intensity(&g, &boxes).expect("boxes").to_f64();
            let chi: Vec<f64> =
                C3_SIZES.iter().map(|&n| chi_n(&g, n, &centred_box_origin(&centre, n)) as f64).collect();
            (lambda, chi)
        });
        let (lambda, _) = mean_stderr(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
        let mut ok = true;
        let mut detail = format!("lambda_hat={}", f(lambda));
        for (i, n) in C3_SIZES.iter().enumerate() {
            let (m, se) = mean_stderr(&rows.iter().map(|r| r.1[i]).collect::<Vec<_>>());
            let bound = 4.0 * lambda * f64::from(*n) + C3_SIGMAS * se;
            ok &= m <= bound;
            let _ = write!(detail, " chi_{n}={}±{} bound={}", f(m), f(se), f(bound));
        }
        (ok, detail)
    })
}

pub fn trifurcation_decay(master: u64) -> CriterionOutcome {
    timed(4, "trifurcation decay", None, || {
        let mut dens = Vec::new();
        let mut detail = String::new();
        for (l, seeds) in C4_SCALES {
            let m = 2 * l as usize;
            let spec = GridSpec::new(m, m).expect("grid").boundary(BoundaryCondition::Free);
            let c = Coord::ratio(2 * l - 1, 2);
            let w = WindowSpec::new(Coord::ratio(l, 2), Coord::int(l - 1), Point::new(c.clone(), c)).expect("window");
            let xs: Vec<f64> = par_map(seeds, |k| {
                trifurcation_density(&ust_wilson(&spec, criterion_seed(master, 4, k + 1000 * l as usize)), &w)
                    .unwrap_or(0.0)
            });
            let (mean, se) = mean_stderr(&xs);
            let _ = write!(detail, "L={l}:{}±{} ", f(mean), f(se));
            dens.push(mean);
        }
        let monotone = dens.windows(2).all(|p| p[1] <= p[0]);
        let decay = dens[dens.len() - 1] <= dens[0] * C4_DECAY;
        let _ = write!(detail, "nonincreasing={monotone} halved={decay}");
        (monotone && decay, detail)
    })
}

pub fn two_ended_dichotomy(master: u64) -> CriterionOutcome {
    timed(5, "two-ended dichotomy", None, || {
        let c = Coord::ratio(C5_GRID as i64 - 1, 2);
        let origin = Point::new(c.clone(), c.clone());
        let w = WindowSpec::new(Coord::int(C5_INNER), Coord::int(C5_OUTER), origin).expect("window");
        let lo = (&c - &Coord::int(C5_INNER)).to_f64().ceil() as i64;
        let hi = (&c + &Coord::int(C5_INNER)).to_f64().floor() as i64;
        let columns = (hi - lo + 1) as usize;
        let counts = par_map(C5_SEEDS, |k| {
            let tie = if k % 2 == 0 { TieBreak::Left } else { TieBreak::Right };
            let g = drainage_grs(&DrainageSpec::new(C5_GRID, C5_GRID, (1, 1), tie, criterion_seed(master, 5, k)))
                .expect("valid spec");
            classify_components(&g, &w).counts
        });
        let ok = counts.iter().all(|c| c.one_ended == 0 && c.trifurcating == 0 && c.two_ended == columns);
        let c0 = &counts[0];
        (ok, format!("columns={columns} n1={} n2={} n3plus={}", c0.one_ended, c0.two_ended, c0.trifurcating))
    })
}

/// Share of unordered pairs of inner-box vertices in a common component.
pub fn connected_pair_share(g: &GeometricGraph, inner: &Rect) -> Option<f64> {
    let labels = components(g);
    let mut sizes = std::collections::BTreeMap::<usize, u64>::new();
    let mut n = 0u64;
    for v in 0..g.vertex_count() {
        if inner.contains(g.vertex(v)) {
            *sizes.entry(labels[v]).or_default() += 1;
            n += 1;
        }
    }
    if n < 2 {
        return None;
    }
    let same: u64 = sizes.values().map(|s| s * (s - 1) / 2).sum();
    Some(same as f64 / (n * (n - 1) / 2) as f64)
}

/// Window for the one-ended test: low in the box, shifted right of centre
/// to offset the drift of the left tie rule.
pub fn one_ended_window() -> WindowSpec {
    let x = (C6_WIDTH + C6_HEIGHT / 4) as i64;
    WindowSpec::new(Coord::int(C6_K), Coord::int(C6_L), Point::new(Coord::ratio(x, 2), Coord::int(C6_L + 1)))
        .expect("window")
}

pub fn one_ended_dichotomy(master: u64) -> CriterionOutcome {
    timed(6, "one-ended dichotomy", Some(C6_RUNTIME), || {
        let w = one_ended_window();
        let rows = par_map(C6_SEEDS, |k| {
            let spec = DrainageSpec::new(C6_WIDTH, C6_HEIGHT, (1, 2), TieBreak::Left, criterion_seed(master, 6, k));
            let g = drainage_grs(&spec).expect("valid spec");
            let share = connected_pair_share(&g, &w.inner_rect()).unwrap_or(1.0);
            (share, classify_components(&g, &w).counts.trifurcating)
        });
        let (share, _) = mean_stderr(&rows.iter().map(|r| r.0).collect::<Vec<_>>());
        let tri_seeds = rows.iter().filter(|r| r.1 > 0).count();
        let ok = share >= C6_CONNECTED && tri_seeds == 0;
        (ok, format!("connected_share={} seeds_with_n3plus={tri_seeds}/{C6_SEEDS}", f(share)))
    })
}

pub fn betweenness_axioms(master: u64) -> CriterionOutcome {
    timed(7, "betweenness axioms", Some(C7_RUNTIME), || {
        let want = C7_LINES * (C7_LINES - 1) * (C7_LINES - 2);
        let results = par_map(C7_SEEDS, |k| {
            let fam = bump_family(C7_LINES, criterion_seed(master, 7, k));
            let heights: Vec<i64> = fam.iter().map(|(h, _)| *h).collect();
            let Ok(lines) = TopoLineFamily::new(fam.into_iter().map(|(_, l)| l).collect()) else { return (false, 0) };
            let Ok(rel) = Betweenness::compute(&lines) else { return (false, 0) };
            let ax = rel.check_axioms();
            let Ok(order) = linear_order(&lines) else { return (false, ax.oriented_triples) };
            let mut by_height: Vec<usize> = (0..C7_LINES).collect();
            by_height.sort_by_key(|&i| heights[i]);
            let reversed: Vec<usize> = by_height.iter().rev().copied().collect();
            (ax.all_hold() && (order == by_height || order == reversed), ax.oriented_triples)
        });
        let failures = results.iter().filter(|r| !r.0).count();
        let triples_ok = results.iter().all(|r| r.1 == want);
        (failures == 0 && triples_ok, format!("families={C7_SEEDS} triples_each={want} failures={failures}"))
    })
}

pub fn corridor_integration(_master: u64) -> CriterionOutcome {
    timed(8, "corridor integration", Some(C8_RUNTIME), || {
        let mut ok = true;
        let mut detail = String::new();
        for l in C8_SIZES {
            let g = fixture_corridor(l, false).expect("fixture");
            let Ok(a) = analyze_corridor(&g, &Coord::int(C8_K), &Coord::int(C8_L), &fixture_window(l)) else {
                ok = false;
                let _ = write!(detail, "L={l}:error ");
                continue;
            };
            let xs: Vec<i64> = a.order.iter().map(|&i| a.lines[i].door.center.0).collect();
            let by_x = xs.windows(2).all(|p| p[0] < p[1]) || xs.windows(2).all(|p| p[0] > p[1]);
            let all: Vec<usize> = (0..a.lines.len()).collect();
            let middle = a.report.traces.len() == 1 && a.report.traces[0].doors == all && a.report.traces[0].convex;
            ok &= !a.lines.is_empty() && by_x && middle;
            let _ = write!(detail, "L={l}:doors={} ordered={by_x} full_convex_trace={middle} ", a.lines.len());
        }
        (ok, detail.trim_end().to_string())
    })
}

pub fn phi_summability(master: u64) -> CriterionOutcome {
    timed(9, "phi summability", Some(C9_RUNTIME), || {
        let spec = GridSpec::new(C9_GRID, C9_GRID).expect("grid");
        let centre = spec.center();
        let trees = par_map(C9_SEEDS, |k| ust_wilson(&spec, criterion_seed(master, 9, k)));
        let depths: Vec<PeelDepth> =
            par_map(C9_SEEDS, |k| peeling_depth(&trees[k], spec.index(centre.0, centre.1), C9_MAX_PEEL));
        let Ok(sched) = PhiSchedule::from_quantiles(&depths, C9_N_MAX) else {
            return (false, "schedule unavailable".into());
        };
        let bound = C9_TAIL_FACTOR * sched.tail_sum(&depths);
        let hi = C9_GRID as i64 - 1 - C9_LAMBDA_MARGIN;
        let half = Coord::ratio(1, 2);
        let boxes: Vec<Rect> = (C9_LAMBDA_MARGIN..=hi)
            .flat_map(|y| (C9_LAMBDA_MARGIN..=hi).map(move |x| (x, y)))
            .map(|(x, y)| Rect::centered(&Point::int(x, y), &half))
            .collect();
        let lambdas: Vec<f64> = par_map(C9_SEEDS, |k| {
            g_phi(&trees[k], &sched)
                .ok()
                .and_then(|g| edge_intensity(&g, &boxes).ok())
                .map_or(f64::INFINITY, |c| c.to_f64())
        });
        let (lambda, se) = mean_stderr(&lambdas);
        let phi: Vec<String> = sched.levels().map(|(n, p)| format!("{n}:{p}")).collect();
        let ok = bound <= C9_TAIL_BOUND && lambda <= bound + C9_SIGMAS * se;
        (ok, format!("phi=[{}] tail_bound={} lambda_phi={}±{}", phi.join(","), f(bound), f(lambda), f(se)))
    })
}

/// Criteria 1 to 9 in order.
pub fn run_criteria(master: u64) -> Vec<CriterionOutcome> {
    vec![
        contour_cycle_law(master),
        duality(master),
        box_crossing_bound(master),
        trifurcation_decay(master),
        two_ended_dichotomy(master),
        one_ended_dichotomy(master),
        betweenness_axioms(master),
        corridor_integration(master),
        phi_summability(master),
    ]
}

/// Criterion 10 from the stats files of two independent runs.
pub fn reproducibility(first: &str, second: &str, elapsed: Duration) -> CriterionOutcome {
    let same = first == second;
    CriterionOutcome {
        id: 10,
        name: "reproducibility",
        pass: same && !first.is_empty(),
        detail: format!("bytes={} identical={same}", first.len()),
        elapsed,
    }
}

/// Runs the whole suite twice and returns all ten outcomes with the stats
/// text of the first run.
pub fn run_suite(master: u64) -> (Vec<CriterionOutcome>, String) {
    let mut outcomes = run_criteria(master);
    let first = stats_text(&outcomes);
    let t = Instant::now();
    let second = stats_text(&run_criteria(master));
    outcomes.push(reproducibility(&first, &second, t.elapsed()));
    (outcomes, first)
}

/// Writes the stats text to `path`.
pub fn write_stats(path: &std::path::Path, text: &str) -> Result<(), HarnessError> {
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_share() {
        let g = GeometricGraph::new(
            vec![Point::int(0, 0), Point::int(1, 0), Point::int(2, 0), Point::int(9, 9)],
            vec![(0, 1)],
            false,
        )
        .unwrap();
        let r = Rect::new(Point::int(0, 0), Point::int(2, 2)).unwrap();
        assert_eq!(connected_pair_share(&g, &r), Some(1.0 / 3.0));
        assert_eq!(connected_pair_share(&GeometricGraph::empty(), &r), None);
    }

    #[test]
    fn seed_streams_differ() {
        assert_ne!(criterion_seed(1, 1, 0), criterion_seed(1, 2, 0));
        assert_eq!(criterion_seed(1, 3, 4), criterion_seed(1, 3, 4));
    }

    #[test]
    fn stats_have_no_timings() {
        let o =
            CriterionOutcome { id: 3, name: "x", pass: true, detail: "a=1".into(), elapsed: Duration::from_secs(7) };
        assert_eq!(stats_text(&[o.clone()]), "3\tx\tpass\ta=1\n");
        assert!(o.line().contains("PASS (7.00s)"));
        let r = reproducibility("a", "b", Duration::ZERO);
        assert!(!r.pass);
    }

    #[test]
    fn one_ended_window_fits() {
        let w = one_ended_window();
        let region = Rect::new(Point::int(0, 0), Point::int(C6_WIDTH as i64 - 1, C6_HEIGHT as i64 - 1)).unwrap();
        assert!(region.strictly_contains_rect(&w.outer_rect()));
    }

    #[test]
    fn exact_criteria_pass() {
        for o in [corridor_integration(0), two_ended_dichotomy(0)] {
            assert!(o.pass, "{}", o.line());
        }
    }
}
