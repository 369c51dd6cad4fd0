use crate::corridor::analyze_corridor;
use crate::forest::{
    chi_n, classify_components, edge_intensity, grid_unit_boxes, validate_forest, validate_planarity, EscapeIndex,
    ForestCheck, GeometricGraph, WindowSpec,
};
use crate::generators::{
    contour, drainage_grs, dual_tree, fixture_corridor, g_phi, graph_union, iso_points, ust_wilson, DrainageSpec,
    GeneratorError, GridSpec, PhiSchedule,
};
use crate::geometry::{Coord, Point};

use super::{derive_seed, AnalysisConfig, ExperimentConfig, HarnessError, ModelConfig};

/// Frozen column order of the per-seed stats file.
pub const STATS_COLUMNS: [&str; 15] = [
    "seed_index",
    "seed",
    "vertices",
    "edges",
    "valid",
    "lambda_hat",
    "chi",
    "n0",
    "n1",
    "n2",
    "n3plus",
    "trifurcation_density",
    "doors",
    "traces",
    "error",
];

/// Frozen column order of the aggregate file.
pub const SUMMARY_COLUMNS: [&str; 4] = ["column", "count", "mean", "stderr"];

pub fn build_model(model: &ModelConfig, seed: u64) -> Result<GeometricGraph, GeneratorError> {
    match model {
        ModelConfig::Ust { width, height, boundary } => {
            Ok(ust_wilson(&GridSpec::new(*width, *height)?.boundary(*boundary), seed))
        }
        ModelConfig::UstDual { width, height, boundary } => {
            let spec = GridSpec::new(*width, *height)?.boundary(*boundary);
            let t = ust_wilson(&spec, seed);
            let d = dual_tree(&t, &spec)?;
            graph_union(&[t, d])
        }
        ModelConfig::Contour { width, height, boundary, eps } => {
            let spec = GridSpec::new(*width, *height)?.boundary(*boundary);
            contour(&ust_wilson(&spec, seed), &eps.0)
        }
        ModelConfig::GPhi { width, height, boundary, phi } => {
            let spec = GridSpec::new(*width, *height)?.boundary(*boundary);
            g_phi(&ust_wilson(&spec, seed), &PhiSchedule::new(phi.clone())?)
        }
        ModelConfig::Drainage { width, height, p, tie_break } => {
            drainage_grs(&DrainageSpec::new(*width, *height, *p, *tie_break, seed))
        }
        ModelConfig::Iso { width, height } => Ok(iso_points(&GridSpec::new(*width, *height)?)),
        ModelConfig::Fixture { l, teeth } => fixture_corridor(*l, *teeth),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub seed_index: usize,
    pub seed: u64,
    pub vertices: usize,
    pub edges: usize,
    pub valid: bool,
    pub lambda_hat: Option<f64>,
    /// `(n, χ_n)` pairs in configuration order.
    pub chi: Vec<(u32, u64)>,
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3plus: usize,
    /// Share of inner-box vertices with escape degree at least 3; forests only.
    pub trifurcation_density: Option<f64>,
    pub doors: Option<usize>,
    /// Per two-ended component: `id:doors` with doors joined by `|`.
    pub traces: String,
    pub error: String,
}

impl StatsRow {
    fn failed(seed_index: usize, seed: u64, error: String) -> StatsRow {
        StatsRow {
            seed_index,
            seed,
            vertices: 0,
            edges: 0,
            valid: false,
            lambda_hat: None,
            chi: Vec::new(),
            n0: 0,
            n1: 0,
            n2: 0,
            n3plus: 0,
            trifurcation_density: None,
            doors: None,
            traces: String::new(),
            error,
        }
    }

    fn fields(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        vec![
            self.seed_index.to_string(),
            self.seed.to_string(),
            self.vertices.to_string(),
            self.edges.to_string(),
            self.valid.to_string(),
            opt(self.lambda_hat),
            self.chi.iter().map(|(n, c)| format!("{n}:{c}")).collect::<Vec<_>>().join(";"),
            self.n0.to_string(),
            self.n1.to_string(),
            self.n2.to_string(),
            self.n3plus.to_string(),
            opt(self.trifurcation_density),
            self.doors.map(|d| d.to_string()).unwrap_or_default(),
            self.traces.clone(),
            self.error.clone(),
        ]
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.6}")
}

/// Lower-left corner of the `n`-box centred at `c`.
pub fn centred_box_origin(c: &Point, n: u32) -> Point {
    let h = -&Coord::ratio(i64::from(n), 2);
    c.offset(&h, &h)
}

/// Share of vertices in the inner box with at least three escaping branches.
pub fn trifurcation_density(g: &GeometricGraph, w: &WindowSpec) -> Option<f64> {
    let idx = EscapeIndex::new(g, &w.outer_rect()).ok()?;
    let inner = w.inner_rect();
    let (mut total, mut tri) = (0usize, 0usize);
    for v in 0..g.vertex_count() {
        if inner.contains(g.vertex(v)) {
            total += 1;
            tri += usize::from(idx.escape_degree(v) >= 3);
        }
    }
    (total > 0).then(|| tri as f64 / total as f64)
}

/// Statistics of one sample. Cycles only invalidate it when
/// `require_forest` is set.
pub fn analyze_graph(
    analysis: &AnalysisConfig,
    require_forest: bool,
    w: &WindowSpec,
    g: &GeometricGraph,
    seed_index: usize,
    seed: u64,
) -> StatsRow {
    let planar = validate_planarity(g).is_empty();
    let forest_ok = !require_forest || validate_forest(g) == ForestCheck::Ok;
    let mut row = StatsRow::failed(seed_index, seed, String::new());
    row.vertices = g.vertex_count();
    row.edges = g.edge_count();
    row.valid = planar && forest_ok;
    if !planar {
        row.error = "improper intersection".into();
    } else if !forest_ok {
        row.error = "cycle in forest model".into();
    }
    if analysis.lambda {
        row.lambda_hat = edge_intensity(g, &grid_unit_boxes(&w.inner_rect(), &Coord::ZERO)).ok().map(|c| c.to_f64());
    }
    row.chi = analysis.chi.iter().map(|&n| (n, chi_n(g, n, &centred_box_origin(w.origin(), n)))).collect();
    let c = classify_components(g, w);
    row.n0 = c.counts.finite;
    row.n1 = c.counts.one_ended;
    row.n2 = c.counts.two_ended;
    row.n3plus = c.counts.trifurcating;
    if analysis.trifurcation {
        row.trifurcation_density = trifurcation_density(g, w);
    }
    if let Some(d) = &analysis.doors {
        match analyze_corridor(g, &d.k.0, &d.l.0, w) {
            Ok(a) => {
                row.doors = Some(a.lines.len());
                row.traces = a
                    .report
                    .traces
                    .iter()
                    .map(|t| {
                        let ds: Vec<String> = t.doors.iter().map(|d| d.to_string()).collect();
                        format!("{}:{}", t.component_id, ds.join("|"))
                    })
                    .collect::<Vec<_>>()
                    .join(";");
            }
            Err(e) => {
                row.valid = false;
                row.error = e.to_string();
            }
        }
    }
    row
}

fn run_one(cfg: &ExperimentConfig, w: &WindowSpec, seed_index: usize) -> (StatsRow, Option<GeometricGraph>) {
    let seed = derive_seed(cfg.master_seed, seed_index as u64);
    match build_model(&cfg.model, seed) {
        Ok(g) => {
            let row = analyze_graph(&cfg.analysis, cfg.model.is_forest(), w, &g, seed_index, seed);
            let keep = cfg.output.figures.is_some();
            (row, keep.then_some(g))
        }
        Err(e) => (StatsRow::failed(seed_index, seed, e.to_string()), None),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub column: String,
    pub count: usize,
    pub mean: f64,
    pub stderr: f64,
}

/// Sample mean and standard error, `stderr = sd / √n` with the `n − 1`
/// variance. The error is zero for fewer than two values.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

pub fn aggregate(rows: &[StatsRow]) -> Vec<AggregateRow> {
    let mut cols: Vec<(String, Vec<f64>)> =
        vec![("lambda_hat".into(), rows.iter().filter_map(|r| r.lambda_hat).collect())];
    let mut sizes: Vec<u32> = rows.iter().flat_map(|r| r.chi.iter().map(|(n, _)| *n)).collect();
    sizes.sort_unstable();
    sizes.dedup();
    for n in sizes {
        let xs = rows.iter().flat_map(|r| r.chi.iter().filter(|(m, _)| *m == n).map(|(_, c)| *c as f64)).collect();
        cols.push((format!("chi_{n}"), xs));
    }
    let ok: Vec<&StatsRow> = rows.iter().filter(|r| r.error.is_empty() || r.vertices > 0).collect();
    cols.push(("n0".into(), ok.iter().map(|r| r.n0 as f64).collect()));
    cols.push(("n1".into(), ok.iter().map(|r| r.n1 as f64).collect()));
    cols.push(("n2".into(), ok.iter().map(|r| r.n2 as f64).collect()));
    cols.push(("n3plus".into(), ok.iter().map(|r| r.n3plus as f64).collect()));
    cols.push(("trifurcation_density".into(), rows.iter().filter_map(|r| r.trifurcation_density).collect()));
    cols.push(("doors".into(), rows.iter().filter_map(|r| r.doors.map(|d| d as f64)).collect()));
    cols.push(("valid".into(), rows.iter().map(|r| f64::from(u8::from(r.valid))).collect()));
    cols.into_iter()
        .filter(|(_, xs)| !xs.is_empty())
        .map(|(column, xs)| {
            let (mean, stderr) = mean_stderr(&xs);
            AggregateRow { column, count: xs.len(), mean, stderr }
        })
        .collect()
}

/// Header plus one line per row.
pub fn rows_csv(rows: &[StatsRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(STATS_COLUMNS).expect("in-memory write");
    for r in rows {
        w.write_record(r.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub rows: Vec<StatsRow>,
    pub aggregate: Vec<AggregateRow>,
    /// Samples kept for rendering, by seed index.
    pub graphs: Vec<Option<GeometricGraph>>,
    pub window: WindowSpec,
}

impl ExperimentOutput {
    pub fn all_valid(&self) -> bool {
        self.rows.iter().all(|r| r.valid)
    }

    pub fn rows_csv(&self) -> String {
        rows_csv(&self.rows)
    }

    pub fn summary_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SUMMARY_COLUMNS).expect("in-memory write");
        for a in &self.aggregate {
            w.write_record([a.column.clone(), a.count.to_string(), fmt_f64(a.mean), fmt_f64(a.stderr)])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

/// Runs every replicate, concurrently when the `parallel` feature is on,
/// and folds the rows in seed order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput, HarnessError> {
    let w = cfg.window()?;
    let results: Vec<(StatsRow, Option<GeometricGraph>)> = {
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..cfg.seeds).into_par_iter().map(|i| run_one(cfg, &w, i)).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..cfg.seeds).map(|i| run_one(cfg, &w, i)).collect()
        }
    };
    let (rows, graphs): (Vec<StatsRow>, Vec<Option<GeometricGraph>>) = results.into_iter().unzip();
    let aggregate = aggregate(&rows);
    Ok(ExperimentOutput { rows, aggregate, graphs, window: w })
}
