use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use forest_ends::corridor::analyze_corridor;
use forest_ends::forest::{read_graph, write_graph, GeometricGraph, WindowSpec};
use forest_ends::generators::{BoundaryCondition, TieBreak};
use forest_ends::geometry::{Coord, Point};
use forest_ends::harness::verify::{run_suite, write_stats, DEFAULT_MASTER_SEED};
use forest_ends::harness::{
    analyze_graph, build_model, corridor_layers, render_svg, rows_csv, run_experiment, AnalysisConfig, DoorConfig,
    ExperimentConfig, ExperimentOutput, Layer, LayerData, ModelConfig, Scalar, SvgView,
};

#[derive(Parser)]
#[command(name = "forest-ends", version, about = "Planar random forests, their ends and corridor orders")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample one graph and write it in the interchange format.
    Generate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-graph statistics for a graph file, as one CSV row.
    Analyze {
        graph: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        l: Option<String>,
        /// Treat cycles as a validation failure.
        #[arg(long)]
        forest: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Doors, their order and traces as a JSON report.
    Corridor {
        graph: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value = "4")]
        k: String,
        #[arg(long, default_value = "6")]
        l: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite; `--out` receives the stats file.
    Verify {
        #[arg(long, default_value_t = DEFAULT_MASTER_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render graph files to SVG.
    Render {
        graph: PathBuf,
        /// Drawn as the dotted dual layer.
        #[arg(long)]
        dual: Option<PathBuf>,
        /// Drawn as the red contour layer.
        #[arg(long)]
        contour: Option<PathBuf>,
        /// Highlight doors found at scales `k`, `l` and hatch the corridor.
        #[arg(long)]
        doors: bool,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value = "4")]
        k: String,
        #[arg(long, default_value = "6")]
        l: String,
        #[arg(long, default_value_t = 12.0)]
        scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a multi-seed experiment from flags or a TOML config.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        l: Option<String>,
        /// Per-seed CSV; the aggregate goes to `<out>.summary.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time sampling and analysis per model.
    Bench {
        #[arg(long, default_value_t = 5)]
        seeds: usize,
        #[arg(long, default_value_t = 100)]
        size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelKind {
    Ust,
    UstDual,
    Contour,
    GPhi,
    Drainage,
    Iso,
    Fixture,
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value = "ust")]
    model: ModelKind,
    #[arg(long, default_value_t = 20)]
    width: usize,
    #[arg(long, default_value_t = 20)]
    height: usize,
    #[arg(long)]
    free: bool,
    /// Contour distance.
    #[arg(long, default_value = "1/4")]
    eps: String,
    /// Peeling schedule `φ(4), φ(5), …` for g-phi.
    #[arg(long, value_delimiter = ',', default_value = "1,2,4")]
    phi: Vec<usize>,
    /// Drainage open probability.
    #[arg(long, default_value = "1/2")]
    p: String,
    #[arg(long)]
    tie_right: bool,
    /// Fixture half size.
    #[arg(long = "size", default_value_t = 16)]
    fixture_size: i64,
    #[arg(long)]
    teeth: bool,
}

#[derive(Args)]
struct WindowArgs {
    #[arg(long)]
    inner: Option<String>,
    #[arg(long)]
    outer: Option<String>,
    /// Window centre `x,y`; defaults to the centre of the bounding box.
    #[arg(long)]
    origin: Option<String>,
}

enum Failure {
    Validation(String),
    Config(String),
}

type CliResult = Result<(), Failure>;

fn config<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Config(e.to_string())
}

fn coord(s: &str) -> Result<Coord, Failure> {
    s.trim().parse().map_err(|e| Failure::Config(format!("bad number {s:?}: {e}")))
}

fn fraction(s: &str) -> Result<(u64, u64), Failure> {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    match (a.trim().parse(), b.trim().parse()) {
        (Ok(a), Ok(b)) => Ok((a, b)),
        _ => Err(Failure::Config(format!("bad fraction {s:?}"))),
    }
}

impl ModelArgs {
    fn to_config(&self) -> Result<ModelConfig, Failure> {
        let (width, height) = (self.width, self.height);
        let boundary = if self.free { BoundaryCondition::Free } else { BoundaryCondition::Wired };
        Ok(match self.model {
            ModelKind::Ust => ModelConfig::Ust { width, height, boundary },
            ModelKind::UstDual => ModelConfig::UstDual { width, height, boundary },
            ModelKind::Contour => ModelConfig::Contour { width, height, boundary, eps: Scalar(coord(&self.eps)?) },
            ModelKind::GPhi => ModelConfig::GPhi { width, height, boundary, phi: self.phi.clone() },
            ModelKind::Drainage => ModelConfig::Drainage {
                width,
                height,
                p: fraction(&self.p)?,
                tie_break: if self.tie_right { TieBreak::Right } else { TieBreak::Left },
            },
            ModelKind::Iso => ModelConfig::Iso { width, height },
            ModelKind::Fixture => ModelConfig::Fixture { l: self.fixture_size, teeth: self.teeth },
        })
    }
}

fn bounding_centre(g: &GeometricGraph) -> (Point, Coord) {
    let vs = g.vertices();
    if vs.is_empty() {
        return (Point::int(0, 0), Coord::int(2));
    }
    let (mut x0, mut y0, mut x1, mut y1) = (vs[0].x.clone(), vs[0].y.clone(), vs[0].x.clone(), vs[0].y.clone());
    for p in vs {
        x0 = Coord::min(&x0, &p.x);
        y0 = Coord::min(&y0, &p.y);
        x1 = Coord::max(&x1, &p.x);
        y1 = Coord::max(&y1, &p.y);
    }
    let two = Coord::int(2);
    let c = Point::new(&(&x0 + &x1) / &two, &(&y0 + &y1) / &two);
    let half = Coord::min(&(&x1 - &x0), &(&y1 - &y0)) / two;
    (c, half)
}

impl WindowArgs {
    fn to_spec(&self, g: &GeometricGraph) -> Result<WindowSpec, Failure> {
        let (centre, half) = bounding_centre(g);
        let origin = match &self.origin {
            Some(s) => {
                let (x, y) = s.split_once(',').ok_or_else(|| Failure::Config(format!("bad origin {s:?}")))?;
                Point::new(coord(x)?, coord(y)?)
            }
            None => centre,
        };
        let outer = match &self.outer {
            Some(s) => coord(s)?,
            None => &half - &Coord::ONE,
        };
        let inner = match &self.inner {
            Some(s) => coord(s)?,
            None => &outer / &Coord::int(2),
        };
        WindowSpec::new(inner, outer, origin).map_err(config)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> CliResult {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Config(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<GeometricGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    read_graph(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn door_config(k: &Option<String>, l: &Option<String>) -> Result<Option<DoorConfig>, Failure> {
    match (k, l) {
        (Some(k), Some(l)) => Ok(Some(DoorConfig { k: Scalar(coord(k)?), l: Scalar(coord(l)?) })),
        (None, None) => Ok(None),
        _ => Err(Failure::Config("--k and --l go together".into())),
    }
}

fn write_experiment(out: &ExperimentOutput, stats: Option<&Path>, figures: Option<&Path>) -> CliResult {
    match stats {
        Some(p) => {
            fs::write(p, out.rows_csv()).map_err(config)?;
            fs::write(p.with_extension("summary.csv"), out.summary_csv()).map_err(config)?;
        }
        None => print!("{}", out.summary_csv()),
    }
    if let Some(dir) = figures {
        fs::create_dir_all(dir).map_err(config)?;
        for (i, g) in out.graphs.iter().enumerate() {
            if let Some(g) = g {
                let layers = [LayerData::graph(Layer::Primal, g)];
                let svg = render_svg(&layers, &SvgView::fit(&layers, 1.0, 12.0));
                fs::write(dir.join(format!("seed_{i:04}.svg")), svg).map_err(config)?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Generate { model, seed, out } => {
            let g = build_model(&model.to_config()?, seed).map_err(config)?;
            emit(&out, &write_graph(&g))
        }
        Command::Analyze { graph, window, k, l, forest, out } => {
            let g = load(&graph)?;
            let w = window.to_spec(&g)?;
            let analysis = AnalysisConfig { doors: door_config(&k, &l)?, ..AnalysisConfig::default() };
            let row = analyze_graph(&analysis, forest, &w, &g, 0, 0);
            emit(&out, &rows_csv(std::slice::from_ref(&row)))?;
            if row.valid {
                Ok(())
            } else {
                Err(Failure::Validation(row.error))
            }
        }
        Command::Corridor { graph, window, k, l, out } => {
            let g = load(&graph)?;
            let w = window.to_spec(&g)?;
            let a =
                analyze_corridor(&g, &coord(&k)?, &coord(&l)?, &w).map_err(|e| Failure::Validation(e.to_string()))?;
            emit(&out, &a.report.to_json())
        }
        Command::Verify { seed, out } => {
            let (outcomes, stats) = run_suite(seed);
            for o in &outcomes {
                println!("{}", o.line());
            }
            if let Some(p) = out {
                write_stats(&p, &stats).map_err(config)?;
            }
            let failed: Vec<String> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id.to_string()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Validation(format!("failing criteria: {}", failed.join(", "))))
            }
        }
        Command::Render { graph, dual, contour, doors, window, k, l, scale, out } => {
            let g = load(&graph)?;
            let mut layers = vec![LayerData::graph(Layer::Primal, &g)];
            if let Some(p) = dual {
                layers.push(LayerData::graph(Layer::Dual, &load(&p)?));
            }
            if let Some(p) = contour {
                layers.push(LayerData::graph(Layer::Contour, &load(&p)?));
            }
            if doors {
                let w = window.to_spec(&g)?;
                let a = analyze_corridor(&g, &coord(&k)?, &coord(&l)?, &w)
                    .map_err(|e| Failure::Validation(e.to_string()))?;
                layers.extend(corridor_layers(&a));
            }
            emit(&out, &render_svg(&layers, &SvgView::fit(&layers, 1.0, scale)))
        }
        Command::Run { config: path, model, seed, seeds, k, l, out } => {
            let cfg = match path {
                Some(p) => {
                    let text = fs::read_to_string(&p).map_err(|e| Failure::Config(format!("{}: {e}", p.display())))?;
                    ExperimentConfig::from_toml(&text).map_err(config)?
                }
                None => {
                    let mut c = ExperimentConfig::new(model.to_config()?, seeds, seed);
                    c.analysis.doors = door_config(&k, &l)?;
                    c.output.stats = out.map(|p| p.display().to_string());
                    c
                }
            };
            let res = run_experiment(&cfg).map_err(config)?;
            write_experiment(
                &res,
                cfg.output.stats.as_deref().map(Path::new),
                cfg.output.figures.as_deref().map(Path::new),
            )?;
            if res.all_valid() {
                Ok(())
            } else {
                let bad = res.rows.iter().filter(|r| !r.valid).count();
                Err(Failure::Validation(format!("{bad} of {} samples failed validation", res.rows.len())))
            }
        }
        Command::Bench { seeds, size } => {
            let models = [
                ModelConfig::Ust { width: size, height: size, boundary: BoundaryCondition::Wired },
                ModelConfig::UstDual { width: size, height: size, boundary: BoundaryCondition::Wired },
                ModelConfig::Contour {
                    width: size,
                    height: size,
                    boundary: BoundaryCondition::Wired,
                    eps: Scalar(Coord::ratio(1, 4)),
                },
                ModelConfig::Drainage { width: size, height: size, p: (1, 2), tie_break: TieBreak::Left },
            ];
            println!("model,seeds,generate_ms,analyze_ms");
            for m in models {
                let cfg = ExperimentConfig::new(m.clone(), seeds, 0);
                let w = cfg.window().map_err(config)?;
                let (mut gen, mut ana) = (0.0, 0.0);
                for s in 0..seeds as u64 {
                    let t = Instant::now();
                    let g = build_model(&m, s).map_err(config)?;
                    gen += t.elapsed().as_secs_f64();
                    let t = Instant::now();
                    analyze_graph(&cfg.analysis, m.is_forest(), &w, &g, s as usize, s);
                    ana += t.elapsed().as_secs_f64();
                }
                let per = |x: f64| 1000.0 * x / seeds.max(1) as f64;
                println!("{},{seeds},{:.1},{:.1}", m.name(), per(gen), per(ana));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("validation failure: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
