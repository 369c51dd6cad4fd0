//! Seeded experiments, statistics files, SVG rendering and acceptance checks.

mod config;
mod experiment;
mod svg;
pub mod verify;

pub use config::{AnalysisConfig, DoorConfig, ExperimentConfig, ModelConfig, OutputConfig, Scalar, WindowConfig};
pub use experiment::{
    aggregate, analyze_graph, build_model, centred_box_origin, fmt_f64, mean_stderr, rows_csv, run_experiment,
    trifurcation_density, AggregateRow, ExperimentOutput, StatsRow, STATS_COLUMNS, SUMMARY_COLUMNS,
};
pub use svg::{corridor_layers, render_svg, Layer, LayerData, SvgView, LAYER_NAMES};

use thiserror::Error;

use crate::corridor::CorridorError;
use crate::forest::ForestError;
use crate::generators::GeneratorError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Forest(#[from] ForestError),
    #[error(transparent)]
    Corridor(#[from] CorridorError),
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finaliser.
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of replicate `k`: the `k`-th output of a SplitMix64 stream started
/// at `master`. Independent of how many replicates run or in what order.
pub fn derive_seed(master: u64, k: u64) -> u64 {
    splitmix64(master.wrapping_add(k.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}
