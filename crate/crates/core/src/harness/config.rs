use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::forest::WindowSpec;
use crate::generators::{fixture_window, BoundaryCondition, TieBreak};
use crate::geometry::{Coord, Point};

use super::HarnessError;

/// An exact scalar written either as an integer or as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar(pub Coord);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.as_i64() {
            Some(i) => s.serialize_i64(i),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(Scalar(Coord::int(i))),
            Raw::Text(t) => t.parse().map(Scalar).map_err(serde::de::Error::custom),
        }
    }
}

impl From<i64> for Scalar {
    fn from(i: i64) -> Scalar {
        Scalar(Coord::int(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelConfig {
    Ust {
        width: usize,
        height: usize,
        #[serde(default)]
        boundary: BoundaryCondition,
    },
    UstDual {
        width: usize,
        height: usize,
        #[serde(default)]
        boundary: BoundaryCondition,
    },
    /// Contour of a UST at distance `eps`.
    Contour {
        width: usize,
        height: usize,
        #[serde(default)]
        boundary: BoundaryCondition,
        eps: Scalar,
    },
    /// Layered contours of peelings; `phi[i]` is `φ(4 + i)`.
    GPhi {
        width: usize,
        height: usize,
        #[serde(default)]
        boundary: BoundaryCondition,
        phi: Vec<usize>,
    },
    Drainage {
        width: usize,
        height: usize,
        /// Open probability as `[num, den]`.
        p: (u64, u64),
        tie_break: TieBreak,
    },
    Iso {
        width: usize,
        height: usize,
    },
    Fixture {
        l: i64,
        #[serde(default)]
        teeth: bool,
    },
}

impl ModelConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ModelConfig::Ust { .. } => "ust",
            ModelConfig::UstDual { .. } => "ust-dual",
            ModelConfig::Contour { .. } => "contour",
            ModelConfig::GPhi { .. } => "g-phi",
            ModelConfig::Drainage { .. } => "drainage",
            ModelConfig::Iso { .. } => "iso",
            ModelConfig::Fixture { .. } => "fixture",
        }
    }

    /// Whether every sample should pass the forest validator.
    pub fn is_forest(&self) -> bool {
        !matches!(self, ModelConfig::Contour { .. } | ModelConfig::GPhi { .. })
    }

    /// Window centred on the sampled region: outer half-width one unit
    /// inside the region, inner half-width half of that.
    pub fn default_window(&self) -> WindowSpec {
        let (w, h) = match self {
            ModelConfig::Fixture { l, .. } => return fixture_window(*l),
            ModelConfig::Ust { width, height, .. }
            | ModelConfig::UstDual { width, height, .. }
            | ModelConfig::Contour { width, height, .. }
            | ModelConfig::GPhi { width, height, .. }
            | ModelConfig::Drainage { width, height, .. }
            | ModelConfig::Iso { width, height } => (*width as i64, *height as i64),
        };
        let origin = Point::new(Coord::ratio(w - 1, 2), Coord::ratio(h - 1, 2));
        let outer = &Coord::ratio(w.min(h) - 1, 2) - &Coord::ONE;
        let inner = &outer / &Coord::int(2);
        WindowSpec::new(inner, outer, origin).unwrap_or_else(|_| {
            WindowSpec::new(Coord::ratio(1, 4), Coord::ratio(1, 2), Point::int(0, 0)).expect("valid")
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub origin: (Scalar, Scalar),
    pub inner: Scalar,
    pub outer: Scalar,
}

impl WindowConfig {
    pub fn to_spec(&self) -> Result<WindowSpec, HarnessError> {
        let origin = Point::new(self.origin.0 .0.clone(), self.origin.1 .0.clone());
        WindowSpec::new(self.inner.0.clone(), self.outer.0.clone(), origin)
            .map_err(|e| HarnessError::Config(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoorConfig {
    pub k: Scalar,
    pub l: Scalar,
}

fn default_chi() -> Vec<u32> {
    vec![5, 10, 20]
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisConfig {
    /// Edge intensity over the unit boxes of the inner window.
    #[serde(default = "yes")]
    pub lambda: bool,
    /// Box sizes for crossing counts, boxes centred at the window origin.
    #[serde(default = "default_chi")]
    pub chi: Vec<u32>,
    #[serde(default = "yes")]
    pub trifurcation: bool,
    #[serde(default)]
    pub doors: Option<DoorConfig>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { lambda: true, chi: default_chi(), trifurcation: true, doors: None }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Per-seed rows; the aggregate goes next to it with a `.summary.csv`
    /// suffix.
    #[serde(default)]
    pub stats: Option<String>,
    /// Directory receiving one SVG per seed.
    #[serde(default)]
    pub figures: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub master_seed: u64,
    pub seeds: usize,
    pub model: ModelConfig,
    #[serde(default)]
    pub window: Option<WindowConfig>,
    #[serde(default)]
    pub analysis: AnalysisConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

impl ExperimentConfig {
    pub fn new(model: ModelConfig, seeds: usize, master_seed: u64) -> ExperimentConfig {
        ExperimentConfig {
            master_seed,
            seeds,
            model,
            window: None,
            analysis: AnalysisConfig::default(),
            output: OutputConfig::default(),
        }
    }

    pub fn from_toml(text: &str) -> Result<ExperimentConfig, HarnessError> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.window()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("plain data")
    }

    pub fn window(&self) -> Result<WindowSpec, HarnessError> {
        match &self.window {
            Some(w) => w.to_spec(),
            None => Ok(self.model.default_window()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
master_seed = 7
seeds = 3

[model]
kind = "drainage"
width = 30
height = 20
p = [1, 2]
tie_break = "left"

[window]
origin = ["29/2", 10]
inner = 3
outer = "15/2"

[analysis]
chi = [4]
doors = { k = 1, l = 2 }
"#;

    #[test]
    fn parses_and_round_trips() {
        let cfg = ExperimentConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.model, ModelConfig::Drainage { width: 30, height: 20, p: (1, 2), tie_break: TieBreak::Left });
        let w = cfg.window().unwrap();
        assert_eq!(w.origin(), &Point::new(Coord::ratio(29, 2), 10));
        assert_eq!(w.outer_half_width(), &Coord::ratio(15, 2));
        assert!(cfg.analysis.trifurcation);
        assert_eq!(ExperimentConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(ExperimentConfig::from_toml("seeds = 1"), Err(HarnessError::Config(_))));
        let bad_window = SAMPLE.replace("inner = 3", "inner = 9");
        assert!(matches!(ExperimentConfig::from_toml(&bad_window), Err(HarnessError::Config(_))));
        let unknown = SAMPLE.replace("tie_break", "tie");
        assert!(ExperimentConfig::from_toml(&unknown).is_err());
    }

    #[test]
    fn default_windows() {
        let w = ModelConfig::Ust { width: 40, height: 40, boundary: BoundaryCondition::Wired }.default_window();
        assert_eq!(w.origin(), &Point::new(Coord::ratio(39, 2), Coord::ratio(39, 2)));
        assert_eq!(w.outer_half_width(), &Coord::ratio(37, 2));
        assert_eq!(ModelConfig::Fixture { l: 16, teeth: false }.default_window(), fixture_window(16));
    }
}
