//! Experiment configuration files.

use std::fs;
use std::path::{Path, PathBuf};

use brauer_count::heights::HeightSpec;
use brauer_count::model::FamilySpec;
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HeightMode {
    #[default]
    Anticanonical,
    Naive,
}

impl HeightMode {
    pub fn label(&self) -> &'static str {
        match self {
            HeightMode::Anticanonical => "anticanonical",
            HeightMode::Naive => "naive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: FamilySpec,
    #[serde(default)]
    pub height: HeightMode,
    /// Height bounds in the chosen height.
    pub checkpoints: Vec<u64>,
    #[serde(default = "one")]
    pub workers: usize,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Only used by randomized suites; counting is deterministic.
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

impl ExperimentConfig {
    pub fn height_spec(&self, base_dim: usize) -> HeightSpec {
        match self.height {
            HeightMode::Anticanonical => HeightSpec::Anticanonical {
                ambient_dim: base_dim,
            },
            HeightMode::Naive => HeightSpec::Naive,
        }
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

/// A bare family spec, or the `family` field of a configuration.
pub fn load_family(path: &Path) -> Result<FamilySpec, String> {
    let value: serde_json::Value =
        serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
    let spec = match value.get("family") {
        Some(f) => f.clone(),
        None => value,
    };
    serde_json::from_value(spec).map_err(|e| format!("{}: {e}", path.display()))
}
