use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::BenchError;
use crate::algorithms::{Algorithm, SolveOptions};
use crate::graph::{GraphFormat, MetricsMode, DEFAULT_TIME_FACTOR};
use crate::instance::GenParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatasetSpec {
    pub path: PathBuf,
    pub format: GraphFormat,
    /// Name written to the CSV; defaults to the file stem.
    #[serde(default)]
    pub name: Option<String>,
}

impl DatasetSpec {
    pub fn display_name(&self) -> String {
        self.name.clone().unwrap_or_else(|| {
            self.path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "dataset".to_string())
        })
    }
}

/// Either an explicit list of seeds or a count `n` meaning `0..n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeedSpec {
    Count(u64),
    List(Vec<u64>),
}

impl SeedSpec {
    pub fn seeds(&self) -> Vec<u64> {
        match self {
            SeedSpec::Count(n) => (0..*n).collect(),
            SeedSpec::List(v) => v.clone(),
        }
    }
}

fn default_job_counts() -> Vec<usize> {
    vec![200, 400, 800]
}

fn default_algorithms() -> Vec<Algorithm> {
    Algorithm::HEURISTICS.to_vec()
}

fn default_time_factor() -> f64 {
    DEFAULT_TIME_FACTOR
}

fn yes() -> bool {
    true
}

/// One experiment sweep, as read from a TOML config file.
///
/// ```toml
/// job_counts = [200, 400, 800]
/// algorithms = ["bfs", "nn", "random", "ugreedy"]
/// seeds = 30
/// output = "results.csv"
///
/// [dataset]
/// path = "data/road-euroroad.mtx"
/// format = "mtx"
/// name = "ERD"
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    #[serde(default = "default_job_counts")]
    pub job_counts: Vec<usize>,
    #[serde(default = "default_algorithms")]
    pub algorithms: Vec<Algorithm>,
    pub seeds: SeedSpec,
    #[serde(default)]
    pub params: GenParams,
    #[serde(default = "default_time_factor")]
    pub time_factor: f64,
    #[serde(default)]
    pub metrics: MetricsMode,
    #[serde(default)]
    pub solve: SolveOptions,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub aggregate_output: Option<PathBuf>,
    /// Record wall-clock time per run. Off by default because it makes the
    /// CSV non-reproducible.
    #[serde(default)]
    pub timing: bool,
    #[serde(default = "yes")]
    pub parallel: bool,
}

impl ExperimentConfig {
    pub fn new(dataset: DatasetSpec, seeds: SeedSpec) -> Self {
        Self {
            dataset,
            job_counts: default_job_counts(),
            algorithms: default_algorithms(),
            seeds,
            params: GenParams::default(),
            time_factor: DEFAULT_TIME_FACTOR,
            metrics: MetricsMode::default(),
            solve: SolveOptions::default(),
            output: None,
            aggregate_output: None,
            timing: false,
            parallel: true,
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, BenchError> {
        let cfg: Self = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Read a config; relative paths inside it resolve against its directory.
    pub fn read(path: &Path) -> Result<Self, BenchError> {
        let text = std::fs::read_to_string(path).map_err(|source| BenchError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg = Self::from_toml(&text)
            .map_err(|e| BenchError::Config(format!("{}: {e}", path.display())))?;
        if let Some(dir) = path.parent() {
            let fix = |p: &mut PathBuf| {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            };
            fix(&mut cfg.dataset.path);
            if let Some(p) = cfg.output.as_mut() {
                fix(p);
            }
            if let Some(p) = cfg.aggregate_output.as_mut() {
                fix(p);
            }
        }
        Ok(cfg)
    }

    pub fn check(&self) -> Result<(), BenchError> {
        let bad = |m: &str| Err(BenchError::Config(m.to_string()));
        if self.job_counts.is_empty() || self.job_counts.contains(&0) {
            return bad("job_counts must be a non-empty list of positive counts");
        }
        if self.algorithms.is_empty() {
            return bad("algorithms must not be empty");
        }
        if self.seeds.seeds().is_empty() {
            return bad("seeds must not be empty");
        }
        if !(self.time_factor.is_finite() && self.time_factor > 0.0) {
            return bad("time_factor must be positive");
        }
        Ok(())
    }
}
