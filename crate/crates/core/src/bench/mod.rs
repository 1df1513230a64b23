//! Seeded experiment sweeps over job counts and algorithms.
//!
//! Every `(seed, k)` cell gets one generated instance, shared by all
//! algorithms, so comparisons are paired. Rows are sorted before writing,
//! so parallel and serial runs produce the same CSV bytes.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use config::{DatasetSpec, ExperimentConfig, SeedSpec};

use crate::algorithms::{solve, validate_schedule, Algorithm};
use crate::graph::{load_graph, GraphError, TravelMetrics};
use crate::instance::{generate_instance, DatasetInfo, InstanceError, ProblemInstance};
use crate::oracle::OracleError;
use crate::rng;

/// Stream tag for the random baseline's seed.
const RANDOM_STREAM: u64 = 0x5EED_0000_0000_0001;

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("config: {0}")]
    Config(String),
    #[error("{algorithm} produced an invalid schedule (seed {seed}, k {k}): {violations}")]
    InvalidSchedule {
        algorithm: Algorithm,
        seed: u64,
        k: usize,
        violations: String,
    },
    #[error("{algorithm} failed (seed {seed}, k {k}): {source}")]
    Solver {
        algorithm: Algorithm,
        seed: u64,
        k: usize,
        #[source]
        source: OracleError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// One algorithm on one generated instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub dataset: String,
    pub k: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub earned_utility: f64,
    pub jobs_performed: usize,
    pub budget_spent: f64,
    pub wall_time_ms: Option<f64>,
}

/// Mean and sample standard deviation per `(dataset, k, algorithm)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRow {
    pub dataset: String,
    pub k: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub mean_utility: f64,
    pub std_utility: f64,
    pub mean_jobs: f64,
    pub std_jobs: f64,
    pub mean_budget_spent: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<ResultRow>,
    pub aggregates: Vec<AggregateRow>,
}

impl ExperimentResult {
    pub fn aggregate(&self, k: usize, algorithm: Algorithm) -> Option<&AggregateRow> {
        self.aggregates
            .iter()
            .find(|a| a.k == k && a.algorithm == algorithm)
    }
}

/// Seed of the instance used for `(seed, k)`; independent of the algorithm.
pub fn instance_seed(seed: u64, k: usize) -> u64 {
    rng::derive(seed, k as u64)
}

pub fn load_metrics(cfg: &ExperimentConfig) -> Result<Arc<TravelMetrics>, BenchError> {
    let net = Arc::new(load_graph(&cfg.dataset.path, cfg.dataset.format)?);
    Ok(Arc::new(TravelMetrics::new(
        net,
        cfg.time_factor,
        cfg.metrics,
    )?))
}

pub fn generate_cell(
    cfg: &ExperimentConfig,
    metrics: &Arc<TravelMetrics>,
    seed: u64,
    k: usize,
) -> Result<ProblemInstance, BenchError> {
    let dataset = DatasetInfo {
        name: cfg.dataset.display_name(),
        path: Some(cfg.dataset.path.to_string_lossy().into_owned()),
        format: Some(cfg.dataset.format),
    };
    let inst = generate_instance(metrics, k, &cfg.params, instance_seed(seed, k), dataset)?;
    inst.warm_metrics();
    Ok(inst)
}

/// Run `algorithm` on `inst` and validate the result.
pub fn run_one(
    cfg: &ExperimentConfig,
    inst: &ProblemInstance,
    algorithm: Algorithm,
    seed: u64,
    k: usize,
) -> Result<ResultRow, BenchError> {
    let mut opts = cfg.solve;
    opts.seed = rng::derive(inst.seed(), RANDOM_STREAM);
    let started = Instant::now();
    let schedule = solve(inst, algorithm, &opts).map_err(|source| BenchError::Solver {
        algorithm,
        seed,
        k,
        source,
    })?;
    let elapsed = started.elapsed();
    if let Err(v) = validate_schedule(inst, &schedule) {
        return Err(BenchError::InvalidSchedule {
            algorithm,
            seed,
            k,
            violations: v
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; "),
        });
    }
    Ok(ResultRow {
        dataset: cfg.dataset.display_name(),
        k,
        algorithm,
        seed,
        earned_utility: schedule.total_utility,
        jobs_performed: schedule.jobs_performed(),
        budget_spent: schedule.total_travel_cost,
        wall_time_ms: cfg.timing.then_some(elapsed.as_secs_f64() * 1e3),
    })
}

/// Load the dataset, run the sweep, and write the CSV outputs named in `cfg`.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult, BenchError> {
    cfg.check()?;
    let metrics = load_metrics(cfg)?;
    let result = run_on(cfg, &metrics)?;
    if let Some(path) = &cfg.output {
        write_file(path, |w| write_rows_csv(&result.rows, w))?;
    }
    if let Some(path) = &cfg.aggregate_output {
        write_file(path, |w| write_aggregates_csv(&result.aggregates, w))?;
    }
    Ok(result)
}

/// Run the sweep on already loaded metrics. Writes nothing.
pub fn run_on(
    cfg: &ExperimentConfig,
    metrics: &Arc<TravelMetrics>,
) -> Result<ExperimentResult, BenchError> {
    cfg.check()?;
    let cells: Vec<(usize, u64)> = cfg
        .job_counts
        .iter()
        .flat_map(|&k| cfg.seeds.seeds().into_iter().map(move |s| (k, s)))
        .collect();
    let run_cell = |&(k, seed): &(usize, u64)| -> Result<Vec<ResultRow>, BenchError> {
        let inst = generate_cell(cfg, metrics, seed, k)?;
        cfg.algorithms
            .iter()
            .map(|&a| run_one(cfg, &inst, a, seed, k))
            .collect()
    };
    let per_cell: Vec<Result<Vec<ResultRow>, BenchError>> = if cfg.parallel {
        cells.par_iter().map(run_cell).collect()
    } else {
        cells.iter().map(run_cell).collect()
    };
    let mut rows = Vec::with_capacity(cells.len() * cfg.algorithms.len());
    for r in per_cell {
        rows.extend(r?);
    }
    sort_rows(&mut rows);
    let aggregates = aggregate(&rows);
    Ok(ExperimentResult { rows, aggregates })
}

pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| {
        (&a.dataset, a.k, a.algorithm, a.seed).cmp(&(&b.dataset, b.k, b.algorithm, b.seed))
    });
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Group rows (which must be sorted, see [`sort_rows`]) and summarise.
pub fn aggregate(rows: &[ResultRow]) -> Vec<AggregateRow> {
    rows.chunk_by(|a, b| a.dataset == b.dataset && a.k == b.k && a.algorithm == b.algorithm)
        .map(|g| {
            let util: Vec<f64> = g.iter().map(|r| r.earned_utility).collect();
            let jobs: Vec<f64> = g.iter().map(|r| r.jobs_performed as f64).collect();
            let spent: Vec<f64> = g.iter().map(|r| r.budget_spent).collect();
            let (mean_utility, std_utility) = mean_std(&util);
            let (mean_jobs, std_jobs) = mean_std(&jobs);
            AggregateRow {
                dataset: g[0].dataset.clone(),
                k: g[0].k,
                algorithm: g[0].algorithm,
                runs: g.len(),
                mean_utility,
                std_utility,
                mean_jobs,
                std_jobs,
                mean_budget_spent: mean_std(&spent).0,
            }
        })
        .collect()
}

pub const ROW_HEADER: [&str; 8] = [
    "dataset",
    "k",
    "algorithm",
    "seed",
    "earned_utility",
    "jobs_performed",
    "budget_spent",
    "wall_time_ms",
];

pub fn write_rows_csv<W: Write>(rows: &[ResultRow], w: W) -> Result<(), BenchError> {
    let mut out = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    out.write_record(ROW_HEADER)?;
    for r in rows {
        out.serialize(r)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_aggregates_csv<W: Write>(rows: &[AggregateRow], w: W) -> Result<(), BenchError> {
    let mut out = csv::Writer::from_writer(w);
    for r in rows {
        out.serialize(r)?;
    }
    out.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_rows_csv<R: std::io::Read>(r: R) -> Result<Vec<ResultRow>, BenchError> {
    csv::Reader::from_reader(r)
        .deserialize()
        .collect::<Result<_, _>>()
        .map_err(BenchError::from)
}

fn write_file(
    path: &Path,
    f: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> Result<(), BenchError>,
) -> Result<(), BenchError> {
    let io = |source| BenchError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = std::fs::File::create(path).map_err(io)?;
    let mut w = std::io::BufWriter::new(file);
    f(&mut w)?;
    w.flush().map_err(io)
}

/// A seed for which the larger job count earned less.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonMonotone {
    pub seed: u64,
    pub small_utility: f64,
    pub large_utility: f64,
}

/// Try seeds `0..max_tries`; `utility(seed, k)` evaluates one cell.
pub fn search_nonmonotone(
    k_small: usize,
    k_large: usize,
    max_tries: u64,
    mut utility: impl FnMut(u64, usize) -> Result<f64, BenchError>,
) -> Result<Option<NonMonotone>, BenchError> {
    if k_small >= k_large {
        return Err(BenchError::Config(format!(
            "k_small ({k_small}) must be below k_large ({k_large})"
        )));
    }
    for seed in 0..max_tries {
        let small_utility = utility(seed, k_small)?;
        let large_utility = utility(seed, k_large)?;
        if large_utility < small_utility {
            return Ok(Some(NonMonotone {
                seed,
                small_utility,
                large_utility,
            }));
        }
    }
    Ok(None)
}

/// Find a seed where `algorithm` earns less with `k_large` jobs than with
/// `k_small`. Jobs are drawn afresh for each job count.
pub fn find_nonmonotone_seed(
    cfg: &ExperimentConfig,
    metrics: &Arc<TravelMetrics>,
    algorithm: Algorithm,
    k_small: usize,
    k_large: usize,
    max_tries: u64,
) -> Result<Option<NonMonotone>, BenchError> {
    search_nonmonotone(k_small, k_large, max_tries, |seed, k| {
        let inst = generate_cell(cfg, metrics, seed, k)?;
        Ok(run_one(cfg, &inst, algorithm, seed, k)?.earned_utility)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle_cfg(dir: &Path) -> ExperimentConfig {
        let path = dir.join("cycle.txt");
        std::fs::write(&path, "1 2 1.0\n2 3 1.0\n3 4 5.0\n4 1 1.0\n").unwrap();
        let mut cfg = ExperimentConfig::new(
            DatasetSpec {
                path,
                format: crate::graph::GraphFormat::EdgeList,
                name: Some("cycle".into()),
            },
            SeedSpec::List(vec![1]),
        );
        cfg.job_counts = vec![5];
        cfg.algorithms = vec![Algorithm::Bfs];
        cfg
    }

    #[test]
    fn single_cell_single_row() {
        let dir = tempfile::tempdir().unwrap();
        let res = run_experiment(&cycle_cfg(dir.path())).unwrap();
        assert_eq!(res.rows.len(), 1);
        assert_eq!(res.aggregates.len(), 1);
        assert_eq!(res.rows[0].dataset, "cycle");
        assert_eq!(res.rows[0].wall_time_ms, None);
    }

    #[test]
    fn degenerate_nonmonotone_case() {
        // one feasible 9000 job at the small size, nothing at the large one
        let found =
            search_nonmonotone(1, 2, 5, |_, k| Ok(if k == 1 { 9000.0 } else { 0.0 })).unwrap();
        assert_eq!(
            found,
            Some(NonMonotone {
                seed: 0,
                small_utility: 9000.0,
                large_utility: 0.0
            })
        );
        assert_eq!(
            search_nonmonotone(1, 2, 5, |_, k| Ok(k as f64)).unwrap(),
            None
        );
        assert!(search_nonmonotone(3, 3, 5, |_, _| Ok(0.0)).is_err());
    }

    #[test]
    fn mean_and_sample_std() {
        let (m, s) = mean_std(&[2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0]);
        assert_eq!(m, 5.0);
        assert!((s - (32.0f64 / 7.0).sqrt()).abs() < 1e-12);
        assert_eq!(mean_std(&[3.0]), (3.0, 0.0));
    }

    #[test]
    fn csv_header_is_stable() {
        let mut buf = Vec::new();
        write_rows_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "dataset,k,algorithm,seed,earned_utility,jobs_performed,budget_spent,wall_time_ms\n"
        );
    }
}
