//! Jobs, the worker, problem instances and random instance generation.

mod file;

use std::collections::HashSet;
use std::fmt;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::graph::{GraphFormat, PoiId, RoadNetwork, TravelMetrics};
use crate::rng::SeededRng;

pub use file::{load_instance, load_instance_with_graph, save_instance, InstanceFile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JobId(pub u32);

impl fmt::Display for JobId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("job {id}: {reason}")]
    InvalidJob { id: JobId, reason: String },
    #[error("job id {0} appears more than once")]
    DuplicateJobId(JobId),
    #[error("job {job}: poi {label} is not in the network")]
    UnknownJobPoi { job: JobId, label: u64 },
    #[error("worker: {0}")]
    InvalidWorker(String),
    #[error("generator parameters: {0}")]
    InvalidParams(String),
    #[error("{}: {message}", path.display())]
    Schema { path: PathBuf, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("instance was generated on a graph with {expected_pois} POIs / {expected_edges} edges, got {pois} / {edges}")]
    GraphMismatch {
        expected_pois: usize,
        expected_edges: usize,
        pois: usize,
        edges: usize,
    },
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
}

/// A job pinned to a POI: it must start exactly at `start_time` and runs
/// for `duration`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Job {
    pub id: JobId,
    pub poi: PoiId,
    pub utility: f64,
    pub start_time: f64,
    pub duration: f64,
}

impl Job {
    pub fn finish_time(&self) -> f64 {
        self.start_time + self.duration
    }

    fn check(&self, net: &RoadNetwork) -> Result<(), InstanceError> {
        let bad = |reason: &str| {
            Err(InstanceError::InvalidJob {
                id: self.id,
                reason: reason.to_string(),
            })
        };
        if !(self.utility.is_finite() && self.utility > 0.0) {
            return bad(&format!("utility must be positive, got {}", self.utility));
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return bad(&format!("duration must be positive, got {}", self.duration));
        }
        if !self.start_time.is_finite() {
            return bad("start time is not finite");
        }
        if self.finish_time() <= self.start_time {
            return bad("finish time does not come after start time");
        }
        if !net.contains(self.poi) {
            return bad(&format!("poi index {} is outside the network", self.poi));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Worker {
    pub start_poi: PoiId,
    pub window_start: f64,
    pub window_end: f64,
    pub budget: f64,
}

impl Worker {
    fn check(&self, net: &RoadNetwork) -> Result<(), InstanceError> {
        if !(self.window_start.is_finite() && self.window_end.is_finite())
            || self.window_end <= self.window_start
        {
            return Err(InstanceError::InvalidWorker(format!(
                "window [{}, {}] is empty",
                self.window_start, self.window_end
            )));
        }
        if !(self.budget.is_finite() && self.budget >= 0.0) {
            return Err(InstanceError::InvalidWorker(format!(
                "budget must be non-negative, got {}",
                self.budget
            )));
        }
        if !net.contains(self.start_poi) {
            return Err(InstanceError::InvalidWorker(format!(
                "start poi index {} is outside the network",
                self.start_poi
            )));
        }
        Ok(())
    }
}

/// Random instance parameters. `None` fields take the defaults described
/// on each field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GenParams {
    /// Start times, uniform. Default `[1, 5000]`.
    pub t_range: (f64, f64),
    /// Utilities, uniform. Default `[9000, 12000]`.
    pub util_range: (f64, f64),
    /// Durations, uniform. Default `[10, 200]`.
    pub duration_range: (f64, f64),
    /// Travel budget. Default: 100 times the mean edge weight.
    pub budget: Option<f64>,
    /// Working window. Default: `t_range`.
    pub window: Option<(f64, f64)>,
    /// Original label of the start POI. Default: a uniformly drawn POI.
    pub worker_start: Option<u64>,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            t_range: (1.0, 5000.0),
            util_range: (9000.0, 12000.0),
            duration_range: (10.0, 200.0),
            budget: None,
            window: None,
            worker_start: None,
        }
    }
}

pub const DEFAULT_BUDGET_EDGE_MULTIPLE: f64 = 100.0;

impl GenParams {
    fn check(&self) -> Result<(), InstanceError> {
        let range = |name: &str, (lo, hi): (f64, f64), positive: bool| {
            if !(lo.is_finite() && hi.is_finite()) || hi < lo {
                return Err(InstanceError::InvalidParams(format!(
                    "{name} range [{lo}, {hi}] is empty"
                )));
            }
            if positive && lo <= 0.0 {
                return Err(InstanceError::InvalidParams(format!(
                    "{name} range must be positive, got [{lo}, {hi}]"
                )));
            }
            Ok(())
        };
        range("start time", self.t_range, false)?;
        range("utility", self.util_range, true)?;
        range("duration", self.duration_range, true)?;
        Ok(())
    }

    pub fn budget_for(&self, net: &RoadNetwork) -> f64 {
        self.budget
            .unwrap_or_else(|| DEFAULT_BUDGET_EDGE_MULTIPLE * net.mean_edge_weight())
    }

    pub fn window(&self) -> (f64, f64) {
        self.window.unwrap_or(self.t_range)
    }
}

/// Where the network of an instance came from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<GraphFormat>,
}

impl DatasetInfo {
    pub fn named(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }
}

/// Network, metrics, jobs and worker. Immutable once built.
#[derive(Clone, Debug)]
pub struct ProblemInstance {
    metrics: Arc<TravelMetrics>,
    jobs: Vec<Job>,
    worker: Worker,
    seed: u64,
    params: GenParams,
    dataset: DatasetInfo,
}

impl PartialEq for ProblemInstance {
    fn eq(&self, other: &Self) -> bool {
        self.jobs == other.jobs
            && self.worker == other.worker
            && self.seed == other.seed
            && self.params == other.params
            && self.dataset == other.dataset
            && self.metrics.time_factor() == other.metrics.time_factor()
    }
}

impl ProblemInstance {
    pub fn new(
        metrics: Arc<TravelMetrics>,
        jobs: Vec<Job>,
        worker: Worker,
    ) -> Result<Self, InstanceError> {
        Self::with_provenance(
            metrics,
            jobs,
            worker,
            0,
            GenParams::default(),
            DatasetInfo::default(),
        )
    }

    pub fn with_provenance(
        metrics: Arc<TravelMetrics>,
        jobs: Vec<Job>,
        worker: Worker,
        seed: u64,
        params: GenParams,
        dataset: DatasetInfo,
    ) -> Result<Self, InstanceError> {
        let net = metrics.network();
        worker.check(net)?;
        let mut ids = HashSet::with_capacity(jobs.len());
        for job in &jobs {
            job.check(net)?;
            if !ids.insert(job.id) {
                return Err(InstanceError::DuplicateJobId(job.id));
            }
        }
        Ok(Self {
            metrics,
            jobs,
            worker,
            seed,
            params,
            dataset,
        })
    }

    pub fn network(&self) -> &Arc<RoadNetwork> {
        self.metrics.network()
    }

    pub fn metrics(&self) -> &TravelMetrics {
        &self.metrics
    }

    pub fn metrics_arc(&self) -> &Arc<TravelMetrics> {
        &self.metrics
    }

    pub fn jobs(&self) -> &[Job] {
        &self.jobs
    }

    pub fn job(&self, id: JobId) -> Option<&Job> {
        // generated instances use dense ids
        match self.jobs.get(id.0 as usize) {
            Some(j) if j.id == id => Some(j),
            _ => self.jobs.iter().find(|j| j.id == id),
        }
    }

    pub fn worker(&self) -> &Worker {
        &self.worker
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn params(&self) -> &GenParams {
        &self.params
    }

    pub fn dataset(&self) -> &DatasetInfo {
        &self.dataset
    }

    /// Compute every shortest-path row a selector on this instance can need.
    pub fn warm_metrics(&self) {
        let mut pois: Vec<PoiId> = self.jobs.iter().map(|j| j.poi).collect();
        pois.push(self.worker.start_poi);
        self.metrics.warm(&pois);
    }
}

/// Draw `k` jobs with POIs, start times, utilities and durations all
/// uniform. The result is a pure function of `(metrics' network, k, params, seed)`.
pub fn generate_instance(
    metrics: &Arc<TravelMetrics>,
    k: usize,
    params: &GenParams,
    seed: u64,
    dataset: DatasetInfo,
) -> Result<ProblemInstance, InstanceError> {
    if k == 0 {
        return Err(InstanceError::InvalidParams(
            "job count must be positive".into(),
        ));
    }
    params.check()?;
    let net = metrics.network();
    let n = net.poi_count();
    let mut rng = SeededRng::new(seed);

    let start_poi = match params.worker_start {
        Some(label) => net.poi_by_label(label).ok_or_else(|| {
            InstanceError::InvalidWorker(format!("start poi {label} is not in the network"))
        })?,
        None => PoiId(rng.index(n) as u32),
    };
    let (window_start, window_end) = params.window();
    let worker = Worker {
        start_poi,
        window_start,
        window_end,
        budget: params.budget_for(net),
    };

    let jobs = (0..k)
        .map(|i| {
            let poi = PoiId(rng.index(n) as u32);
            let start_time = rng.uniform(params.t_range.0, params.t_range.1);
            let utility = rng.uniform(params.util_range.0, params.util_range.1);
            let duration = rng.uniform(params.duration_range.0, params.duration_range.1);
            Job {
                id: JobId(i as u32),
                poi,
                utility,
                start_time,
                duration,
            }
        })
        .collect();

    ProblemInstance::with_provenance(metrics.clone(), jobs, worker, seed, params.clone(), dataset)
}
