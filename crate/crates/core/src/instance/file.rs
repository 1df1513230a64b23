//! JSON instance files. See `docs/file-formats.md` for the schema.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{DatasetInfo, GenParams, InstanceError, Job, JobId, ProblemInstance, Worker};
use crate::graph::{load_graph, MetricsMode, TravelMetrics};

pub const INSTANCE_FORMAT: &str = "jobroute-instance";
pub const INSTANCE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphStats {
    pub pois: usize,
    pub edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorkerRecord {
    pub start_poi: u64,
    pub window_start: f64,
    pub window_end: f64,
    pub budget: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobRecord {
    pub id: u32,
    pub poi: u64,
    pub utility: f64,
    pub start_time: f64,
    pub duration: f64,
}

/// On-disk form of a [`ProblemInstance`]. POIs are written as the
/// dataset's original labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub format: String,
    pub version: u32,
    pub dataset: DatasetInfo,
    pub graph: GraphStats,
    pub time_factor: f64,
    pub seed: u64,
    pub params: GenParams,
    pub worker: WorkerRecord,
    pub jobs: Vec<JobRecord>,
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        let net = inst.network();
        let w = inst.worker();
        Self {
            format: INSTANCE_FORMAT.to_string(),
            version: INSTANCE_VERSION,
            dataset: inst.dataset().clone(),
            graph: GraphStats {
                pois: net.poi_count(),
                edges: net.edge_count(),
            },
            time_factor: inst.metrics().time_factor(),
            seed: inst.seed(),
            params: inst.params().clone(),
            worker: WorkerRecord {
                start_poi: net.label(w.start_poi),
                window_start: w.window_start,
                window_end: w.window_end,
                budget: w.budget,
            },
            jobs: inst
                .jobs()
                .iter()
                .map(|j| JobRecord {
                    id: j.id.0,
                    poi: net.label(j.poi),
                    utility: j.utility,
                    start_time: j.start_time,
                    duration: j.duration,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance serialises");
        s.push('\n');
        s
    }

    pub fn parse(text: &str, path: &Path) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text).map_err(|e| InstanceError::Schema {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if file.format != INSTANCE_FORMAT || file.version != INSTANCE_VERSION {
            return Err(InstanceError::Schema {
                path: path.to_path_buf(),
                message: format!(
                    "expected format '{INSTANCE_FORMAT}' version {INSTANCE_VERSION}, got '{}' version {}",
                    file.format, file.version
                ),
            });
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, path)
    }

    /// Bind the records to a network and its metrics.
    pub fn into_instance(
        self,
        path: &Path,
        metrics: &Arc<TravelMetrics>,
    ) -> Result<ProblemInstance, InstanceError> {
        let net = metrics.network();
        if self.time_factor != metrics.time_factor() {
            return Err(InstanceError::Schema {
                path: path.to_path_buf(),
                message: format!(
                    "instance uses time factor {} but metrics use {}",
                    self.time_factor,
                    metrics.time_factor()
                ),
            });
        }
        if self.graph.pois != net.poi_count() || self.graph.edges != net.edge_count() {
            return Err(InstanceError::GraphMismatch {
                expected_pois: self.graph.pois,
                expected_edges: self.graph.edges,
                pois: net.poi_count(),
                edges: net.edge_count(),
            });
        }
        let start_poi = net.poi_by_label(self.worker.start_poi).ok_or_else(|| {
            InstanceError::InvalidWorker(format!(
                "start poi {} is not in the network",
                self.worker.start_poi
            ))
        })?;
        let worker = Worker {
            start_poi,
            window_start: self.worker.window_start,
            window_end: self.worker.window_end,
            budget: self.worker.budget,
        };
        let jobs = self
            .jobs
            .iter()
            .map(|r| {
                let id = JobId(r.id);
                let poi = net
                    .poi_by_label(r.poi)
                    .ok_or(InstanceError::UnknownJobPoi {
                        job: id,
                        label: r.poi,
                    })?;
                Ok(Job {
                    id,
                    poi,
                    utility: r.utility,
                    start_time: r.start_time,
                    duration: r.duration,
                })
            })
            .collect::<Result<Vec<_>, InstanceError>>()?;
        ProblemInstance::with_provenance(
            metrics.clone(),
            jobs,
            worker,
            self.seed,
            self.params,
            self.dataset,
        )
    }
}

pub fn save_instance(inst: &ProblemInstance, path: impl AsRef<Path>) -> Result<(), InstanceError> {
    let path = path.as_ref();
    std::fs::write(path, InstanceFile::from_instance(inst).to_json()).map_err(|source| {
        InstanceError::Io {
            path: path.to_path_buf(),
            source,
        }
    })
}

pub fn load_instance(
    path: impl AsRef<Path>,
    metrics: &Arc<TravelMetrics>,
) -> Result<ProblemInstance, InstanceError> {
    let path = path.as_ref();
    InstanceFile::read(path)?.into_instance(path, metrics)
}

/// Load an instance together with the graph its header points at.
/// A relative graph path is tried as given, then next to the instance file.
/// `graph_override` replaces the recorded path and format.
pub fn load_instance_with_graph(
    path: impl AsRef<Path>,
    graph_override: Option<(&Path, crate::graph::GraphFormat)>,
    mode: MetricsMode,
) -> Result<ProblemInstance, InstanceError> {
    let path = path.as_ref();
    let file = InstanceFile::read(path)?;
    let (graph_path, format) = match graph_override {
        Some((p, f)) => (p.to_path_buf(), f),
        None => {
            let schema = |message: &str| InstanceError::Schema {
                path: path.to_path_buf(),
                message: message.to_string(),
            };
            let recorded = file
                .dataset
                .path
                .as_deref()
                .ok_or_else(|| schema("dataset.path is missing; pass --graph"))?;
            let format = file
                .dataset
                .format
                .ok_or_else(|| schema("dataset.format is missing; pass --format"))?;
            (resolve_graph_path(path, recorded), format)
        }
    };
    let net = Arc::new(load_graph(&graph_path, format)?);
    let metrics = Arc::new(TravelMetrics::new(net, file.time_factor, mode)?);
    file.into_instance(path, &metrics)
}

fn resolve_graph_path(instance_path: &Path, recorded: &str) -> PathBuf {
    let p = PathBuf::from(recorded);
    if p.is_absolute() || p.exists() {
        return p;
    }
    match instance_path.parent() {
        Some(dir) if dir.join(&p).exists() => dir.join(p),
        _ => p,
    }
}
