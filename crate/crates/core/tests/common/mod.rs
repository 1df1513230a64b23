#![allow(dead_code)]

pub mod datasets;

use std::sync::Arc;

use jobroute::graph::synthetic::random_graph;
use jobroute::instance::DatasetInfo;
use jobroute::{
    generate_instance, GenParams, Job, JobId, MetricsMode, ProblemInstance, RoadNetwork,
    TravelMetrics, Worker,
};

pub const CYCLE: [(u64, u64, f64); 4] = [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 5.0), (4, 1, 1.0)];

pub fn metrics_on(edges: &[(u64, u64, f64)], time_factor: f64) -> Arc<TravelMetrics> {
    let net = Arc::new(RoadNetwork::from_edges(edges).unwrap());
    Arc::new(TravelMetrics::new(net, time_factor, MetricsMode::FullApsp).unwrap())
}

/// Jobs are `(poi label, utility, start, duration)` numbered from 0;
/// the worker is `(start label, window start, window end, budget)`.
pub fn instance(
    metrics: &Arc<TravelMetrics>,
    jobs: &[(u64, f64, f64, f64)],
    w: (u64, f64, f64, f64),
) -> ProblemInstance {
    let net = metrics.network();
    let p = |l: u64| net.poi_by_label(l).unwrap();
    let jobs = jobs
        .iter()
        .enumerate()
        .map(|(i, &(poi, utility, start_time, duration))| Job {
            id: JobId(i as u32),
            poi: p(poi),
            utility,
            start_time,
            duration,
        })
        .collect();
    let worker = Worker {
        start_poi: p(w.0),
        window_start: w.1,
        window_end: w.2,
        budget: w.3,
    };
    ProblemInstance::new(metrics.clone(), jobs, worker).unwrap()
}

/// A random connected-ish graph with `n` nodes and a generated instance on
/// it. Start times are squeezed into `horizon` so jobs compete.
pub fn random_instance(
    n: usize,
    k: usize,
    horizon: f64,
    budget: f64,
    seed: u64,
) -> ProblemInstance {
    let net = Arc::new(random_graph(n, 0.3, (1.0, 20.0), seed).unwrap());
    let metrics = Arc::new(TravelMetrics::new(net, 0.2, MetricsMode::OnDemand).unwrap());
    let params = GenParams {
        t_range: (1.0, horizon),
        util_range: (5.0, 30.0),
        duration_range: (1.0, horizon / 10.0),
        budget: Some(budget),
        ..GenParams::default()
    };
    generate_instance(&metrics, k, &params, seed, DatasetInfo::named("random")).unwrap()
}
