//! Hand-built instances shared by the unit tests.

use std::sync::Arc;

use crate::graph::{MetricsMode, RoadNetwork, TravelMetrics};
use crate::instance::{Job, JobId, ProblemInstance, Worker};

pub type JobSpec = (u32, u64, f64, f64, f64);
pub type WorkerSpec = (u64, f64, f64, f64);

/// `(id, poi label, utility, start, duration)`
pub fn job(id: u32, poi: u64, utility: f64, start: f64, duration: f64) -> JobSpec {
    (id, poi, utility, start, duration)
}

/// `(start poi label, window start, window end, budget)`
pub fn worker(start: u64, ws: f64, wf: f64, budget: f64) -> WorkerSpec {
    (start, ws, wf, budget)
}

pub const CYCLE: [(u64, u64, f64); 4] = [(1, 2, 1.0), (2, 3, 1.0), (3, 4, 5.0), (4, 1, 1.0)];

pub fn instance_on(edges: &[(u64, u64, f64)], jobs: &[JobSpec], w: WorkerSpec) -> ProblemInstance {
    let net = Arc::new(RoadNetwork::from_edges(edges).unwrap());
    let metrics = Arc::new(TravelMetrics::new(net.clone(), 0.2, MetricsMode::FullApsp).unwrap());
    let p = |l: u64| net.poi_by_label(l).unwrap();
    let jobs = jobs
        .iter()
        .map(|&(id, poi, utility, start_time, duration)| Job {
            id: JobId(id),
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
    ProblemInstance::new(metrics, jobs, worker).unwrap()
}

pub fn instance_on_cycle(jobs: &[JobSpec], w: WorkerSpec) -> ProblemInstance {
    instance_on(&CYCLE, jobs, w)
}

/// Six jobs on the 4-cycle, worker at POI 1 with window [0, 100] and
/// budget 5. Shortest costs: C(1,2)=C(1,4)=C(2,3)=1, C(1,3)=C(2,4)=2,
/// C(3,4)=3; travel time is 0.2 x cost.
///
/// Best-first: j0 is the earliest start. From POI 2 at t=5 the nets are
/// j1 29, j2 23, j3 11, j4 39, j5 6, so j4. From POI 3 at t=50 only j5 is
/// left (cost 3, spent 2+3 = 5 = budget): 0, 4, 5 for 10+40+8 = 58.
///
/// Nearest neighbour: from POI 1 the priorities are j2 24/2.2, j3 12/3,
/// j1 28/10.4, j0 9/4.2, j5 7/5.2, j4 38/30.4, so j2. From POI 4 at t=8,
/// j3 (11/3.2) beats j1 (27/10.6, infeasible anyway). From POI 1 at t=12,
/// j1 and j0 are tried and dropped, then j5 (7/5.2) is committed; j4 has
/// started by t=65: 2, 3, 5 for 25+12+8 = 45.
///
/// Utility greedy: j4 (40) first, j1/j2/j3/j0 have all started by t=50,
/// then j5 with cost 3 exactly exhausting the budget: 4, 5 for 48.
///
/// Optimum: 0, 1, 4, 5 with costs 1+1+0+3 = 5 for 88.
pub fn six_job_instance() -> ProblemInstance {
    instance_on_cycle(
        &[
            job(0, 2, 10.0, 1.0, 4.0),
            job(1, 3, 30.0, 6.0, 10.0),
            job(2, 4, 25.0, 6.0, 2.0),
            job(3, 1, 12.0, 9.0, 3.0),
            job(4, 3, 40.0, 20.0, 30.0),
            job(5, 4, 8.0, 60.0, 5.0),
        ],
        worker(1, 0.0, 100.0, 5.0),
    )
}

pub const SIX_JOB_BFS: [JobId; 3] = [JobId(0), JobId(4), JobId(5)];
pub const SIX_JOB_BFS_UTILITY: f64 = 58.0;
pub const SIX_JOB_NN: [JobId; 3] = [JobId(2), JobId(3), JobId(5)];
pub const SIX_JOB_NN_UTILITY: f64 = 45.0;
pub const SIX_JOB_UGREEDY: [JobId; 2] = [JobId(4), JobId(5)];
pub const SIX_JOB_UGREEDY_UTILITY: f64 = 48.0;
pub const SIX_JOB_OPTIMUM: [JobId; 4] = [JobId(0), JobId(1), JobId(4), JobId(5)];
pub const SIX_JOB_OPTIMUM_UTILITY: f64 = 88.0;
