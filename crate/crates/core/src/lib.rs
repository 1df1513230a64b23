//! Utility-driven job selection on road networks.
//!
//! A worker starts at a POI of a road network with a working window and a
//! travel budget. Jobs are pinned to POIs with a fixed start time, a
//! duration and a utility. The crate selects and sequences a feasible subset
//! of the jobs so that the earned utility is as large as possible:
//!
//! * [`graph`] loads road networks and answers shortest-path travel queries,
//! * [`instance`] holds jobs, the worker and random instance generation,
//! * [`algorithms`] has the best-first and nearest-neighbour heuristics, the
//!   random and utility-greedy baselines, and the schedule validator,
//! * [`oracle`] computes exact optima for small instances,
//! * [`bench`] runs seeded experiment sweeps and writes CSV.

pub mod algorithms;
pub mod bench;
pub mod cli;
pub mod error;
pub mod graph;
pub mod instance;
pub mod oracle;
pub mod rng;

pub use algorithms::{
    feasible_next, priority, select_best_first, select_nearest_neighbor, select_random,
    select_utility_greedy, solve, validate_schedule, Algorithm, Leg, Schedule, SelectionState,
    SolveOptions, Violation,
};
pub use error::{Error, Result};
pub use graph::{load_graph, GraphFormat, MetricsMode, PoiId, RoadNetwork, TravelMetrics};
pub use instance::{generate_instance, GenParams, Job, JobId, ProblemInstance, Worker};
pub use oracle::{enumerate_optimal, exact_optimal, OracleLimits};
