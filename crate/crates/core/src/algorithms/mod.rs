//! Job selection heuristics, baselines, and schedule validation.

mod baselines;
mod best_first;
mod nearest_neighbor;
mod schedule;
mod validate;

use serde::{Deserialize, Serialize};

use crate::instance::ProblemInstance;
use crate::oracle::{exact_optimal, OracleError, OracleLimits};

pub use baselines::{select_random, select_utility_greedy};
pub use best_first::{select_best_first, select_best_first_strict_batch};
pub use nearest_neighbor::{priority, select_nearest_neighbor, select_nearest_neighbor_with};
pub use schedule::{feasible_next, Leg, LegRecord, Schedule, ScheduleFile, SelectionState};
pub use validate::{validate_schedule, Violation};

pub(crate) use schedule::feasible_cost;

#[derive(
    Clone,
    Copy,
    Debug,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Best-first: maximise utility minus travel cost.
    Bfs,
    /// Nearest neighbour by priority (net utility per unit of time).
    Nn,
    /// Uniformly random feasible job.
    Random,
    /// Highest-utility feasible job.
    Ugreedy,
    /// Exact optimum (small instances only).
    Oracle,
}

impl Algorithm {
    pub const HEURISTICS: [Algorithm; 4] = [
        Algorithm::Bfs,
        Algorithm::Nn,
        Algorithm::Random,
        Algorithm::Ugreedy,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Bfs => "bfs",
            Algorithm::Nn => "nn",
            Algorithm::Random => "random",
            Algorithm::Ugreedy => "ugreedy",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Algorithm as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolveOptions {
    /// Seed of the random baseline.
    pub seed: u64,
    /// Best-first picks only from the next batch of equal start times.
    pub alg1_strict_batch: bool,
    /// Nearest neighbour may commit jobs with negative priority.
    pub nn_allow_negative: bool,
    #[serde(skip)]
    pub oracle: OracleLimits,
}

/// Run one algorithm. Only the oracle can fail.
pub fn solve(
    inst: &ProblemInstance,
    algorithm: Algorithm,
    opts: &SolveOptions,
) -> Result<Schedule, OracleError> {
    Ok(match algorithm {
        Algorithm::Bfs if opts.alg1_strict_batch => select_best_first_strict_batch(inst),
        Algorithm::Bfs => select_best_first(inst),
        Algorithm::Nn => select_nearest_neighbor_with(inst, opts.nn_allow_negative),
        Algorithm::Random => select_random(inst, opts.seed),
        Algorithm::Ugreedy => select_utility_greedy(inst),
        Algorithm::Oracle => exact_optimal(inst, &opts.oracle)?,
    })
}

#[cfg(test)]
pub(crate) mod fixtures;
