use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{feasible_next, Schedule, SelectionState};
use crate::graph::{PoiId, TravelMetrics};
use crate::instance::{Job, ProblemInstance};

/// Priority of `job` seen from `from`: net utility per unit of time spent
/// getting there and doing it, `(U - C) / (T + duration)`.
///
/// `None` when the job's POI is unreachable. Negative when the trip costs
/// more than the job pays.
pub fn priority(metrics: &TravelMetrics, from: PoiId, job: &Job) -> Option<f64> {
    let cost = metrics.cost(from, job.poi)?;
    Some((job.utility - cost) / (metrics.time_of(cost) + job.duration))
}

struct Ranked<'a> {
    key: f64,
    cost: f64,
    job: &'a Job,
    slot: usize,
}

impl Ranked<'_> {
    /// `Greater` means ranked first.
    fn rank(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then(other.cost.total_cmp(&self.cost))
            .then(other.job.id.cmp(&self.job.id))
    }
}

impl PartialEq for Ranked<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.rank(other) == Ordering::Equal
    }
}

impl Eq for Ranked<'_> {}

impl PartialOrd for Ranked<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank(other)
    }
}

/// Shared loop of the nearest-neighbour and utility-greedy selectors.
///
/// From the current POI every remaining job is ranked by `key` (higher
/// first, then lower travel cost, then lower id). Candidates are tried in
/// that order: infeasible ones are dropped for good, the first feasible one
/// is committed and the ranking is recomputed from the new POI. Ranking
/// stops early at the first key below `floor`.
pub(super) fn run_ranked(
    inst: &ProblemInstance,
    key: impl Fn(&Job, f64) -> f64,
    floor: Option<f64>,
) -> Schedule {
    let metrics = inst.metrics();
    let worker = inst.worker();
    let mut state = SelectionState::start(worker);
    let ws = worker.window_start;
    let mut remaining: Vec<&Job> = inst.jobs().iter().filter(|j| j.start_time >= ws).collect();
    let mut keep = Vec::new();

    while !remaining.is_empty() {
        let from = state.current_poi;
        // a heap pops candidates in rank order without sorting all of them
        let mut ranked: BinaryHeap<Ranked> = remaining
            .iter()
            .enumerate()
            .filter_map(|(slot, &job)| {
                let cost = metrics.cost(from, job.poi)?;
                Some(Ranked {
                    key: key(job, cost),
                    cost,
                    job,
                    slot,
                })
            })
            .collect();

        // unreachable jobs are dropped along with the infeasible ones
        keep.clear();
        keep.resize(remaining.len(), false);
        let mut chosen = None;
        while let Some(r) = ranked.pop() {
            if floor.is_some_and(|f| r.key.partial_cmp(&f) == Some(Ordering::Less)) {
                break;
            }
            if feasible_next(&state, r.job, worker, metrics) {
                chosen = Some(r.job);
                for later in ranked.iter() {
                    keep[later.slot] = true;
                }
                break;
            }
        }
        let Some(job) = chosen else {
            break;
        };
        state.commit(job, metrics);
        let mut slot = 0;
        remaining.retain(|_| {
            slot += 1;
            keep[slot - 1]
        });
    }
    state.into_schedule()
}

/// Nearest neighbour by [`priority`], never committing a negative-priority job.
pub fn select_nearest_neighbor(inst: &ProblemInstance) -> Schedule {
    select_nearest_neighbor_with(inst, false)
}

/// With `allow_negative`, jobs whose travel cost exceeds their utility may
/// still be committed when they rank first.
pub fn select_nearest_neighbor_with(inst: &ProblemInstance, allow_negative: bool) -> Schedule {
    let time_factor = inst.metrics().time_factor();
    run_ranked(
        inst,
        |job, cost| (job.utility - cost) / (time_factor * cost + job.duration),
        (!allow_negative).then_some(0.0),
    )
}
