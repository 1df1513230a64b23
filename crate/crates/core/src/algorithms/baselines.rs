use super::nearest_neighbor::run_ranked;
use super::{feasible_next, Schedule, SelectionState};
use crate::instance::{Job, ProblemInstance};
use crate::rng::SeededRng;

/// Draw remaining jobs uniformly at random; commit the feasible ones,
/// discard the rest.
pub fn select_random(inst: &ProblemInstance, seed: u64) -> Schedule {
    let metrics = inst.metrics();
    let worker = inst.worker();
    let mut rng = SeededRng::new(seed);
    let mut state = SelectionState::start(worker);
    let mut remaining: Vec<&Job> = inst.jobs().iter().collect();
    while !remaining.is_empty() {
        let job = remaining.swap_remove(rng.index(remaining.len()));
        if feasible_next(&state, job, worker, metrics) {
            state.commit(job, metrics);
        }
    }
    state.into_schedule()
}

/// Always take the feasible job with the highest utility.
pub fn select_utility_greedy(inst: &ProblemInstance) -> Schedule {
    run_ranked(inst, |job, _| job.utility, None)
}
