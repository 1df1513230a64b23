use std::cmp::Ordering;

use super::{feasible_cost, Schedule, SelectionState};
use crate::instance::{Job, ProblemInstance};

/// Jobs the worker can still consider, earliest start first
/// (ties: higher utility, then lower id).
fn eligible_by_start(inst: &ProblemInstance) -> Vec<&Job> {
    let ws = inst.worker().window_start;
    let mut jobs: Vec<&Job> = inst.jobs().iter().filter(|j| j.start_time >= ws).collect();
    jobs.sort_by(|a, b| {
        a.start_time
            .total_cmp(&b.start_time)
            .then(b.utility.total_cmp(&a.utility))
            .then(a.id.cmp(&b.id))
    });
    jobs
}

/// Commit the earliest-starting feasible job. Returns the jobs after it.
fn take_first<'a>(
    inst: &ProblemInstance,
    state: &mut SelectionState,
    sorted: Vec<&'a Job>,
) -> Vec<&'a Job> {
    match sorted
        .iter()
        .position(|j| feasible_cost(state, j, inst).is_some())
    {
        Some(i) => {
            state.commit(sorted[i], inst.metrics());
            sorted[i + 1..].to_vec()
        }
        None => Vec::new(),
    }
}

/// Best candidate by `U - C` among `pool`, with `U > C` required.
fn best_net<'a>(
    inst: &ProblemInstance,
    state: &SelectionState,
    pool: impl Iterator<Item = (usize, &'a Job)>,
) -> Option<(usize, &'a Job)> {
    let mut best: Option<(f64, usize, &Job)> = None;
    for (i, job) in pool {
        let Some(cost) = feasible_cost(state, job, inst) else {
            continue;
        };
        if job.utility <= cost {
            continue;
        }
        let net = job.utility - cost;
        let better = match best {
            None => true,
            Some((b, _, bj)) => match net.total_cmp(&b) {
                Ordering::Greater => true,
                Ordering::Equal => job.id < bj.id,
                Ordering::Less => false,
            },
        };
        if better {
            best = Some((net, i, job));
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Best-first selection.
///
/// The first job is the earliest-starting feasible one. After that the
/// worker repeatedly moves to the feasible job with the largest
/// `utility - travel cost`, among all remaining jobs whose utility exceeds
/// the travel cost, until no such job exists.
pub fn select_best_first(inst: &ProblemInstance) -> Schedule {
    let mut state = SelectionState::start(inst.worker());
    let mut remaining = take_first(inst, &mut state, eligible_by_start(inst));
    loop {
        let clock = state.clock;
        remaining.retain(|j| j.start_time >= clock);
        let Some((i, job)) = best_net(inst, &state, remaining.iter().copied().enumerate()) else {
            break;
        };
        state.commit(job, inst.metrics());
        remaining.swap_remove(i);
    }
    state.into_schedule()
}

/// Best-first restricted to batches: after the first job, only the next
/// group of jobs sharing one start time is considered. A batch with no
/// acceptable job is skipped.
pub fn select_best_first_strict_batch(inst: &ProblemInstance) -> Schedule {
    let mut state = SelectionState::start(inst.worker());
    let mut remaining = take_first(inst, &mut state, eligible_by_start(inst));
    remaining.sort_by(|a, b| a.start_time.total_cmp(&b.start_time).then(a.id.cmp(&b.id)));
    let mut i = 0;
    while i < remaining.len() {
        if remaining[i].start_time < state.clock {
            i += 1;
            continue;
        }
        let t = remaining[i].start_time;
        let end = remaining[i..]
            .iter()
            .position(|j| j.start_time != t)
            .map_or(remaining.len(), |p| i + p);
        if let Some((_, job)) =
            best_net(inst, &state, remaining[i..end].iter().copied().enumerate())
        {
            state.commit(job, inst.metrics());
        }
        i = end;
    }
    state.into_schedule()
}
