use crate::algorithms::{Schedule, SelectionState};
use crate::instance::ProblemInstance;

use super::OracleError;

pub const ENUMERATION_MAX_JOBS: usize = 12;

struct Search<'a> {
    inst: &'a ProblemInstance,
    used: Vec<bool>,
    path: Vec<usize>,
    best: Vec<usize>,
    best_utility: f64,
}

impl Search<'_> {
    fn dfs(&mut self, poi: crate::graph::PoiId, clock: f64, spent: f64, utility: f64) {
        if utility > self.best_utility {
            self.best_utility = utility;
            self.best = self.path.clone();
        }
        let w = *self.inst.worker();
        let m = self.inst.metrics();
        for i in 0..self.inst.jobs().len() {
            if self.used[i] {
                continue;
            }
            let job = self.inst.jobs()[i];
            let Some(cost) = m.cost(poi, job.poi) else {
                continue;
            };
            if clock + m.time_of(cost) > job.start_time
                || spent + cost > w.budget
                || job.finish_time() > w.window_end
            {
                continue;
            }
            self.used[i] = true;
            self.path.push(i);
            self.dfs(
                job.poi,
                job.finish_time(),
                spent + cost,
                utility + job.utility,
            );
            self.path.pop();
            self.used[i] = false;
        }
    }
}

/// Exhaustive search over every feasible job sequence. Refuses instances
/// with more than [`ENUMERATION_MAX_JOBS`] jobs.
pub fn enumerate_optimal(inst: &ProblemInstance) -> Result<Schedule, OracleError> {
    let k = inst.jobs().len();
    if k > ENUMERATION_MAX_JOBS {
        return Err(OracleError::TooLarge {
            jobs: k,
            limit: ENUMERATION_MAX_JOBS,
        });
    }
    let w = inst.worker();
    let mut search = Search {
        inst,
        used: vec![false; k],
        path: Vec::new(),
        best: Vec::new(),
        best_utility: 0.0,
    };
    search.dfs(w.start_poi, w.window_start, 0.0, 0.0);
    let mut state = SelectionState::start(w);
    for i in search.best {
        state.commit(&inst.jobs()[i], inst.metrics());
    }
    Ok(state.into_schedule())
}
