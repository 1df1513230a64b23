use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::graph::{PoiId, RoadNetwork, TravelMetrics};
use crate::instance::{Job, JobId, ProblemInstance, Worker};

/// One move-and-work step of a schedule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Leg {
    pub job_id: JobId,
    pub from_poi: PoiId,
    pub to_poi: PoiId,
    pub travel_cost: f64,
    pub travel_time: f64,
    pub arrival_time: f64,
    pub job_start: f64,
    pub job_finish: f64,
    pub utility: f64,
}

/// Ordered job sequence with per-leg accounting.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Schedule {
    pub legs: Vec<Leg>,
    pub total_utility: f64,
    pub total_travel_cost: f64,
}

impl Schedule {
    pub fn jobs_performed(&self) -> usize {
        self.legs.len()
    }

    pub fn job_ids(&self) -> Vec<JobId> {
        self.legs.iter().map(|l| l.job_id).collect()
    }

    pub fn budget_left(&self, worker: &Worker) -> f64 {
        worker.budget - self.total_travel_cost
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }
}

/// Where the worker is, what time it is, and what has been spent so far.
#[derive(Clone, Debug)]
pub struct SelectionState {
    pub current_poi: PoiId,
    pub clock: f64,
    pub spent: f64,
    budget: f64,
    schedule: Schedule,
}

impl SelectionState {
    pub fn start(worker: &Worker) -> Self {
        Self {
            current_poi: worker.start_poi,
            clock: worker.window_start,
            spent: 0.0,
            budget: worker.budget,
            schedule: Schedule::default(),
        }
    }

    pub fn budget_left(&self) -> f64 {
        (self.budget - self.spent).max(0.0)
    }

    pub fn schedule(&self) -> &Schedule {
        &self.schedule
    }

    /// Travel to `job`, wait if early, and perform it. The caller is
    /// responsible for having checked [`feasible_next`].
    pub fn commit(&mut self, job: &Job, metrics: &TravelMetrics) {
        let travel_cost = metrics
            .cost(self.current_poi, job.poi)
            .expect("committed job must be reachable");
        let travel_time = metrics.time_of(travel_cost);
        self.schedule.legs.push(Leg {
            job_id: job.id,
            from_poi: self.current_poi,
            to_poi: job.poi,
            travel_cost,
            travel_time,
            arrival_time: self.clock + travel_time,
            job_start: job.start_time,
            job_finish: job.finish_time(),
            utility: job.utility,
        });
        self.schedule.total_utility += job.utility;
        self.schedule.total_travel_cost += travel_cost;
        self.spent += travel_cost;
        self.clock = job.finish_time();
        self.current_poi = job.poi;
    }

    pub fn into_schedule(self) -> Schedule {
        self.schedule
    }
}

/// Can the worker go from its current state straight to `job`?
///
/// True iff the job's POI is reachable, the worker arrives no later than
/// the job's start time, the travel cost fits in the remaining budget, and
/// the job finishes inside the working window.
pub fn feasible_next(
    state: &SelectionState,
    job: &Job,
    worker: &Worker,
    metrics: &TravelMetrics,
) -> bool {
    let Some(cost) = metrics.cost(state.current_poi, job.poi) else {
        return false;
    };
    state.clock + metrics.time_of(cost) <= job.start_time
        && state.spent + cost <= worker.budget
        && job.finish_time() <= worker.window_end
}

/// Travel cost from the state's POI to the job, when the move is feasible.
pub(crate) fn feasible_cost(
    state: &SelectionState,
    job: &Job,
    inst: &ProblemInstance,
) -> Option<f64> {
    feasible_next(state, job, inst.worker(), inst.metrics())
        .then(|| inst.metrics().cost_or_inf(state.current_poi, job.poi))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegRecord {
    pub job_id: u32,
    pub from_poi: u64,
    pub to_poi: u64,
    pub travel_cost: f64,
    pub travel_time: f64,
    pub arrival_time: f64,
    pub job_start: f64,
    pub job_finish: f64,
    pub utility: f64,
}

/// On-disk schedule. POIs are original dataset labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile {
    pub format: String,
    pub version: u32,
    pub algorithm: String,
    pub seed: u64,
    pub instance_seed: u64,
    pub jobs_performed: usize,
    pub total_utility: f64,
    pub total_travel_cost: f64,
    pub budget_left: f64,
    pub legs: Vec<LegRecord>,
}

pub const SCHEDULE_FORMAT: &str = "jobroute-schedule";

impl ScheduleFile {
    pub fn new(inst: &ProblemInstance, schedule: &Schedule, algorithm: &str, seed: u64) -> Self {
        let net = inst.network();
        Self {
            format: SCHEDULE_FORMAT.to_string(),
            version: 1,
            algorithm: algorithm.to_string(),
            seed,
            instance_seed: inst.seed(),
            jobs_performed: schedule.jobs_performed(),
            total_utility: schedule.total_utility,
            total_travel_cost: schedule.total_travel_cost,
            budget_left: schedule.budget_left(inst.worker()),
            legs: schedule
                .legs
                .iter()
                .map(|l| LegRecord {
                    job_id: l.job_id.0,
                    from_poi: net.label(l.from_poi),
                    to_poi: net.label(l.to_poi),
                    travel_cost: l.travel_cost,
                    travel_time: l.travel_time,
                    arrival_time: l.arrival_time,
                    job_start: l.job_start,
                    job_finish: l.job_finish,
                    utility: l.utility,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("schedule serialises");
        s.push('\n');
        s
    }

    pub fn read(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let file: ScheduleFile = serde_json::from_str(&text)
            .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        if file.format != SCHEDULE_FORMAT || file.version != 1 {
            return Err(Error::Invalid(format!(
                "{}: not a {SCHEDULE_FORMAT} version 1 file",
                path.display()
            )));
        }
        Ok(file)
    }

    pub fn write(&self, path: &Path) -> Result<(), Error> {
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn to_schedule(&self, net: &RoadNetwork) -> Result<Schedule, Error> {
        let poi = |label: u64| {
            net.poi_by_label(label)
                .ok_or_else(|| Error::Invalid(format!("schedule references unknown poi {label}")))
        };
        let legs = self
            .legs
            .iter()
            .map(|r| {
                Ok(Leg {
                    job_id: JobId(r.job_id),
                    from_poi: poi(r.from_poi)?,
                    to_poi: poi(r.to_poi)?,
                    travel_cost: r.travel_cost,
                    travel_time: r.travel_time,
                    arrival_time: r.arrival_time,
                    job_start: r.job_start,
                    job_finish: r.job_finish,
                    utility: r.utility,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Schedule {
            legs,
            total_utility: self.total_utility,
            total_travel_cost: self.total_travel_cost,
        })
    }
}
