use std::collections::HashSet;
use std::fmt;

use super::Schedule;
use crate::graph::PoiId;
use crate::instance::{JobId, ProblemInstance};

/// Something wrong with a schedule, found by replaying it against the instance.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    UnknownJob {
        job: JobId,
    },
    DuplicateJob {
        job: JobId,
    },
    Unreachable {
        from: PoiId,
        job: JobId,
    },
    Window {
        job: JobId,
        start: f64,
        finish: f64,
    },
    EarlyStart {
        job: JobId,
        scheduled: f64,
        published: f64,
    },
    Temporal {
        previous: Option<JobId>,
        job: JobId,
        arrival: f64,
        start: f64,
    },
    Budget {
        spent: f64,
        budget: f64,
    },
    UtilityTotal {
        reported: f64,
        expected: f64,
    },
    TravelCostTotal {
        reported: f64,
        expected: f64,
    },
    LegRecord {
        job: JobId,
        field: &'static str,
        recorded: f64,
        expected: f64,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownJob { job } => write!(f, "unknown job {job}"),
            Violation::DuplicateJob { job } => write!(f, "duplicate: job {job} is performed twice"),
            Violation::Unreachable { from, job } => {
                write!(f, "unreachable: job {job} cannot be reached from poi index {from}")
            }
            Violation::Window { job, start, finish } => write!(
                f,
                "window: job {job} runs [{start}, {finish}] outside the working window"
            ),
            Violation::EarlyStart { job, scheduled, published } => write!(
                f,
                "early start: job {job} scheduled at {scheduled} before its start time {published}"
            ),
            Violation::Temporal { previous, job, arrival, start } => match previous {
                Some(p) => write!(
                    f,
                    "temporal: after job {p} the worker reaches job {job} at {arrival}, after its start {start}"
                ),
                None => write!(
                    f,
                    "temporal: the worker reaches job {job} at {arrival}, after its start {start}"
                ),
            },
            Violation::Budget { spent, budget } => {
                write!(f, "budget: travel cost {spent} exceeds budget {budget}")
            }
            Violation::UtilityTotal { reported, expected } => {
                write!(f, "utility total: reported {reported}, recomputed {expected}")
            }
            Violation::TravelCostTotal { reported, expected } => {
                write!(f, "travel cost total: reported {reported}, recomputed {expected}")
            }
            Violation::LegRecord { job, field, recorded, expected } => write!(
                f,
                "leg of job {job}: {field} recorded as {recorded}, recomputed {expected}"
            ),
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Replay `s` from the worker's start, recomputing every leg from the
/// instance. The numbers cached in `s` are only compared, never trusted.
pub fn validate_schedule(inst: &ProblemInstance, s: &Schedule) -> Result<(), Vec<Violation>> {
    let metrics = inst.metrics();
    let worker = inst.worker();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut poi = worker.start_poi;
    let mut clock = worker.window_start;
    let mut previous = None;
    let mut spent = 0.0;
    let mut utility = 0.0;

    for leg in &s.legs {
        let Some(job) = inst.job(leg.job_id) else {
            out.push(Violation::UnknownJob { job: leg.job_id });
            continue;
        };
        if !seen.insert(job.id) {
            out.push(Violation::DuplicateJob { job: job.id });
        }
        if job.start_time < worker.window_start || job.finish_time() > worker.window_end {
            out.push(Violation::Window {
                job: job.id,
                start: job.start_time,
                finish: job.finish_time(),
            });
        }
        if leg.job_start < job.start_time {
            out.push(Violation::EarlyStart {
                job: job.id,
                scheduled: leg.job_start,
                published: job.start_time,
            });
        }
        match metrics.cost(poi, job.poi) {
            None => out.push(Violation::Unreachable {
                from: poi,
                job: job.id,
            }),
            Some(cost) => {
                let time = metrics.time_of(cost);
                let arrival = clock + time;
                if arrival > job.start_time {
                    out.push(Violation::Temporal {
                        previous,
                        job: job.id,
                        arrival,
                        start: job.start_time,
                    });
                }
                let mut check = |field, recorded: f64, expected: f64| {
                    if !close(recorded, expected) {
                        out.push(Violation::LegRecord {
                            job: job.id,
                            field,
                            recorded,
                            expected,
                        });
                    }
                };
                check("travel_cost", leg.travel_cost, cost);
                check("travel_time", leg.travel_time, time);
                check("arrival_time", leg.arrival_time, arrival);
                check("job_finish", leg.job_finish, job.finish_time());
                check("utility", leg.utility, job.utility);
                if leg.job_start > job.start_time {
                    check("job_start", leg.job_start, job.start_time);
                }
                if leg.from_poi != poi {
                    check("from_poi", leg.from_poi.0 as f64, poi.0 as f64);
                }
                spent += cost;
            }
        }
        utility += job.utility;
        poi = job.poi;
        clock = job.finish_time();
        previous = Some(job.id);
    }

    if spent > worker.budget {
        out.push(Violation::Budget {
            spent,
            budget: worker.budget,
        });
    }
    if !close(s.total_utility, utility) {
        out.push(Violation::UtilityTotal {
            reported: s.total_utility,
            expected: utility,
        });
    }
    if !close(s.total_travel_cost, spent) {
        out.push(Violation::TravelCostTotal {
            reported: s.total_travel_cost,
            expected: spent,
        });
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::fixtures::*;
    use crate::algorithms::{
        select_best_first, select_nearest_neighbor, select_random, select_utility_greedy,
        SelectionState,
    };

    fn build(inst: &ProblemInstance, ids: &[u32]) -> Schedule {
        let mut st = SelectionState::start(inst.worker());
        for &id in ids {
            st.commit(inst.job(JobId(id)).unwrap(), inst.metrics());
        }
        st.into_schedule()
    }

    #[test]
    fn selector_outputs_are_valid() {
        let inst = six_job_instance();
        for s in [
            select_best_first(&inst),
            select_nearest_neighbor(&inst),
            select_utility_greedy(&inst),
            select_random(&inst, 3),
        ] {
            assert_eq!(validate_schedule(&inst, &s), Ok(()));
        }
        assert_eq!(
            validate_schedule(&inst, &build(&inst, &[0, 1, 4, 5])),
            Ok(())
        );
    }

    #[test]
    fn overlapping_jobs_name_both_ids() {
        let inst = instance_on_cycle(
            &[job(0, 1, 10.0, 100.0, 100.0), job(1, 1, 10.0, 150.0, 10.0)],
            worker(1, 0.0, 1000.0, 10.0),
        );
        let errs = validate_schedule(&inst, &build(&inst, &[0, 1])).unwrap_err();
        assert!(errs.iter().any(|v| matches!(
            v,
            Violation::Temporal {
                previous: Some(JobId(0)),
                job: JobId(1),
                ..
            }
        )));
        let msg = errs[0].to_string();
        assert!(msg.contains("job 0") && msg.contains("job 1"), "{msg}");
    }

    #[test]
    fn budget_overrun_by_one_unit() {
        // cost 1 + 1 + 0 + 3 = 5 against a budget of 4
        let inst = six_job_instance();
        let tight = instance_on_cycle(
            &[
                job(0, 2, 10.0, 1.0, 4.0),
                job(1, 3, 30.0, 6.0, 10.0),
                job(4, 3, 40.0, 20.0, 30.0),
                job(5, 4, 8.0, 60.0, 5.0),
            ],
            worker(1, 0.0, 100.0, 4.0),
        );
        let s = build(&inst, &[0, 1, 4, 5]);
        let errs = validate_schedule(&tight, &s).unwrap_err();
        assert_eq!(
            errs,
            vec![Violation::Budget {
                spent: 5.0,
                budget: 4.0
            }]
        );
    }

    #[test]
    fn duplicate_and_unknown_jobs() {
        let inst = six_job_instance();
        let mut s = build(&inst, &[4]);
        s.legs.push(s.legs[0]);
        s.total_utility = 80.0;
        let errs = validate_schedule(&inst, &s).unwrap_err();
        assert!(errs.contains(&Violation::DuplicateJob { job: JobId(4) }));
        let mut s = build(&inst, &[0]);
        s.legs[0].job_id = JobId(42);
        let errs = validate_schedule(&inst, &s).unwrap_err();
        assert!(errs.contains(&Violation::UnknownJob { job: JobId(42) }));
    }

    #[test]
    fn wrong_totals_and_early_start() {
        let inst = six_job_instance();
        let mut s = build(&inst, &[0, 4]);
        s.total_utility += 1.0;
        s.legs[1].job_start = 19.0;
        let errs = validate_schedule(&inst, &s).unwrap_err();
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::UtilityTotal { .. })));
        assert!(errs
            .iter()
            .any(|v| matches!(v, Violation::EarlyStart { job: JobId(4), .. })));
    }

    #[test]
    fn window_violation() {
        let inst = instance_on_cycle(&[job(0, 1, 10.0, 95.0, 10.0)], worker(1, 0.0, 100.0, 10.0));
        let errs = validate_schedule(&inst, &build(&inst, &[0])).unwrap_err();
        assert!(matches!(errs[0], Violation::Window { job: JobId(0), .. }));
    }

    #[test]
    fn unreachable_leg() {
        let inst = instance_on(
            &[(1, 2, 1.0), (3, 4, 1.0)],
            &[job(0, 3, 10.0, 5.0, 1.0)],
            worker(1, 0.0, 100.0, 10.0),
        );
        let s = Schedule {
            legs: vec![crate::algorithms::Leg {
                job_id: JobId(0),
                from_poi: inst.worker().start_poi,
                to_poi: inst.jobs()[0].poi,
                travel_cost: 0.0,
                travel_time: 0.0,
                arrival_time: 0.0,
                job_start: 5.0,
                job_finish: 6.0,
                utility: 10.0,
            }],
            total_utility: 10.0,
            total_travel_cost: 0.0,
        };
        let errs = validate_schedule(&inst, &s).unwrap_err();
        assert!(matches!(
            errs[0],
            Violation::Unreachable { job: JobId(0), .. }
        ));
    }
}
