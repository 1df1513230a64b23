use std::cmp::Ordering;

use super::{OracleError, OracleLimits};
use crate::algorithms::{Schedule, SelectionState};
use crate::instance::{Job, ProblemInstance};

/// Jobs that fit in the working window, ordered by `(start, id)`, with an
/// arc `a -> b` whenever `b` can directly follow `a`.
///
/// Arcs only point forward in that order: equal-start jobs can never
/// follow each other because durations are positive.
pub struct FeasibilityDag<'a> {
    pub nodes: Vec<&'a Job>,
    /// Travel cost from the worker's start, if the job can be the first one.
    pub source_arcs: Vec<Option<f64>>,
    /// `preds[b]` holds `(a, cost)` for every arc `a -> b`.
    pub preds: Vec<Vec<(usize, f64)>>,
}

impl<'a> FeasibilityDag<'a> {
    pub fn build(inst: &'a ProblemInstance) -> Self {
        let w = inst.worker();
        let m = inst.metrics();
        let mut nodes: Vec<&Job> = inst
            .jobs()
            .iter()
            .filter(|j| j.start_time >= w.window_start && j.finish_time() <= w.window_end)
            .collect();
        nodes.sort_by(|a, b| a.start_time.total_cmp(&b.start_time).then(a.id.cmp(&b.id)));

        let arc = |from_poi, ready: f64, to: &Job| {
            m.cost(from_poi, to.poi)
                .filter(|&c| ready + m.time_of(c) <= to.start_time)
        };
        let source_arcs = nodes
            .iter()
            .map(|j| arc(w.start_poi, w.window_start, j))
            .collect();
        let mut preds = vec![Vec::new(); nodes.len()];
        for (a, ja) in nodes.iter().enumerate() {
            for (b, jb) in nodes.iter().enumerate() {
                if a == b {
                    continue;
                }
                if let Some(c) = arc(ja.poi, ja.finish_time(), jb) {
                    assert!(
                        a < b,
                        "feasibility arc {} -> {} points backwards",
                        ja.id,
                        jb.id
                    );
                    preds[b].push((a, c));
                }
            }
        }
        Self {
            nodes,
            source_arcs,
            preds,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Label {
    cost: f64,
    utility: f64,
    node: usize,
    pred: Option<usize>,
}

struct Arena {
    labels: Vec<Label>,
}

impl Arena {
    /// Node indices from the first job to `id`'s node.
    fn chain(&self, mut id: usize) -> Vec<usize> {
        let mut out = vec![self.labels[id].node];
        while let Some(p) = self.labels[id].pred {
            out.push(self.labels[p].node);
            id = p;
        }
        out.reverse();
        out
    }

    fn chain_cmp(&self, a: usize, b: usize, dag: &FeasibilityDag) -> Ordering {
        let ids = |x| {
            self.chain(x)
                .into_iter()
                .map(|n| dag.nodes[n].id)
                .collect::<Vec<_>>()
        };
        ids(a).cmp(&ids(b))
    }
}

fn dominates(a: &Label, b: &Label) -> bool {
    a.cost <= b.cost && a.utility >= b.utility && (a.cost < b.cost || a.utility > b.utility)
}

/// Maximum-utility feasible schedule.
///
/// Labels costing more than the budget are pruned; at each node only
/// non-dominated labels survive, and among labels with equal cost and
/// utility the one with the lexicographically smaller job-id chain is kept.
pub fn exact_optimal(
    inst: &ProblemInstance,
    limits: &OracleLimits,
) -> Result<Schedule, OracleError> {
    if inst.jobs().len() > limits.max_jobs {
        return Err(OracleError::TooLarge {
            jobs: inst.jobs().len(),
            limit: limits.max_jobs,
        });
    }
    let budget = inst.worker().budget;
    let dag = FeasibilityDag::build(inst);
    let mut arena = Arena { labels: Vec::new() };
    let mut at_node: Vec<Vec<usize>> = vec![Vec::new(); dag.nodes.len()];

    for b in 0..dag.nodes.len() {
        let job = dag.nodes[b];
        let mut fresh: Vec<Label> = Vec::new();
        if let Some(c) = dag.source_arcs[b] {
            if c <= budget {
                fresh.push(Label {
                    cost: c,
                    utility: job.utility,
                    node: b,
                    pred: None,
                });
            }
        }
        for &(a, c) in &dag.preds[b] {
            for &l in &at_node[a] {
                let from = arena.labels[l];
                let cost = from.cost + c;
                if cost <= budget {
                    fresh.push(Label {
                        cost,
                        utility: from.utility + job.utility,
                        node: b,
                        pred: Some(l),
                    });
                }
            }
        }

        let base = arena.labels.len();
        arena.labels.extend(fresh.iter().copied());
        let mut ids: Vec<usize> = (base..arena.labels.len()).collect();
        ids.sort_by(|&x, &y| {
            let (lx, ly) = (&arena.labels[x], &arena.labels[y]);
            lx.cost
                .total_cmp(&ly.cost)
                .then(ly.utility.total_cmp(&lx.utility))
                .then_with(|| arena.chain_cmp(x, y, &dag))
        });
        let mut kept: Vec<usize> = Vec::new();
        let mut best_utility = f64::NEG_INFINITY;
        for id in ids {
            let u = arena.labels[id].utility;
            if u > best_utility {
                best_utility = u;
                kept.push(id);
            }
        }
        debug_assert!(kept.iter().all(|&x| kept
            .iter()
            .all(|&y| x == y || !dominates(&arena.labels[y], &arena.labels[x]))));
        if kept.len() > limits.max_labels_per_node {
            return Err(OracleError::LabelExplosion {
                job: job.id.0,
                labels: kept.len(),
                cap: limits.max_labels_per_node,
            });
        }
        at_node[b] = kept;
    }

    let best = at_node.iter().flatten().copied().max_by(|&x, &y| {
        let (lx, ly) = (&arena.labels[x], &arena.labels[y]);
        lx.utility
            .total_cmp(&ly.utility)
            .then(ly.cost.total_cmp(&lx.cost))
            .then_with(|| arena.chain_cmp(y, x, &dag))
    });

    let mut state = SelectionState::start(inst.worker());
    if let Some(best) = best {
        for n in arena.chain(best) {
            state.commit(dag.nodes[n], inst.metrics());
        }
    }
    Ok(state.into_schedule())
}
