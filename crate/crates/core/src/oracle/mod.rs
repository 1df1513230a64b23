//! Exact optima for small instances.
//!
//! [`exact_optimal`] propagates Pareto labels (travel cost spent, utility
//! earned) over the DAG of temporally compatible jobs. [`enumerate_optimal`]
//! is a plain exhaustive search kept deliberately separate from the DAG
//! code so the two can check each other.

mod enumerate;
mod pareto;

pub use enumerate::{enumerate_optimal, ENUMERATION_MAX_JOBS};
pub use pareto::{exact_optimal, FeasibilityDag};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Refuse instances with more jobs than this.
    pub max_jobs: usize,
    /// Fail when any DAG node holds more non-dominated labels than this.
    pub max_labels_per_node: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_jobs: 200,
            max_labels_per_node: 2000,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {jobs} jobs; the exact oracle accepts at most {limit}")]
    TooLarge { jobs: usize, limit: usize },
    #[error("label explosion: {labels} non-dominated labels at job {job} exceed the cap of {cap}")]
    LabelExplosion { job: u32, labels: usize, cap: usize },
}
