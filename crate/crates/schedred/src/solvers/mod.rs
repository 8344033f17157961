//! Exact maximizers of early weight on a single machine.
//!
//! Four independent routes to the same optimum, used to cross-validate each
//! other and the generated instances: two brute-force enumerations for tiny
//! instances, a Pareto-front dynamic program that works on any value domain,
//! and a pseudo-polynomial time-horizon dynamic program for word-sized data.

mod bruteforce;
mod lawler_moore;
mod pareto;

pub use bruteforce::{solve_perm_bruteforce, solve_subset_bruteforce};
pub use lawler_moore::{solve_lawler_moore, solve_lawler_moore_with_horizon, DEFAULT_HORIZON};
pub use pareto::{
    solve_pareto, solve_pareto_with, FrontState, ParetoFront, ParetoOptions, ParetoRun,
    DEFAULT_STATE_BUDGET,
};

use thiserror::Error;

use crate::sched::SchedError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("{alg} handles at most {limit} jobs, got {got}")]
    TooManyJobs {
        alg: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("state budget {0} exceeded")]
    StateBudgetExceeded(u64),
    #[error("total processing time {total} exceeds the horizon limit {limit}")]
    HorizonTooLarge { total: u64, limit: u64 },
    #[error(transparent)]
    Sched(#[from] SchedError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// States, permutations, subsets, or table cells examined.
    pub states_created: u64,
    /// Largest nondominated front held at once (Pareto only).
    pub front_peak: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<V> {
    pub optimum_early_weight: V,
    /// A feasible early set attaining the optimum, ids ascending.
    pub witness_early_set: Vec<usize>,
    pub stats: SolveStats,
}
