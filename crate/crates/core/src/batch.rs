//! Independent solves fanned out over the thread pool.

use crate::error::Result;
use crate::model::EffectivePotentialParams;
use crate::numerov::{solve_state, EigenResult, SolverConfig, WaveFunction};

/// One state to solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateRequest {
    pub problem: EffectivePotentialParams,
    pub node_target: usize,
    pub config: SolverConfig,
}

pub type StateOutcome = Result<(EigenResult, WaveFunction)>;

fn solve_one(req: &StateRequest) -> StateOutcome {
    solve_state(&req.problem, req.node_target, &req.config)
}

/// Solves every request one after another.
pub fn solve_batch_sequential(requests: &[StateRequest]) -> Vec<StateOutcome> {
    requests.iter().map(solve_one).collect()
}

/// Solves every request on the rayon pool; results keep input order.
#[cfg(feature = "parallel")]
pub fn solve_batch_parallel(requests: &[StateRequest]) -> Vec<StateOutcome> {
    use rayon::prelude::*;
    requests.par_iter().map(solve_one).collect()
}

/// Parallel when the `parallel` feature is enabled, sequential otherwise.
pub fn solve_batch(requests: &[StateRequest]) -> Vec<StateOutcome> {
    #[cfg(feature = "parallel")]
    {
        solve_batch_parallel(requests)
    }
    #[cfg(not(feature = "parallel"))]
    {
        solve_batch_sequential(requests)
    }
}
