//! Multi-threaded driver for the exhaustive search.
//!
//! Branches of a [`SearchPlan`] run on a rayon pool and are merged in
//! branch order, so status, witness and node count match the sequential
//! walk for any number of workers. Once a branch finds a witness or runs
//! out of budget, later branches are abandoned; their outcomes could never
//! be merged anyway.

use std::sync::atomic::{AtomicUsize, Ordering};

use oakit_core::search::{oracle_max_multiplicity_with, MaxMultiplicity, SearchPlan};
use oakit_core::{SearchError, SearchMode, SearchProblem, SearchResult};
use rayon::prelude::*;

pub fn search(problem: &SearchProblem, workers: usize) -> Result<SearchResult, SearchError> {
    search_with_interrupt(problem, workers, &|| false)
}

/// Like [`search`]; when `interrupt` returns true the remaining work is
/// abandoned and the result reports an exceeded budget.
pub fn search_with_interrupt(
    problem: &SearchProblem,
    workers: usize,
    interrupt: &(dyn Fn() -> bool + Sync),
) -> Result<SearchResult, SearchError> {
    let plan = SearchPlan::new(problem)?;
    let mut merger = plan.merger();
    if workers <= 1 || plan.num_branches() <= 1 {
        for i in 0..plan.num_branches() {
            if merger.is_done() {
                break;
            }
            merger.push(plan.run_branch(i, merger.remaining_budget(), interrupt));
        }
        return Ok(merger.finish());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SearchError::InvalidProblem(format!("thread pool: {e}")))?;
    let budget = plan.branch_budget();
    let stops_early = problem.mode == SearchMode::Exists;
    // Smallest branch index after which nothing needs to run.
    let cutoff = AtomicUsize::new(usize::MAX);
    let outcomes: Vec<_> = pool.install(|| {
        (0..plan.num_branches())
            .into_par_iter()
            .map(|i| {
                if cutoff.load(Ordering::Relaxed) < i {
                    return None;
                }
                let out = plan.run_branch(i, budget, &|| cutoff.load(Ordering::Relaxed) < i || interrupt());
                if out.exceeded || (stops_early && out.first.is_some()) {
                    cutoff.fetch_min(i, Ordering::Relaxed);
                }
                Some(out)
            })
            .collect()
    });
    for out in outcomes {
        if merger.is_done() {
            break;
        }
        merger.push(out.expect("branches before the cutoff always run"));
    }
    Ok(merger.finish())
}

/// Largest feasible forced multiplicity, each step searched with
/// `workers` threads.
pub fn max_multiplicity(problem: &SearchProblem, workers: usize) -> Result<MaxMultiplicity, SearchError> {
    oracle_max_multiplicity_with(problem, |p| search(p, workers))
}
