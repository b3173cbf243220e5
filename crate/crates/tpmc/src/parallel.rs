//! Threaded versions of the enumeration passes. Results match the serial
//! ones exactly for every thread count.

use std::ops::Range;
use std::thread;

use tpmc_core::cardinality::{feasible_selections, CcError, EnumerationSolver, FeasibleSelection};
use tpmc_core::enumerate::{better, check_cap, scan_range, EnumerationError, DEFAULT_ENUMERATION_CAP};
use tpmc_core::instance::{Cardinality, Solution, TpmcInstance};

/// Splits `0..total` into at most `jobs` contiguous chunks in order.
fn chunks(total: u64, jobs: usize) -> Vec<Range<u64>> {
    let jobs = (jobs.max(1) as u64).min(total.max(1));
    let size = total.div_ceil(jobs);
    (0..jobs).map(|i| (i * size).min(total)..((i + 1) * size).min(total)).filter(|r| !r.is_empty()).collect()
}

/// [`tpmc_core::solve_exact`] across `jobs` threads.
pub fn solve_exact_parallel(
    inst: &TpmcInstance,
    card: Option<Cardinality>,
    jobs: usize,
) -> Result<Option<Solution>, EnumerationError> {
    let total = check_cap(inst, DEFAULT_ENUMERATION_CAP)?;
    if let Some(c) = card {
        if c.k > inst.num_markets() {
            return Err(EnumerationError::BoundOutOfRange { k: c.k, markets: inst.num_markets() });
        }
    }
    let parts = thread::scope(|s| {
        let handles: Vec<_> =
            chunks(total, jobs).into_iter().map(|r| s.spawn(move || scan_range(inst, card, r))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect::<Vec<_>>()
    });
    Ok(parts.into_iter().fold(None, better).map(|c| c.into_solution(inst)))
}

/// Feasible-selection table of `inst` built across `jobs` threads, in mask order.
pub fn selection_table(inst: &TpmcInstance, jobs: usize) -> Result<Vec<FeasibleSelection>, CcError> {
    let total = check_cap(inst, DEFAULT_ENUMERATION_CAP)?;
    Ok(thread::scope(|s| {
        let handles: Vec<_> =
            chunks(total, jobs).into_iter().map(|r| s.spawn(move || feasible_selections(inst, r))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    }))
}

/// Inner solver for the split instance of `inst`, with its table built in parallel.
pub fn enumeration_solver(inst: &TpmcInstance, jobs: usize) -> Result<EnumerationSolver, CcError> {
    let (split, _) = inst.split_supplies();
    let table = selection_table(&split, jobs)?;
    Ok(EnumerationSolver::from_table(&split, table))
}
