//! Exchanging the parts of two solutions that lie in a swap subgraph.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::search::{find_swap_subgraph, check_swap_conditions};
use super::{ConflictError, ConflictGraph, CopyTag, Side};
use crate::instance::{Solution, TpmcInstance};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapOutcome {
    pub sol3: Solution,
    pub sol4: Solution,
    /// Objective of the first source.
    pub rho: Rational,
    /// `obj(sol1) - obj(sol3)`; the swap gives `obj(sol4) = obj(sol2) + delta`.
    pub delta: Rational,
    pub card3: usize,
    pub card4: usize,
}

/// Builds `sol3` (the first source with `V'` exchanged in) and `sol4` (the
/// second source with `V'` exchanged out). Requires `set` to satisfy the swap
/// conditions; fails if either result is infeasible.
pub fn apply_swap(graph: &ConflictGraph<'_>, set: &BTreeSet<usize>) -> Result<SwapOutcome, ConflictError> {
    let report = check_swap_conditions(graph, set);
    if !report.holds() {
        return Err(ConflictError::SwapConditionsFailed(report));
    }
    let inst = graph.instance();
    let in_set = |market: usize, tag: CopyTag| graph.copy(market, tag).is_some_and(|v| set.contains(&v));

    let m = inst.num_markets();
    let mut z3 = vec![false; m];
    let mut z4 = vec![false; m];
    let mut x3 = vec![0u64; inst.num_edges()];
    let mut x4 = vec![0u64; inst.num_edges()];
    let ship = |x: &mut Vec<u64>, suppliers: &[usize], market: usize| {
        for &i in suppliers {
            x[graph.edge_of(i, market)] += 1;
        }
    };

    for &j in &graph.r {
        z3[j] = true;
        z4[j] = true;
    }
    for &j in &graph.w1 {
        let sup = graph.suppliers_in(Side::First, j).expect("served by the first source");
        if in_set(j, CopyTag::Whole) {
            z3[j] = true;
            ship(&mut x4, sup, j);
        } else {
            z4[j] = true;
            ship(&mut x3, sup, j);
        }
    }
    for &j in &graph.w2 {
        let sup = graph.suppliers_in(Side::Second, j).expect("served by the second source");
        if in_set(j, CopyTag::Whole) {
            z4[j] = true;
            ship(&mut x3, sup, j);
        } else {
            z3[j] = true;
            ship(&mut x4, sup, j);
        }
    }
    for &j in graph.p1.iter().chain(&graph.p2) {
        for tag in [CopyTag::J1, CopyTag::J2, CopyTag::J3, CopyTag::J4] {
            let Some(v) = graph.copy(j, tag) else { continue };
            let sup = &graph.nodes()[v].suppliers;
            let first_side = matches!(tag, CopyTag::J1 | CopyTag::J2);
            if first_side != set.contains(&v) {
                ship(&mut x3, sup, j);
            } else {
                ship(&mut x4, sup, j);
            }
        }
    }

    let sol3 = inst.integral_solution(&x3, |j| z3[j]);
    let sol4 = inst.integral_solution(&x4, |j| z4[j]);
    for sol in [&sol3, &sol4] {
        if !inst.check_feasible(sol, true).is_feasible() {
            return Err(ConflictError::Falsified("swap produced an infeasible solution".into()));
        }
    }
    let (s1, _) = graph.sources();
    let rho = inst.evaluate_objective(&s1.x, &s1.z)?;
    let obj3 = sol3.objective.clone().expect("integral_solution sets the objective");
    let delta = &rho - obj3;
    let card3 = sol3.rejected_count().expect("integral");
    let card4 = sol4.rejected_count().expect("integral");
    Ok(SwapOutcome { sol3, sol4, rho, delta, card3, card4 })
}

/// Given two optimal integral solutions of the objective `(costs, revenues)`
/// with `k1 <= k2 - 2` rejected markets, returns an optimal integral solution
/// with `k1 + 1` rejected markets, priced under that objective.
pub fn edge_property_witness(
    inst: &TpmcInstance,
    costs: &[Rational],
    revenues: &[Rational],
    sol1: &Solution,
    sol2: &Solution,
) -> Result<Solution, ConflictError> {
    let priced = inst.with_objective(costs, revenues)?;
    let graph = ConflictGraph::build(&priced, sol1, sol2)?;
    let (k1, k2) = graph.cardinalities();
    if k1 + 2 > k2 {
        return Err(ConflictError::NotSeparated { k1, k2 });
    }
    let sub = find_swap_subgraph(&graph)?;
    let out = apply_swap(&graph, &sub.nodes)?;
    if !out.delta.is_zero() {
        return Err(ConflictError::NotBothOptimal { delta: out.delta });
    }
    debug_assert_eq!(out.card3, k1 + 1);
    Ok(out.sol3)
}

/// `obj(sol3) + obj(sol4) == obj(sol1) + obj(sol2)` for an outcome of
/// [`apply_swap`] on `graph`.
pub fn objectives_balance(graph: &ConflictGraph<'_>, out: &SwapOutcome) -> bool {
    let (s1, s2) = graph.sources();
    let inst = graph.instance();
    let total = |s: &Solution| inst.evaluate_objective(&s.x, &s.z).expect("dimensions match");
    total(s1) + total(s2) == total(&out.sol3) + total(&out.sol4)
        && total(&out.sol4) == total(s2) + &out.delta
        && out.card3 + out.card4 == graph.cardinalities().0 + graph.cardinalities().1
}
