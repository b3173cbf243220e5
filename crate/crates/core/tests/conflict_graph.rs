mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use tpmc_core::conflict::{
    apply_swap, edge_property_witness, find_swap_subgraph, objectives_balance, check_swap_conditions, ComponentShape,
    ConflictError, ConflictGraph, NodeKind,
};
use tpmc_core::instance::{Cardinality, InstanceBuilder};
use tpmc_core::{int, solve_exact, Rational};

/// Two markets with private suppliers where every selection costs 1.
fn two_disjoint() -> tpmc_core::TpmcInstance {
    InstanceBuilder::new()
        .supply("1", 1)
        .supply("2", 1)
        .market("a", 1, int(1))
        .market("b", 1, int(1))
        .edge("1", "a", int(1))
        .edge("2", "b", int(1))
        .build()
        .unwrap()
}

#[test]
fn disjoint_pair_swap_matches_enumeration() {
    let inst = two_disjoint();
    let serve_both = inst.integral_solution(&[1, 1], |_| false);
    let reject_both = inst.integral_solution(&[0, 0], |_| true);
    let g = ConflictGraph::build(&inst, &serve_both, &reject_both).unwrap();
    assert_eq!(g.total_value(), int(2));

    let sub = find_swap_subgraph(&g).unwrap();
    assert_eq!(g.value_of(&sub.nodes), int(1));
    assert!(check_swap_conditions(&g, &sub.nodes).holds());

    // some subset of the nodes satisfies the swap conditions
    let n = g.nodes().len();
    let valid = (0u32..1 << n).any(|mask| {
        let set: BTreeSet<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
        check_swap_conditions(&g, &set).holds()
    });
    assert!(valid);

    let out = apply_swap(&g, &sub.nodes).unwrap();
    assert_eq!((out.card3, out.card4), (1, 1));
    assert!(objectives_balance(&g, &out));
    let best = solve_exact(&inst, Some(Cardinality::exactly(1))).unwrap().unwrap();
    assert_eq!(out.sol3.objective, best.objective);

    let w = inst.costs().to_vec();
    let r = inst.revenues().to_vec();
    let witness = edge_property_witness(&inst, &w, &r, &serve_both, &reject_both).unwrap();
    assert_eq!(witness.rejected_count(), Some(1));
    assert_eq!(witness.objective, best.objective);
}

#[test]
fn empty_set_fails_only_surplus() {
    let inst = two_disjoint();
    let s = inst.integral_solution(&[1, 0], |j| j == 1);
    let g = ConflictGraph::build(&inst, &s, &s).unwrap();
    let r = check_swap_conditions(&g, &BTreeSet::new());
    assert!(r.closed && r.balanced_copies && !r.unit_surplus);
}

#[test]
fn lone_value_one_path_passes() {
    let inst = two_disjoint();
    let s1 = inst.integral_solution(&[1, 0], |j| j == 1);
    let s2 = inst.integral_solution(&[0, 0], |_| true);
    let g = ConflictGraph::build(&inst, &s1, &s2).unwrap();
    assert_eq!(g.nodes().len(), 1);
    assert!(check_swap_conditions(&g, &BTreeSet::from([0])).holds());
    let comps = g.classify_components().unwrap();
    assert_eq!(comps.len(), 1);
    assert_eq!(comps[0].shape, ComponentShape::Path);
}

#[test]
fn full_path_swap_flips_rejections() {
    let inst = two_disjoint();
    let s1 = inst.integral_solution(&[1, 1], |_| false);
    let s2 = inst.integral_solution(&[0, 0], |_| true);
    let g = ConflictGraph::build(&inst, &s1, &s2).unwrap();
    let out = apply_swap(&g, &BTreeSet::from([0])).unwrap();
    // market a is in V' ∩ W1, so it becomes rejected in sol3 and served in sol4
    assert_eq!(out.sol3.z, vec![int(1), int(0)]);
    assert_eq!(out.sol4.z, vec![int(0), int(1)]);
    assert_eq!(out.sol3.x, vec![int(0), int(1)]);
    assert_eq!(out.sol4.x, vec![int(1), int(0)]);
}

#[test]
fn witness_guards() {
    let inst = two_disjoint();
    let s = inst.integral_solution(&[1, 1], |_| false);
    let w = inst.costs().to_vec();
    let r = inst.revenues().to_vec();
    assert!(matches!(
        edge_property_witness(&inst, &w, &r, &s, &s),
        Err(ConflictError::NotSeparated { .. })
    ));
}

fn check_pair(pair: &common::OptimaPair, graph: &ConflictGraph<'_>) -> Result<(), TestCaseError> {
    let report = graph.audit_structure();
    prop_assert!(report.is_ok(), "{:?}", report);
    prop_assert_eq!(graph.total_value(), int(pair.k2 as i64) - int(pair.k1 as i64));
    for comp in graph.classify_components().unwrap() {
        if comp.shape == ComponentShape::EvenCycle {
            prop_assert!(comp.nodes.iter().all(|&v| graph.nodes()[v].kind.is_full()));
            prop_assert_eq!(graph.value_of(&comp.nodes), Rational::from_integer(0.into()));
        }
    }
    let sub = find_swap_subgraph(graph).unwrap();
    prop_assert!(check_swap_conditions(graph, &sub.nodes).holds());
    let out = apply_swap(graph, &sub.nodes).unwrap();
    let priced = graph.instance();
    prop_assert!(priced.check_feasible(&out.sol3, true).is_feasible());
    prop_assert!(priced.check_feasible(&out.sol4, true).is_feasible());
    prop_assert_eq!((out.card3, out.card4), (pair.k1 + 1, pair.k2 - 1));
    prop_assert!(objectives_balance(graph, &out));
    prop_assert_eq!(&out.delta, &Rational::from_integer(0.into()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn optima_pairs_swap_cleanly(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let pair = common::optima_pair(&mut rng);
        let priced = pair.priced();
        let graph = ConflictGraph::build(&priced, &pair.sol1, &pair.sol2).unwrap();
        check_pair(&pair, &graph)?;

        let assignment = common::random_assignment(&mut rng, pair.inst.num_markets());
        let shuffled = ConflictGraph::build_with(&priced, &pair.sol1, &pair.sol2, &assignment).unwrap();
        check_pair(&pair, &shuffled)?;

        let witness = edge_property_witness(&pair.inst, &pair.costs, &pair.revenues, &pair.sol1, &pair.sol2).unwrap();
        let exact = solve_exact(&priced, Some(Cardinality::exactly(pair.k1 + 1))).unwrap().unwrap();
        prop_assert_eq!(witness.objective, exact.objective);
    }

    /// Repeated witnesses walk from k1 to k2 through optimal solutions.
    #[test]
    fn witness_walk_reaches_every_cardinality(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let pair = common::optima_pair(&mut rng);
        let mut cur = pair.sol1.clone();
        for k in pair.k1 + 1..pair.k2 {
            cur = edge_property_witness(&pair.inst, &pair.costs, &pair.revenues, &cur, &pair.sol2).unwrap();
            prop_assert_eq!(cur.rejected_count(), Some(k));
            prop_assert_eq!(&cur.objective, &pair.sol1.objective);
        }
    }

    /// Structure holds for any pair of feasible integral solutions, optimal or not.
    #[test]
    fn structure_of_arbitrary_pairs(seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = common::rng(seed);
        let inst = common::random_simple_unit(&mut rng, 6, 5);
        let m = inst.num_markets();
        let mut sols = Vec::new();
        while sols.len() < 2 {
            let mask: u64 = rng.gen_range(0..1u64 << m);
            let res = tpmc_core::min_cost_transport(&inst, &tpmc_core::Selection::from_rejection_mask(m, mask));
            if res.is_optimal() {
                sols.push(inst.integral_solution(&res.flow, |j| mask >> j & 1 == 1));
            }
        }
        let graph = ConflictGraph::build(&inst, &sols[0], &sols[1]).unwrap();
        prop_assert!(graph.audit_structure().is_ok());
        for n in graph.nodes() {
            prop_assert!(!n.suppliers.is_empty());
            if !n.kind.is_full() {
                prop_assert_eq!(n.suppliers.len(), 1);
            }
            let expect = match n.kind {
                NodeKind::FullU1 => int(1),
                NodeKind::FullU2 => int(-1),
                NodeKind::PartialU1 => tpmc_core::frac(1, 2),
                NodeKind::PartialU2 => tpmc_core::frac(-1, 2),
            };
            prop_assert_eq!(n.kind.value(), expect);
        }
    }
}
