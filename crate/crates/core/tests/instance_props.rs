mod common;

use num_traits::One;
use proptest::prelude::*;
use rand::Rng;

use tpmc_core::instance::InstanceBuilder;
use tpmc_core::random::{random_instance, RandomInstanceConfig};
use tpmc_core::{frac, int, min_cost_transport, Rational, Selection};

#[test]
fn seven_five_four_is_simple() {
    let cfg = RandomInstanceConfig { supplies: 5, markets: 4, demand_cap: 2, ..Default::default() };
    let inst = random_instance(&cfg, 7);
    assert!(inst.is_simple());
    assert_eq!((inst.num_supplies(), inst.num_markets()), (5, 4));
}

#[test]
fn empty_sizes_give_empty_instance() {
    let cfg = RandomInstanceConfig { supplies: 0, markets: 0, ..Default::default() };
    let inst = random_instance(&cfg, 1);
    assert_eq!((inst.num_supplies(), inst.num_markets(), inst.num_edges()), (0, 0, 0));
}

#[test]
fn split_of_capacity_three() {
    let inst = InstanceBuilder::new()
        .supply("p", 3)
        .market("q", 2, int(1))
        .edge("p", "q", int(2))
        .build()
        .unwrap();
    let (split, map) = inst.split_supplies();
    assert_eq!(split.supply_ids(), ["p#1", "p#2", "p#3"]);
    assert_eq!(split.num_edges(), 3);
    let sol = split.integral_solution(&[1, 1, 0], |_| false);
    let merged = map.merge(&split, &sol).unwrap();
    assert_eq!(merged.x, vec![int(2)]);
    assert_eq!(merged.objective, Some(int(4)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Any feasible split solution merges to a feasible original with the same objective.
    #[test]
    fn split_merge_preserves_feasibility(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_simple(&mut rng, 4, 4);
        let (split, map) = inst.split_supplies();
        prop_assert!(split.has_unit_supplies());
        for (i, fiber) in map.fibers.iter().enumerate() {
            prop_assert_eq!(fiber.len() as u64, inst.supplies()[i]);
        }
        let m = split.num_markets();
        let mask: u64 = rng.gen_range(0..1u64 << m);
        let res = min_cost_transport(&split, &Selection::from_rejection_mask(m, mask));
        if res.is_optimal() {
            let sol = split.integral_solution(&res.flow, |j| mask >> j & 1 == 1);
            let merged = map.merge(&split, &sol).unwrap();
            prop_assert!(inst.check_feasible(&merged, true).is_feasible());
            let direct = inst.evaluate_objective(&merged.x, &merged.z).unwrap();
            prop_assert_eq!(Some(direct), sol.objective);
        }
    }

    /// The objective is affine along segments between points.
    #[test]
    fn objective_is_linear(seed in any::<u64>(), a in 0i64..=8) {
        let mut rng = common::rng(seed);
        let inst = common::random_simple(&mut rng, 4, 4);
        let point = |rng: &mut rand_chacha::ChaCha8Rng, n| -> Vec<Rational> {
            (0..n).map(|_| frac(rng.gen_range(0..=6), rng.gen_range(1..=3))).collect()
        };
        let (x1, z1) = (point(&mut rng, inst.num_edges()), point(&mut rng, inst.num_markets()));
        let (x2, z2) = (point(&mut rng, inst.num_edges()), point(&mut rng, inst.num_markets()));
        let alpha = frac(a, 8);
        let beta = Rational::one() - &alpha;
        let mix = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
            u.iter().zip(v).map(|(p, q)| &alpha * p + &beta * q).collect()
        };
        let lhs = inst.evaluate_objective(&mix(&x1, &x2), &mix(&z1, &z2)).unwrap();
        let rhs = &alpha * inst.evaluate_objective(&x1, &z1).unwrap()
            + &beta * inst.evaluate_objective(&x2, &z2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// Rejecting everything with zero flow is always feasible and costs Σ r.
    #[test]
    fn full_rejection_is_feasible(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_simple(&mut rng, 5, 5);
        let sol = inst.integral_solution(&vec![0; inst.num_edges()], |_| true);
        prop_assert!(inst.check_feasible(&sol, true).is_feasible());
        let total: Rational = inst.revenues().iter().sum();
        prop_assert_eq!(sol.objective, Some(total));
    }
}
