mod common;

use proptest::prelude::*;
use rand::Rng;

use tpmc_core::random::{random_instance_with, RandomInstanceConfig};
use tpmc_core::{min_cost_transport, selection_feasible, FlowStatus, Selection};

fn small_instance(rng: &mut rand_chacha::ChaCha8Rng, min_cost: i64) -> tpmc_core::TpmcInstance {
    loop {
        let cfg = RandomInstanceConfig {
            supplies: rng.gen_range(1..=4),
            markets: rng.gen_range(1..=4),
            supply_cap: 3,
            demand_cap: 3,
            density: (1, 2),
            cost_range: (min_cost, 8),
            revenue_range: (0, 5),
            denominator_cap: 3,
        };
        let inst = random_instance_with(&cfg, rng);
        if inst.num_edges() <= 9 {
            return inst;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_exhaustive_flows(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = small_instance(&mut rng, -4);
        let m = inst.num_markets();
        let sel = Selection::from_rejection_mask(m, rng.gen_range(0..1u64 << m));
        let res = min_cost_transport(&inst, &sel);
        let oracle = common::brute_force_flow(&inst, &sel);
        prop_assert_eq!(selection_feasible(&inst, &sel), oracle.is_some());
        match oracle {
            None => prop_assert_eq!(res.status, FlowStatus::Infeasible),
            Some((cost, _)) => {
                prop_assert_eq!(res.status, FlowStatus::Optimal);
                prop_assert_eq!(&res.cost, &cost);
                let sol = inst.integral_solution(&res.flow, |j| !sel.accepts(j));
                prop_assert!(inst.check_feasible(&sol, true).is_feasible());
            }
        }
    }

    /// With nonnegative costs, accepting one more market never lowers the
    /// transport cost.
    #[test]
    fn cost_is_monotone_in_selection(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = small_instance(&mut rng, 0);
        let m = inst.num_markets();
        let mask: u64 = rng.gen_range(0..1u64 << m);
        let base = min_cost_transport(&inst, &Selection::from_rejection_mask(m, mask));
        for j in (0..m).filter(|j| mask >> j & 1 == 1) {
            let bigger = min_cost_transport(&inst, &Selection::from_rejection_mask(m, mask & !(1 << j)));
            if bigger.is_optimal() {
                prop_assert!(base.is_optimal());
                prop_assert!(bigger.cost >= base.cost);
            }
        }
    }

    #[test]
    fn deterministic(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = small_instance(&mut rng, -4);
        let sel = Selection::all(inst.num_markets());
        prop_assert_eq!(min_cost_transport(&inst, &sel), min_cost_transport(&inst, &sel));
    }
}
