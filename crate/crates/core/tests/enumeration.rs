mod common;

use proptest::prelude::*;
use rand::Rng;

use tpmc_core::enumerate::{best_per_cardinality, optimal_support, DEFAULT_ENUMERATION_CAP};
use tpmc_core::instance::Cardinality;
use tpmc_core::{int, solve_exact, Rational};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The best over all exact bounds is the unconstrained optimum, and each
    /// bounded optimum respects its bound.
    #[test]
    fn exact_bounds_cover_free_optimum(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_simple(&mut rng, 4, 5);
        let free = solve_exact(&inst, None).unwrap().unwrap();
        let mut best: Option<Rational> = None;
        for k in 0..=inst.num_markets() {
            if let Some(sol) = solve_exact(&inst, Some(Cardinality::exactly(k))).unwrap() {
                prop_assert_eq!(sol.rejected_count(), Some(k));
                prop_assert!(inst.check_feasible(&sol, true).is_feasible());
                let v = sol.objective.unwrap();
                best = Some(best.map_or(v.clone(), |b: Rational| b.min(v)));
            }
        }
        prop_assert_eq!(best, free.objective);
    }

    /// On simple instances the optimal cardinalities of any objective form an
    /// interval.
    #[test]
    fn optimal_cardinalities_are_contiguous(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_simple(&mut rng, 5, 5);
        let costs: Vec<Rational> = (0..inst.num_edges()).map(|_| int(rng.gen_range(0..=1))).collect();
        let revenues: Vec<Rational> = (0..inst.num_markets()).map(|_| int(rng.gen_range(0..=2))).collect();
        let support = optimal_support(&inst, &costs, &revenues).unwrap();
        let cards: Vec<usize> = support.iter().map(|(k, _)| *k).collect();
        prop_assert!(!cards.is_empty());
        for w in cards.windows(2) {
            prop_assert_eq!(w[1], w[0] + 1);
        }
        let value = support[0].1.objective.clone();
        prop_assert!(support.iter().all(|(_, s)| s.objective == value));
    }

    #[test]
    fn per_cardinality_matches_exact(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let inst = common::random_simple(&mut rng, 4, 4);
        let best = best_per_cardinality(&inst, DEFAULT_ENUMERATION_CAP).unwrap();
        for (k, cand) in best.into_iter().enumerate() {
            let exact = solve_exact(&inst, Some(Cardinality::exactly(k))).unwrap();
            prop_assert_eq!(cand.map(|c| c.into_solution(&inst)), exact);
        }
    }
}
