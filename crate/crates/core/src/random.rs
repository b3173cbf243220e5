//! Seeded random instances for property tests, audits and the `gen` command.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::instance::{InstanceBuilder, TpmcInstance};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomInstanceConfig {
    pub supplies: usize,
    pub markets: usize,
    /// Capacities are drawn from `1..=supply_cap`.
    pub supply_cap: u64,
    /// Demands are drawn from `1..=demand_cap`.
    pub demand_cap: u64,
    /// Each supply-market pair is an edge with probability `num / den`.
    pub density: (u32, u32),
    /// Inclusive range for costs.
    pub cost_range: (i64, i64),
    /// Inclusive range for lost revenues.
    pub revenue_range: (i64, i64),
    /// Values are `p / q` with `q` drawn from `1..=denominator_cap`.
    pub denominator_cap: u32,
}

impl Default for RandomInstanceConfig {
    fn default() -> Self {
        Self {
            supplies: 4,
            markets: 4,
            supply_cap: 2,
            demand_cap: 2,
            density: (1, 2),
            cost_range: (0, 10),
            revenue_range: (0, 20),
            denominator_cap: 1,
        }
    }
}

impl RandomInstanceConfig {
    /// Unit supplies and demands in `{1, 2}`.
    pub fn simple_unit(supplies: usize, markets: usize) -> Self {
        Self { supplies, markets, supply_cap: 1, demand_cap: 2, ..Self::default() }
    }
}

/// A rational in `[lo, hi]` with denominator at most `den_cap`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64, den_cap: u32) -> Rational {
    let den = rng.gen_range(1..=den_cap.max(1)) as i64;
    let num = rng.gen_range(lo * den..=hi * den);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_instance(cfg: &RandomInstanceConfig, seed: u64) -> TpmcInstance {
    random_instance_with(cfg, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Every market gets at least one edge whenever there is a supply.
pub fn random_instance_with<R: Rng + ?Sized>(cfg: &RandomInstanceConfig, rng: &mut R) -> TpmcInstance {
    let mut b = InstanceBuilder::new();
    for i in 0..cfg.supplies {
        b = b.supply(format!("s{i}"), rng.gen_range(1..=cfg.supply_cap.max(1)) as i64);
    }
    let (rlo, rhi) = cfg.revenue_range;
    for j in 0..cfg.markets {
        let d = rng.gen_range(1..=cfg.demand_cap.max(1)) as i64;
        b = b.market(format!("m{j}"), d, random_rational(rng, rlo, rhi, cfg.denominator_cap));
    }
    let (clo, chi) = cfg.cost_range;
    let (num, den) = cfg.density;
    for j in 0..cfg.markets {
        let mut chosen: Vec<usize> =
            (0..cfg.supplies).filter(|_| num > 0 && rng.gen_ratio(num.min(den), den.max(1))).collect();
        if chosen.is_empty() && cfg.supplies > 0 {
            chosen.push(rng.gen_range(0..cfg.supplies));
        }
        for i in chosen {
            b = b.edge(format!("s{i}"), format!("m{j}"), random_rational(rng, clo, chi, cfg.denominator_cap));
        }
    }
    b.build().expect("generated ids are unique")
}
