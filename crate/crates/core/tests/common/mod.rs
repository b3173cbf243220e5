//! Helpers shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tpmc_core::conflict::{Side, SupplierAssignment};
use tpmc_core::enumerate::{best_per_cardinality, optimal_support, DEFAULT_ENUMERATION_CAP};
use tpmc_core::flow::Selection;
use tpmc_core::instance::{Solution, TpmcInstance};
use tpmc_core::matching::SimpleGraph;
use tpmc_core::random::{random_instance_with, random_rational, RandomInstanceConfig};
use tpmc_core::{int, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Cheapest integral flow for `sel`, by trying every integral `x` with
/// `0 <= x_e <= min(s_i, d_j)`. `None` if no flow meets the accepted demands.
pub fn brute_force_flow(inst: &TpmcInstance, sel: &Selection) -> Option<(Rational, Vec<u64>)> {
    let edges = inst.edges();
    let caps: Vec<u64> = edges
        .iter()
        .map(|e| if sel.accepts(e.market) { inst.supplies()[e.supply].min(inst.demands()[e.market]) } else { 0 })
        .collect();
    let mut x = vec![0u64; edges.len()];
    let mut best: Option<(Rational, Vec<u64>)> = None;
    loop {
        let mut ok = true;
        for j in 0..inst.num_markets() {
            let shipped: u64 = edges.iter().zip(&x).filter(|(e, _)| e.market == j).map(|(_, v)| *v).sum();
            let want = if sel.accepts(j) { inst.demands()[j] } else { 0 };
            ok &= shipped == want;
        }
        for i in 0..inst.num_supplies() {
            let used: u64 = edges.iter().zip(&x).filter(|(e, _)| e.supply == i).map(|(_, v)| *v).sum();
            ok &= used <= inst.supplies()[i];
        }
        if ok {
            let cost: Rational = inst.costs().iter().zip(&x).map(|(w, v)| w * int(*v as i64)).sum();
            if best.as_ref().map_or(true, |(b, _)| cost < *b) {
                best = Some((cost, x.clone()));
            }
        }
        // odometer increment
        let mut e = 0;
        loop {
            if e == x.len() {
                return best;
            }
            if x[e] < caps[e] {
                x[e] += 1;
                break;
            }
            x[e] = 0;
            e += 1;
        }
    }
}

pub fn random_simple_unit<R: Rng>(rng: &mut R, max_supplies: usize, max_markets: usize) -> TpmcInstance {
    let cfg = RandomInstanceConfig {
        supplies: rng.gen_range(1..=max_supplies),
        markets: rng.gen_range(1..=max_markets),
        supply_cap: 1,
        demand_cap: 2,
        density: (1, 2),
        cost_range: (-3, 6),
        revenue_range: (-2, 12),
        denominator_cap: 2,
    };
    random_instance_with(&cfg, rng)
}

pub fn random_simple<R: Rng>(rng: &mut R, max_supplies: usize, max_markets: usize) -> TpmcInstance {
    let cfg = RandomInstanceConfig {
        supplies: rng.gen_range(1..=max_supplies),
        markets: rng.gen_range(1..=max_markets),
        supply_cap: 2,
        demand_cap: 2,
        density: (1, 2),
        cost_range: (-3, 6),
        revenue_range: (-2, 12),
        denominator_cap: 3,
    };
    random_instance_with(&cfg, rng)
}

/// Two optimal integral solutions for `(costs, revenues)` with at least two
/// cardinalities between them.
pub struct OptimaPair {
    pub inst: TpmcInstance,
    pub costs: Vec<Rational>,
    pub revenues: Vec<Rational>,
    pub sol1: Solution,
    pub sol2: Solution,
    pub k1: usize,
    pub k2: usize,
}

impl OptimaPair {
    pub fn priced(&self) -> TpmcInstance {
        self.inst.with_objective(&self.costs, &self.revenues).unwrap()
    }
}

/// Revenues shifted so that two lower-envelope vertices of the
/// per-cardinality optimum become simultaneously optimal, when some pair of
/// consecutive envelope vertices is at least two apart.
fn envelope_shift(inst: &TpmcInstance) -> Option<Rational> {
    let best = best_per_cardinality(inst, DEFAULT_ENUMERATION_CAP).ok()?;
    let pts: Vec<(i64, Rational)> =
        best.iter().enumerate().filter_map(|(k, c)| c.as_ref().map(|c| (k as i64, c.value.clone()))).collect();
    // lower convex hull by a monotone chain
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            // drop b if it lies on or above segment a-p
            let lhs = (&b.1 - &a.1) * int(p.0 - a.0);
            let rhs = (&p.1 - &a.1) * int(b.0 - a.0);
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2).find(|w| w[1].0 - w[0].0 >= 2).map(|w| -(&w[1].1 - &w[0].1) / int(w[1].0 - w[0].0))
}

/// Draws instances until an objective with an optimal-cardinality range of
/// width at least 2 appears. Mixes flat objectives, coarse integer data and
/// envelope breakpoints of random data.
pub fn optima_pair<R: Rng>(rng: &mut R) -> OptimaPair {
    loop {
        let inst = random_simple_unit(rng, 6, 5);
        let n_e = inst.num_edges();
        let n_m = inst.num_markets();
        let (costs, revenues) = match rng.gen_range(0..3) {
            0 => (vec![Rational::zero(); n_e], vec![Rational::zero(); n_m]),
            1 => (
                (0..n_e).map(|_| int(rng.gen_range(0..=1))).collect(),
                (0..n_m).map(|_| int(rng.gen_range(0..=2))).collect(),
            ),
            _ => match envelope_shift(&inst) {
                Some(t) => (inst.costs().to_vec(), inst.revenues().iter().map(|r| r + &t).collect()),
                None => continue,
            },
        };
        let support = optimal_support(&inst, &costs, &revenues).unwrap();
        if support.len() < 2 {
            continue;
        }
        // pick two support entries at least two apart, preferring a random pair
        let mut pairs = Vec::new();
        for a in 0..support.len() {
            for b in a + 1..support.len() {
                if support[b].0 >= support[a].0 + 2 {
                    pairs.push((a, b));
                }
            }
        }
        let Some(&(a, b)) = pairs.choose(rng) else { continue };
        let (k1, sol1) = support[a].clone();
        let (k2, sol2) = support[b].clone();
        return OptimaPair { inst, costs, revenues, sol1, sol2, k1, k2 };
    }
}

/// Random subset of `(market, side)` pairs whose supplier order is reversed.
pub fn random_assignment<R: Rng>(rng: &mut R, markets: usize) -> SupplierAssignment {
    let mut set = BTreeSet::new();
    for j in 0..markets {
        for side in [Side::First, Side::Second] {
            if rng.gen_bool(0.5) {
                set.insert((j, side));
            }
        }
    }
    SupplierAssignment::Swapped(set)
}

/// Graph on `n` vertices with `m` distinct random edges and rational weights.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> SimpleGraph {
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    let weights = (0..pairs.len()).map(|_| random_rational(rng, -2, 9, 3)).collect();
    SimpleGraph::new(n, pairs, weights).unwrap()
}

pub fn complete_graph(n: usize) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let weights = vec![int(1); edges.len()];
    SimpleGraph::new(n, edges, weights).unwrap()
}

pub fn petersen_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    edges
}
