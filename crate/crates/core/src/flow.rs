//! Exact min-cost transportation for a fixed market selection.
//!
//! Successive shortest augmenting paths: Dijkstra on reduced costs with
//! potentials seeded from the acyclic source -> supply -> market -> sink
//! network, so negative edge costs are fine. Capacities are integers, hence
//! every augmentation and the final flow are integral.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::instance::TpmcInstance;
use crate::{int, Rational};

/// The markets whose demand must be met (`z_j = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Selection {
    accepted: Vec<bool>,
}

impl Selection {
    pub fn none(markets: usize) -> Self {
        Self { accepted: vec![false; markets] }
    }

    pub fn all(markets: usize) -> Self {
        Self { accepted: vec![true; markets] }
    }

    pub fn from_accepted(markets: usize, accepted: impl IntoIterator<Item = usize>) -> Self {
        let mut sel = Self::none(markets);
        for j in accepted {
            sel.accepted[j] = true;
        }
        sel
    }

    /// Bit `j` of `mask` set means market `j` is rejected.
    pub fn from_rejection_mask(markets: usize, mask: u64) -> Self {
        Self { accepted: (0..markets).map(|j| mask >> j & 1 == 0).collect() }
    }

    pub fn accepts(&self, market: usize) -> bool {
        self.accepted[market]
    }

    pub fn accepted(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepted.iter().enumerate().filter(|(_, &a)| a).map(|(j, _)| j)
    }

    pub fn len(&self) -> usize {
        self.accepted().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn num_markets(&self) -> usize {
        self.accepted.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlowStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub status: FlowStatus,
    /// Units shipped on each instance edge; all zero when infeasible.
    pub flow: Vec<u64>,
    pub cost: Rational,
}

impl FlowResult {
    pub fn is_optimal(&self) -> bool {
        self.status == FlowStatus::Optimal
    }

    fn infeasible(edges: usize) -> Self {
        Self { status: FlowStatus::Infeasible, flow: vec![0; edges], cost: Rational::zero() }
    }
}

struct Arc {
    to: usize,
    cap: u64,
    cost: Rational,
    rev: usize,
    edge: Option<usize>,
}

struct Network {
    adj: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Self { adj: (0..nodes).map(|_| Vec::new()).collect(), arcs: Vec::new() }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u64, cost: Rational, edge: Option<usize>) {
        let fwd = self.arcs.len();
        self.arcs.push(Arc { to, cap, cost: cost.clone(), rev: fwd + 1, edge });
        self.arcs.push(Arc { to: from, cap: 0, cost: -cost, rev: fwd, edge: None });
        self.adj[from].push(fwd);
        self.adj[to].push(fwd + 1);
    }
}

/// Node layout: source, supplies, accepted markets, sink. Rejected markets
/// are left out of the network entirely.
fn build_network(inst: &TpmcInstance, sel: &Selection) -> (Network, usize, usize, u64) {
    let n1 = inst.num_supplies();
    let mut market_node = vec![usize::MAX; inst.num_markets()];
    let mut next = 1 + n1;
    for j in sel.accepted() {
        market_node[j] = next;
        next += 1;
    }
    let source = 0;
    let sink = next;
    let mut net = Network::new(next + 1);

    for (i, &s) in inst.supplies().iter().enumerate() {
        net.add_arc(source, 1 + i, s, Rational::zero(), None);
    }
    for (e, (edge, w)) in inst.edges().iter().zip(inst.costs()).enumerate() {
        let m = market_node[edge.market];
        if m != usize::MAX {
            let cap = inst.supplies()[edge.supply].min(inst.demands()[edge.market]);
            net.add_arc(1 + edge.supply, m, cap, w.clone(), Some(e));
        }
    }
    let mut demand = 0;
    for j in sel.accepted() {
        let d = inst.demands()[j];
        demand += d;
        net.add_arc(market_node[j], sink, d, Rational::zero(), None);
    }
    (net, source, sink, demand)
}

/// Minimum-cost integral flow meeting every accepted demand, or `Infeasible`.
///
/// Deterministic: Dijkstra pops the smallest tentative distance, lowest node
/// index first, and only strict improvements replace a predecessor, so ties
/// resolve towards arcs that come first in edge order.
pub fn min_cost_transport(inst: &TpmcInstance, sel: &Selection) -> FlowResult {
    let (mut net, source, sink, demand) = build_network(inst, sel);
    let n = net.adj.len();
    let edges = inst.num_edges();

    // Potentials: shortest distances in the initial (acyclic) network, in
    // topological order source < supplies < markets < sink.
    let mut potential: Vec<Option<Rational>> = vec![None; n];
    potential[source] = Some(Rational::zero());
    for u in 0..n {
        let Some(pu) = potential[u].clone() else { continue };
        for &a in &net.adj[u] {
            let arc = &net.arcs[a];
            if arc.cap == 0 {
                continue;
            }
            let cand = &pu + &arc.cost;
            match &potential[arc.to] {
                Some(pv) if *pv <= cand => {}
                _ => potential[arc.to] = Some(cand),
            }
        }
    }
    let mut h: Vec<Rational> = potential.into_iter().map(Option::unwrap_or_default).collect();

    let mut shipped = 0u64;
    while shipped < demand {
        let mut dist: Vec<Option<Rational>> = vec![None; n];
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut done = vec![false; n];
        dist[source] = Some(Rational::zero());
        loop {
            let mut pick: Option<usize> = None;
            for v in 0..n {
                if done[v] {
                    continue;
                }
                if let Some(dv) = &dist[v] {
                    if pick.map_or(true, |p| dv < dist[p].as_ref().unwrap()) {
                        pick = Some(v);
                    }
                }
            }
            let Some(u) = pick else { break };
            done[u] = true;
            let du = dist[u].clone().unwrap();
            for &a in &net.adj[u] {
                let arc = &net.arcs[a];
                if arc.cap == 0 || done[arc.to] {
                    continue;
                }
                let reduced = &arc.cost + &h[u] - &h[arc.to];
                debug_assert!(reduced >= Rational::zero(), "negative reduced cost");
                let cand = &du + reduced;
                if dist[arc.to].as_ref().map_or(true, |dv| cand < *dv) {
                    dist[arc.to] = Some(cand);
                    pred[arc.to] = Some(a);
                }
            }
        }

        let Some(dt) = dist[sink].clone() else {
            return FlowResult::infeasible(edges);
        };
        for v in 0..n {
            let step = match &dist[v] {
                Some(dv) if *dv < dt => dv.clone(),
                _ => dt.clone(),
            };
            h[v] += step;
        }

        let mut bottleneck = demand - shipped;
        let mut v = sink;
        while v != source {
            let a = pred[v].unwrap();
            bottleneck = bottleneck.min(net.arcs[a].cap);
            v = net.arcs[net.arcs[a].rev].to;
        }
        let mut v = sink;
        while v != source {
            let a = pred[v].unwrap();
            let rev = net.arcs[a].rev;
            net.arcs[a].cap -= bottleneck;
            net.arcs[rev].cap += bottleneck;
            v = net.arcs[rev].to;
        }
        shipped += bottleneck;
    }

    let mut flow = vec![0u64; edges];
    for arc in &net.arcs {
        if let Some(e) = arc.edge {
            // flow on a forward arc is the capacity sitting on its reverse
            flow[e] = net.arcs[arc.rev].cap;
        }
    }
    let cost = flow
        .iter()
        .zip(inst.costs())
        .filter(|(&f, _)| f > 0)
        .map(|(&f, w)| int(f as i64) * w)
        .sum();
    FlowResult { status: FlowStatus::Optimal, flow, cost }
}

/// True iff the accepted demands can all be met: the max-flow value of the
/// selection network equals the total accepted demand.
pub fn selection_feasible(inst: &TpmcInstance, sel: &Selection) -> bool {
    let (mut net, source, sink, demand) = build_network(inst, sel);
    let n = net.adj.len();
    let mut total = 0u64;
    loop {
        let mut pred: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &net.adj[u] {
                let arc = &net.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    pred[arc.to] = Some(a);
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            break;
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while v != source {
            let a = pred[v].unwrap();
            bottleneck = bottleneck.min(net.arcs[a].cap);
            v = net.arcs[net.arcs[a].rev].to;
        }
        let mut v = sink;
        while v != source {
            let a = pred[v].unwrap();
            let rev = net.arcs[a].rev;
            net.arcs[a].cap -= bottleneck;
            net.arcs[rev].cap += bottleneck;
            v = net.arcs[rev].to;
        }
        total += bottleneck;
    }
    total == demand
}
