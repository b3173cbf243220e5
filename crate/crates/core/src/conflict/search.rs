//! Path-marking search for a vertex set `V'` whose swap moves exactly one
//! unit of cardinality between the two solutions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use super::{Component, ComponentShape, ConflictError, ConflictGraph};
use crate::{frac, int};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapSubgraph {
    /// Node ids of `V'`.
    pub nodes: BTreeSet<usize>,
    /// Indices into the canonical component list, in marking order.
    pub components: Vec<usize>,
}

/// The three conditions that make a vertex set safe to swap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapConditions {
    /// No edge leaves the set.
    pub closed: bool,
    /// For every doubly served market, the set holds as many first-side
    /// copies as second-side copies.
    pub balanced_copies: bool,
    /// `|W1 ∩ V'| = |W2 ∩ V'| + 1`.
    pub unit_surplus: bool,
}

impl SwapConditions {
    pub fn holds(&self) -> bool {
        self.closed && self.balanced_copies && self.unit_surplus
    }
}

pub fn check_swap_conditions(graph: &ConflictGraph<'_>, set: &BTreeSet<usize>) -> SwapConditions {
    let nodes = graph.nodes();
    let in_set = |v: &usize| set.contains(v);
    let closed = set.iter().all(|&v| v < nodes.len())
        && graph.edges().iter().all(|(a, b)| in_set(a) == in_set(b));

    let mut balanced_copies = true;
    for &j in graph.p1.iter().chain(&graph.p2) {
        let mut first = 0usize;
        let mut second = 0usize;
        for &v in set.iter().filter(|&&v| v < nodes.len() && nodes[v].market == j) {
            if nodes[v].kind.on_first_side() {
                first += 1;
            } else {
                second += 1;
            }
        }
        balanced_copies &= first == second;
    }

    let count = |kind| set.iter().filter(|&&v| v < nodes.len() && nodes[v].kind == kind).count();
    let unit_surplus = count(super::NodeKind::FullU1) == count(super::NodeKind::FullU2) + 1;
    SwapConditions { closed, balanced_copies, unit_surplus }
}

fn partials(graph: &ConflictGraph<'_>, comp: &Component) -> Vec<usize> {
    comp.nodes.iter().copied().filter(|&v| !graph.nodes()[v].kind.is_full()).collect()
}

/// Finds `V'` when the total node value is at least 2.
///
/// A path of full nodes with value 1 is taken on its own. Otherwise the
/// search starts from a path whose single partial node gives it value 1/2 and
/// follows mirror copies of that market on the other side, through paths
/// with two partial nodes, until it reaches a path of value 1/2 with a single
/// partial node. Reaching a path of value -1/2 abandons the chain and starts
/// again from a fresh path of value 1/2.
pub fn find_swap_subgraph(graph: &ConflictGraph<'_>) -> Result<SwapSubgraph, ConflictError> {
    let total = graph.total_value();
    if total < int(2) {
        return Err(ConflictError::ValueTooSmall(total));
    }
    let comps = graph.classify_components()?;
    let is_path = |c: &Component| c.shape == ComponentShape::Path;

    for (idx, comp) in comps.iter().enumerate() {
        if is_path(comp) && partials(graph, comp).is_empty() && graph.value_of(&comp.nodes).is_one() {
            return Ok(SwapSubgraph { nodes: comp.nodes.iter().copied().collect(), components: vec![idx] });
        }
    }

    let half = frac(1, 2);
    let mut marked = vec![false; comps.len()];
    let mut chain: Vec<usize> = Vec::new();
    loop {
        let start = comps.iter().enumerate().position(|(idx, c)| {
            !marked[idx]
                && is_path(c)
                && !partials(graph, c).is_empty()
                && graph.value_of(&c.nodes) == half
        });
        let Some(start) = start else {
            return Err(ConflictError::SearchStuck("no unmarked path of value 1/2 with a partial node".into()));
        };
        marked[start] = true;
        chain.clear();
        chain.push(start);
        let ps = partials(graph, &comps[start]);
        if ps.len() != 1 {
            return Err(ConflictError::SearchStuck(format!(
                "starting path {start} has {} partial nodes",
                ps.len()
            )));
        }
        let mut pivot = ps[0];

        loop {
            let node = &graph.nodes()[pivot];
            let mirrors: Vec<usize> =
                node.tag.mirrors().iter().filter_map(|&t| graph.copy(node.market, t)).collect();
            let found = comps.iter().enumerate().find_map(|(idx, c)| {
                if marked[idx] || !is_path(c) {
                    return None;
                }
                mirrors.iter().copied().filter(|m| c.nodes.contains(m)).min().map(|m| (idx, m))
            });
            let Some((idx, mirror)) = found else {
                return Err(ConflictError::SearchStuck(format!(
                    "no unmarked path holds a mirror copy of market {}",
                    node.market
                )));
            };
            marked[idx] = true;
            chain.push(idx);

            let comp = &comps[idx];
            let ps = partials(graph, comp);
            let value = graph.value_of(&comp.nodes);
            match ps.len() {
                1 if value == half => {
                    let nodes = chain.iter().flat_map(|&c| comps[c].nodes.iter().copied()).collect();
                    return Ok(SwapSubgraph { nodes, components: chain });
                }
                1 if value == -half.clone() => break,
                2 => {
                    pivot = if ps[0] == mirror { ps[1] } else { ps[0] };
                }
                n => {
                    return Err(ConflictError::SearchStuck(format!(
                        "mirror path {idx} has {n} partial nodes and value {value}"
                    )));
                }
            }
        }
    }
}
