//! Conflict graph of two integral solutions of a unit-supply simple instance.
//!
//! Markets served by exactly one of the two solutions become *full* nodes on
//! that solution's side. Markets served by both are split into *partial*
//! nodes, one per supplier: copies `j1, j2` carry the suppliers used by the
//! first solution, `j3, j4` those used by the second. A node of the first
//! side and a node of the second side are adjacent iff they share a supplier.
//!
//! Every supplier serves at most one market per solution, so degrees are
//! bounded by the supplier-set sizes: components are paths or even cycles and
//! partial nodes are always path endpoints.

mod search;
mod swap;

pub use search::{find_swap_subgraph, check_swap_conditions, SwapConditions, SwapSubgraph};
pub use swap::{apply_swap, edge_property_witness, objectives_balance, SwapOutcome};

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::instance::{InstanceError, Solution, TpmcInstance};
use crate::{frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    FullU1,
    FullU2,
    PartialU1,
    PartialU2,
}

impl NodeKind {
    pub fn is_full(self) -> bool {
        matches!(self, Self::FullU1 | Self::FullU2)
    }

    pub fn on_first_side(self) -> bool {
        matches!(self, Self::FullU1 | Self::PartialU1)
    }

    /// 1 and -1 for full nodes, 1/2 and -1/2 for partial nodes, positive on
    /// the first side.
    pub fn value(self) -> Rational {
        match self {
            Self::FullU1 => Rational::one(),
            Self::PartialU1 => frac(1, 2),
            Self::PartialU2 => frac(-1, 2),
            Self::FullU2 => -Rational::one(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::FullU1 => "full_u1",
            Self::FullU2 => "full_u2",
            Self::PartialU1 => "partial_u1",
            Self::PartialU2 => "partial_u2",
        }
    }
}

/// Which copy of a market a node is. Full nodes are `Whole`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CopyTag {
    Whole,
    J1,
    J2,
    J3,
    J4,
}

impl CopyTag {
    pub fn name(self) -> &'static str {
        match self {
            Self::Whole => "",
            Self::J1 => "j1",
            Self::J2 => "j2",
            Self::J3 => "j3",
            Self::J4 => "j4",
        }
    }

    /// Copies on the other side of the same market.
    pub fn mirrors(self) -> &'static [CopyTag] {
        match self {
            Self::J1 | Self::J2 => &[Self::J3, Self::J4],
            Self::J3 | Self::J4 => &[Self::J1, Self::J2],
            Self::Whole => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictNode {
    pub kind: NodeKind,
    pub market: usize,
    pub tag: CopyTag,
    /// Supplier set, ascending supply indices. Exactly one entry for partial nodes.
    pub suppliers: Vec<usize>,
}

/// Which solution's supplier pair a swapped assignment refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    First,
    Second,
}

/// How the two suppliers of a doubly served market are dealt to its copies.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum SupplierAssignment {
    /// Lower supply index to `j1` (resp. `j3`).
    #[default]
    Ascending,
    /// Ascending, except the listed `(market, side)` pairs which are reversed.
    Swapped(BTreeSet<(usize, Side)>),
}

impl SupplierAssignment {
    fn reversed(&self, market: usize, side: Side) -> bool {
        match self {
            Self::Ascending => false,
            Self::Swapped(set) => set.contains(&(market, side)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Path,
    EvenCycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Nodes in walk order: from the lower-numbered endpoint for paths, from
    /// the lowest node for cycles.
    pub nodes: Vec<usize>,
    pub shape: ComponentShape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConflictError {
    NotUnitSupply,
    NotSimple,
    /// Input solution (1 or 2) is not feasible and integral.
    InvalidSolution(u8),
    /// The search needs `v(U1 ∪ U2) >= 2`.
    ValueTooSmall(Rational),
    /// Swap and witness need `k1 <= k2 - 2`.
    NotSeparated { k1: usize, k2: usize },
    /// A structural claim failed on a built graph.
    Falsified(String),
    /// A step of the path-marking search could not be carried out.
    SearchStuck(String),
    SwapConditionsFailed(SwapConditions),
    /// The swap objectives are `rho ∓ delta` with `delta != 0`: the inputs
    /// were not both optimal.
    NotBothOptimal { delta: Rational },
    Instance(InstanceError),
}

impl fmt::Display for ConflictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotUnitSupply => f.write_str("conflict graphs need unit supplies"),
            Self::NotSimple => f.write_str("conflict graphs need demands in {1, 2}"),
            Self::InvalidSolution(n) => write!(f, "solution {n} is not feasible and integral"),
            Self::ValueTooSmall(v) => write!(f, "total node value {v} is below 2"),
            Self::NotSeparated { k1, k2 } => {
                write!(f, "cardinalities {k1} and {k2} are not at least 2 apart")
            }
            Self::Falsified(what) => write!(f, "structural claim failed: {what}"),
            Self::SearchStuck(what) => write!(f, "swap subgraph search stuck: {what}"),
            Self::SwapConditionsFailed(r) => write!(f, "subgraph fails swap conditions: {r:?}"),
            Self::NotBothOptimal { delta } => {
                write!(f, "swap moved the objective by {delta}; inputs are not both optimal")
            }
            Self::Instance(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConflictError {}

impl From<InstanceError> for ConflictError {
    fn from(e: InstanceError) -> Self {
        Self::Instance(e)
    }
}

/// Markets served by the given integral solution, and its per-market supplier sets.
fn served_by(inst: &TpmcInstance, sol: &Solution) -> Vec<Option<Vec<usize>>> {
    let mut sets: Vec<Option<Vec<usize>>> =
        (0..inst.num_markets()).map(|j| (!sol.is_rejected(j)).then(Vec::new)).collect();
    for (edge, x) in inst.edges().iter().zip(&sol.x) {
        if x.is_one() {
            if let Some(set) = sets[edge.market].as_mut() {
                set.push(edge.supply);
            }
        }
    }
    for set in sets.iter_mut().flatten() {
        set.sort_unstable();
    }
    sets
}

#[derive(Debug, Clone)]
pub struct ConflictGraph<'a> {
    inst: &'a TpmcInstance,
    sol1: Solution,
    sol2: Solution,
    nodes: Vec<ConflictNode>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    copies: BTreeMap<(usize, CopyTag), usize>,
    edge_index: BTreeMap<(usize, usize), usize>,
    supplier_sets: [Vec<Option<Vec<usize>>>; 2],
    /// Served only by the first solution.
    pub w1: Vec<usize>,
    /// Served only by the second solution.
    pub w2: Vec<usize>,
    /// Served by both, demand 1.
    pub p1: Vec<usize>,
    /// Served by both, demand 2.
    pub p2: Vec<usize>,
    /// Rejected by both.
    pub r: Vec<usize>,
}

impl<'a> ConflictGraph<'a> {
    /// Builds the graph with the ascending supplier assignment.
    pub fn build(inst: &'a TpmcInstance, sol1: &Solution, sol2: &Solution) -> Result<Self, ConflictError> {
        Self::build_with(inst, sol1, sol2, &SupplierAssignment::Ascending)
    }

    pub fn build_with(
        inst: &'a TpmcInstance,
        sol1: &Solution,
        sol2: &Solution,
        assignment: &SupplierAssignment,
    ) -> Result<Self, ConflictError> {
        if !inst.has_unit_supplies() {
            return Err(ConflictError::NotUnitSupply);
        }
        if !inst.is_simple() {
            return Err(ConflictError::NotSimple);
        }
        for (n, sol) in [(1u8, sol1), (2u8, sol2)] {
            if !inst.check_feasible(sol, true).is_feasible() {
                return Err(ConflictError::InvalidSolution(n));
            }
        }

        let first = served_by(inst, sol1);
        let second = served_by(inst, sol2);
        let mut nodes = Vec::new();
        let (mut w1, mut w2, mut p1, mut p2, mut r) = (vec![], vec![], vec![], vec![], vec![]);
        for j in 0..inst.num_markets() {
            match (&first[j], &second[j]) {
                (Some(s), None) => {
                    w1.push(j);
                    nodes.push(ConflictNode {
                        kind: NodeKind::FullU1,
                        market: j,
                        tag: CopyTag::Whole,
                        suppliers: s.clone(),
                    });
                }
                (None, Some(s)) => {
                    w2.push(j);
                    nodes.push(ConflictNode {
                        kind: NodeKind::FullU2,
                        market: j,
                        tag: CopyTag::Whole,
                        suppliers: s.clone(),
                    });
                }
                (Some(s1), Some(s2)) => {
                    if inst.demands()[j] == 2 {
                        p2.push(j);
                    } else {
                        p1.push(j);
                    }
                    let mut deal = |set: &Vec<usize>, side: Side, kind, tags: [CopyTag; 2]| {
                        let mut order = set.clone();
                        if assignment.reversed(j, side) {
                            order.reverse();
                        }
                        for (t, &i) in tags.iter().zip(&order) {
                            nodes.push(ConflictNode { kind, market: j, tag: *t, suppliers: vec![i] });
                        }
                    };
                    deal(s1, Side::First, NodeKind::PartialU1, [CopyTag::J1, CopyTag::J2]);
                    deal(s2, Side::Second, NodeKind::PartialU2, [CopyTag::J3, CopyTag::J4]);
                }
                (None, None) => r.push(j),
            }
        }

        let copies = nodes.iter().enumerate().map(|(id, n)| ((n.market, n.tag), id)).collect();
        let mut edges = Vec::new();
        let mut adj = vec![Vec::new(); nodes.len()];
        for (a, na) in nodes.iter().enumerate().filter(|(_, n)| n.kind.on_first_side()) {
            for (b, nb) in nodes.iter().enumerate().filter(|(_, n)| !n.kind.on_first_side()) {
                if na.suppliers.iter().any(|i| nb.suppliers.contains(i)) {
                    edges.push((a, b));
                    adj[a].push(b);
                    adj[b].push(a);
                }
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let edge_index = inst
            .edges()
            .iter()
            .enumerate()
            .map(|(e, edge)| ((edge.supply, edge.market), e))
            .collect();

        Ok(Self {
            inst,
            sol1: sol1.clone(),
            sol2: sol2.clone(),
            nodes,
            edges,
            adj,
            copies,
            edge_index,
            supplier_sets: [first, second],
            w1,
            w2,
            p1,
            p2,
            r,
        })
    }

    pub fn instance(&self) -> &'a TpmcInstance {
        self.inst
    }

    pub fn sources(&self) -> (&Solution, &Solution) {
        (&self.sol1, &self.sol2)
    }

    pub fn nodes(&self) -> &[ConflictNode] {
        &self.nodes
    }

    /// `(a, b)` pairs with `a` on the first side and `b` on the second.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adj[node]
    }

    /// Node id of copy `tag` of `market`, if present.
    pub fn copy(&self, market: usize, tag: CopyTag) -> Option<usize> {
        self.copies.get(&(market, tag)).copied()
    }

    pub(crate) fn edge_of(&self, supply: usize, market: usize) -> usize {
        self.edge_index[&(supply, market)]
    }

    /// Supplier set of `market` in the first or second source solution.
    pub fn suppliers_in(&self, side: Side, market: usize) -> Option<&[usize]> {
        let idx = if side == Side::First { 0 } else { 1 };
        self.supplier_sets[idx][market].as_deref()
    }

    /// Rejected-market counts `(k1, k2)` of the two sources.
    pub fn cardinalities(&self) -> (usize, usize) {
        let count = |s: &Solution| s.rejected_count().expect("sources are integral");
        (count(&self.sol1), count(&self.sol2))
    }

    /// Value of every node, indexed by node id.
    pub fn node_values(&self) -> Vec<Rational> {
        self.nodes.iter().map(|n| n.kind.value()).collect()
    }

    pub fn value_of<'n>(&self, nodes: impl IntoIterator<Item = &'n usize>) -> Rational {
        nodes.into_iter().map(|&v| self.nodes[v].kind.value()).sum()
    }

    /// Sum of all node values; equals `k2 - k1`.
    pub fn total_value(&self) -> Rational {
        self.nodes.iter().map(|n| n.kind.value()).sum()
    }

    /// Connected components in canonical order (by smallest node id, i.e. by
    /// smallest market then copy tag), each classified as a path or an even
    /// cycle. Anything else is reported as a falsified structural claim.
    pub fn classify_components(&self) -> Result<Vec<Component>, ConflictError> {
        let n = self.nodes.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut members = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(u) = queue.pop_front() {
                members.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            let degree_sum: usize = members.iter().map(|&v| self.adj[v].len()).sum();
            let edge_count = degree_sum / 2;
            let max_degree = members.iter().map(|&v| self.adj[v].len()).max().unwrap_or(0);
            if max_degree > 2 {
                return Err(ConflictError::Falsified(format!(
                    "component at node {start} has a node of degree {max_degree}"
                )));
            }
            let shape = if edge_count + 1 == members.len() {
                ComponentShape::Path
            } else if edge_count == members.len() {
                if members.len() % 2 != 0 {
                    return Err(ConflictError::Falsified(format!(
                        "odd cycle through node {start}"
                    )));
                }
                if members.iter().any(|&v| !self.nodes[v].kind.is_full()) {
                    return Err(ConflictError::Falsified(format!(
                        "cycle through node {start} contains a partial node"
                    )));
                }
                ComponentShape::EvenCycle
            } else {
                return Err(ConflictError::Falsified(format!(
                    "component at node {start} is neither a path nor a cycle"
                )));
            };
            let first = match shape {
                ComponentShape::Path => *members
                    .iter()
                    .find(|&&v| self.adj[v].len() <= 1)
                    .expect("a finite path has an endpoint"),
                ComponentShape::EvenCycle => members[0],
            };
            out.push(Component { nodes: self.walk(first, members.len()), shape });
        }
        Ok(out)
    }

    fn walk(&self, first: usize, len: usize) -> Vec<usize> {
        let mut order = Vec::with_capacity(len);
        let mut prev = usize::MAX;
        let mut cur = first;
        loop {
            order.push(cur);
            if order.len() == len {
                break;
            }
            let next = self.adj[cur].iter().copied().find(|&v| v != prev && !order.contains(&v));
            match next {
                Some(v) => {
                    prev = cur;
                    cur = v;
                }
                None => break,
            }
        }
        order
    }

    /// Checks the structural facts the swap argument rests on:
    /// adjacency is exactly "shares a supplier"; components are paths or
    /// even cycles of full nodes; the total value is `k2 - k1`; cycles have
    /// value 0; paths with one partial node have value ±1/2, with two partial
    /// nodes 0, with none -1, 0 or 1.
    pub fn audit_structure(&self) -> Result<StructureReport, ConflictError> {
        let fail = |msg: String| Err(ConflictError::Falsified(msg));
        for (a, na) in self.nodes.iter().enumerate() {
            for (b, nb) in self.nodes.iter().enumerate() {
                if !na.kind.on_first_side() || nb.kind.on_first_side() {
                    continue;
                }
                let shares = na.suppliers.iter().any(|i| nb.suppliers.contains(i));
                if shares != self.edges.contains(&(a, b)) {
                    return fail(format!("adjacency of nodes {a} and {b} disagrees with supplier overlap"));
                }
            }
        }
        let (k1, k2) = self.cardinalities();
        let total = self.total_value();
        if total != int(k2 as i64) - int(k1 as i64) {
            return fail(format!("total value {total} differs from k2 - k1 = {k2} - {k1}"));
        }

        let mut report = StructureReport::default();
        for comp in self.classify_components()? {
            let value = self.value_of(&comp.nodes);
            let partials: Vec<usize> =
                comp.nodes.iter().copied().filter(|&v| !self.nodes[v].kind.is_full()).collect();
            for &p in &partials {
                if self.adj[p].len() > 1 {
                    return fail(format!("partial node {p} is not a leaf"));
                }
            }
            match (comp.shape, partials.len()) {
                (ComponentShape::EvenCycle, _) => {
                    if !value.is_zero() {
                        return fail(format!("cycle with value {value}"));
                    }
                    report.cycles += 1;
                }
                (ComponentShape::Path, 0) => {
                    if value > Rational::one() || value < -Rational::one() {
                        return fail(format!("full path with value {value}"));
                    }
                    report.full_paths += 1;
                }
                (ComponentShape::Path, 1) => {
                    if value != frac(1, 2) && value != frac(-1, 2) {
                        return fail(format!("path with one partial node has value {value}"));
                    }
                    report.single_partial_paths += 1;
                }
                (ComponentShape::Path, 2) => {
                    if !value.is_zero() {
                        return fail(format!("path with two partial nodes has value {value}"));
                    }
                    report.double_partial_paths += 1;
                }
                (ComponentShape::Path, n) => {
                    return fail(format!("path with {n} partial nodes"));
                }
            }
        }
        Ok(report)
    }
}

/// Component counts gathered by [`ConflictGraph::audit_structure`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct StructureReport {
    pub cycles: usize,
    pub full_paths: usize,
    pub single_partial_paths: usize,
    pub double_partial_paths: usize,
}

/// Convenience wrapper for [`ConflictGraph::build`].
pub fn build_conflict_graph<'a>(
    inst: &'a TpmcInstance,
    sol1: &Solution,
    sol2: &Solution,
) -> Result<ConflictGraph<'a>, ConflictError> {
    ConflictGraph::build(inst, sol1, sol2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{min_cost_transport, Selection};
    use crate::instance::InstanceBuilder;

    pub(crate) fn two_by_two() -> TpmcInstance {
        InstanceBuilder::new()
            .supply("1", 1)
            .supply("2", 1)
            .market("a", 1, int(0))
            .market("b", 1, int(0))
            .edge("1", "a", int(0))
            .edge("1", "b", int(0))
            .edge("2", "a", int(0))
            .edge("2", "b", int(0))
            .build()
            .unwrap()
    }

    fn rejecting_all(inst: &TpmcInstance) -> Solution {
        inst.integral_solution(&vec![0; inst.num_edges()], |_| true)
    }

    #[test]
    fn identical_full_rejection_gives_empty_graph() {
        let inst = two_by_two();
        let s = rejecting_all(&inst);
        let g = ConflictGraph::build(&inst, &s, &s).unwrap();
        assert!(g.nodes().is_empty());
        assert!(g.edges().is_empty());
        assert_eq!(g.r, vec![0, 1]);
        assert!(g.classify_components().unwrap().is_empty());
        assert_eq!(g.total_value(), Rational::zero());
        assert!(g.node_values().is_empty());
    }

    #[test]
    fn identical_solutions_give_only_partial_pairs() {
        let inst = two_by_two();
        let res = min_cost_transport(&inst, &Selection::all(2));
        let s = inst.integral_solution(&res.flow, |_| false);
        let g = ConflictGraph::build(&inst, &s, &s).unwrap();
        assert!(g.w1.is_empty() && g.w2.is_empty());
        assert_eq!(g.p1, vec![0, 1]);
        assert!(g.nodes().iter().all(|n| !n.kind.is_full()));
        // j1 -- j3 for each market
        for j in 0..2 {
            let a = g.copy(j, CopyTag::J1).unwrap();
            let b = g.copy(j, CopyTag::J3).unwrap();
            assert!(g.edges().contains(&(a, b)));
        }
        assert_eq!(g.edges().len(), 2);
        assert_eq!(g.total_value(), Rational::zero());
        let report = g.audit_structure().unwrap();
        assert_eq!(report.double_partial_paths, 2);
    }

    #[test]
    fn swapped_service_gives_one_full_edge() {
        // sol1 serves a from supply 1, sol2 serves b from supply 1
        let inst = two_by_two();
        let s1 = inst.integral_solution(&[1, 0, 0, 0], |j| j == 1);
        let s2 = inst.integral_solution(&[0, 1, 0, 0], |j| j == 0);
        let g = ConflictGraph::build(&inst, &s1, &s2).unwrap();
        assert_eq!(g.w1, vec![0]);
        assert_eq!(g.w2, vec![1]);
        assert_eq!(g.nodes().len(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert_eq!(g.node_values(), vec![int(1), int(-1)]);
        assert_eq!(g.total_value(), Rational::zero());
        let comps = g.classify_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, ComponentShape::Path);
        assert_eq!(comps[0].nodes, vec![0, 1]);
    }

    #[test]
    fn node_values_by_kind() {
        assert_eq!(NodeKind::FullU2.value(), int(-1));
        assert_eq!(NodeKind::PartialU1.value(), frac(1, 2));
        assert_eq!(NodeKind::PartialU2.value(), frac(-1, 2));
        assert_eq!(NodeKind::FullU1.value(), int(1));
    }

    #[test]
    fn four_cycle_of_full_nodes() {
        // a, b served by sol1 from {1,2} and {3,4}; c, d served by sol2 from {2,3} and {4,1}
        let inst = InstanceBuilder::new()
            .supply("1", 1)
            .supply("2", 1)
            .supply("3", 1)
            .supply("4", 1)
            .market("a", 2, int(0))
            .market("b", 2, int(0))
            .market("c", 2, int(0))
            .market("d", 2, int(0))
            .edge("1", "a", int(0))
            .edge("2", "a", int(0))
            .edge("3", "b", int(0))
            .edge("4", "b", int(0))
            .edge("2", "c", int(0))
            .edge("3", "c", int(0))
            .edge("4", "d", int(0))
            .edge("1", "d", int(0))
            .build()
            .unwrap();
        let s1 = inst.integral_solution(&[1, 1, 1, 1, 0, 0, 0, 0], |j| j >= 2);
        let s2 = inst.integral_solution(&[0, 0, 0, 0, 1, 1, 1, 1], |j| j < 2);
        let g = ConflictGraph::build(&inst, &s1, &s2).unwrap();
        let comps = g.classify_components().unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].shape, ComponentShape::EvenCycle);
        assert_eq!(comps[0].nodes.len(), 4);
        let report = g.audit_structure().unwrap();
        assert_eq!(report.cycles, 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let inst = two_by_two();
        let s = rejecting_all(&inst);
        let bad = inst.integral_solution(&[1, 1, 0, 0], |_| false);
        assert_eq!(
            ConflictGraph::build(&inst, &bad, &s).unwrap_err(),
            ConflictError::InvalidSolution(1)
        );
        let fat = InstanceBuilder::new().supply("1", 2).build().unwrap();
        let empty = Solution { x: vec![], z: vec![], objective: None };
        assert_eq!(
            ConflictGraph::build(&fat, &empty, &empty).unwrap_err(),
            ConflictError::NotUnitSupply
        );
    }
}
