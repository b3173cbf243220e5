//! Matchings of a general graph as a simple unit-supply instance.
//!
//! Vertices become unit supplies, edges become demand-2 markets reachable
//! from their two endpoints at zero cost, and the edge weight is the market's
//! lost revenue. Served markets form a matching, so a maximum-weight matching
//! with at most `k` edges is a minimum-cost solution with at least `m - k`
//! rejections.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::cardinality::{solve_cc_with, CcError, EnumerationSolver, InnerSolver};
use crate::instance::{Cardinality, InstanceBuilder, Solution, TpmcInstance};
use crate::Rational;

/// Largest edge count accepted by the brute-force matching enumerators.
pub const BRUTE_FORCE_EDGE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchingError {
    VertexOutOfRange { edge: usize, vertex: usize },
    SelfLoop { edge: usize },
    DuplicateEdge { edge: usize },
    WeightCount { edges: usize, weights: usize },
    TooManyEdges { edges: usize, cap: usize },
    BoundOutOfRange { k: usize, edges: usize },
    Solver(CcError),
}

impl fmt::Display for MatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::VertexOutOfRange { edge, vertex } => {
                write!(f, "edge {edge} uses vertex {vertex}, which does not exist")
            }
            Self::SelfLoop { edge } => write!(f, "edge {edge} is a self-loop"),
            Self::DuplicateEdge { edge } => write!(f, "edge {edge} repeats an earlier edge"),
            Self::WeightCount { edges, weights } => {
                write!(f, "{edges} edges but {weights} weights")
            }
            Self::TooManyEdges { edges, cap } => {
                write!(f, "{edges} edges exceed the brute-force cap of {cap}")
            }
            Self::BoundOutOfRange { k, edges } => write!(f, "bound {k} exceeds the {edges} edges"),
            Self::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for MatchingError {}

impl From<CcError> for MatchingError {
    fn from(e: CcError) -> Self {
        Self::Solver(e)
    }
}

/// Undirected simple graph on vertices `0..n` with rational edge weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<Rational>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>, weights: Vec<Rational>) -> Result<Self, MatchingError> {
        if edges.len() != weights.len() {
            return Err(MatchingError::WeightCount { edges: edges.len(), weights: weights.len() });
        }
        for (e, &(u, v)) in edges.iter().enumerate() {
            if let Some(&vertex) = [u, v].iter().find(|&&x| x >= n) {
                return Err(MatchingError::VertexOutOfRange { edge: e, vertex });
            }
            if u == v {
                return Err(MatchingError::SelfLoop { edge: e });
            }
            let key = (u.min(v), u.max(v));
            if edges[..e].iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
                return Err(MatchingError::DuplicateEdge { edge: e });
            }
        }
        Ok(Self { n, edges, weights })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// No two listed edges share a vertex.
    pub fn is_matching(&self, edge_set: &[usize]) -> bool {
        let mut used = alloc::vec![false; self.n];
        for &e in edge_set {
            let (u, v) = self.edges[e];
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }

    pub fn weight_of(&self, edge_set: &[usize]) -> Rational {
        edge_set.iter().map(|&e| &self.weights[e]).sum()
    }
}

/// Market `j` of the reduced instance is graph edge `j`.
pub fn reduce_matching(g: &SimpleGraph) -> (TpmcInstance, Vec<usize>) {
    let mut b = InstanceBuilder::new();
    for v in 0..g.n {
        b = b.supply(v.to_string(), 1);
    }
    for (&(u, v), w) in g.edges.iter().zip(&g.weights) {
        let id = format!("{u}-{v}");
        b = b.market(id.clone(), 2, w.clone());
        b = b.edge(u.to_string(), id.clone(), Rational::zero());
        b = b.edge(v.to_string(), id, Rational::zero());
    }
    let inst = b.build().expect("a simple graph reduces to a valid instance");
    (inst, (0..g.edges.len()).collect())
}

/// Graph edges whose markets the solution serves.
pub fn matching_of(sol: &Solution) -> Vec<usize> {
    (0..sol.z.len()).filter(|&j| !sol.is_rejected(j)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    /// Edge indices, ascending.
    pub edges: Vec<usize>,
    pub weight: Rational,
}

/// Maximum-weight matching with at most `k` edges, through the
/// cardinality-constrained solver.
pub fn max_weight_matching_card(g: &SimpleGraph, k: usize) -> Result<MatchingResult, MatchingError> {
    check_bound(g, k)?;
    let (inst, _) = reduce_matching(g);
    let mut solver = EnumerationSolver::new(&inst)?;
    max_weight_matching_card_with(g, k, &mut solver)
}

fn check_bound(g: &SimpleGraph, k: usize) -> Result<(), MatchingError> {
    let m = g.edges.len();
    if k > m {
        return Err(MatchingError::BoundOutOfRange { k, edges: m });
    }
    Ok(())
}

/// [`max_weight_matching_card`] reusing an inner solver built for the
/// reduced instance, so one table serves every `k`.
pub fn max_weight_matching_card_with(
    g: &SimpleGraph,
    k: usize,
    solver: &mut dyn InnerSolver,
) -> Result<MatchingResult, MatchingError> {
    check_bound(g, k)?;
    let m = g.edges.len();
    let (inst, _) = reduce_matching(g);
    let bound = Cardinality::at_least(m - k);
    let sol = solve_cc_with(&inst, bound, solver)?.expect("rejecting every market is always feasible");
    let edges = matching_of(&sol.solution);
    let total: Rational = g.weights.iter().sum();
    let objective = sol.solution.objective.clone().expect("solver sets the objective");
    Ok(MatchingResult { edges, weight: total - objective })
}

/// Every matching as an ascending edge-index list, in lexicographic order.
pub fn all_matchings(g: &SimpleGraph) -> Result<Vec<Vec<usize>>, MatchingError> {
    let m = g.edges.len();
    if m > BRUTE_FORCE_EDGE_CAP {
        return Err(MatchingError::TooManyEdges { edges: m, cap: BRUTE_FORCE_EDGE_CAP });
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = alloc::vec![false; g.n];
    extend(g, 0, &mut current, &mut used, &mut out);
    Ok(out)
}

fn extend(g: &SimpleGraph, from: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    out.push(current.clone());
    for e in from..g.edges.len() {
        let (u, v) = g.edges[e];
        if used[u] || used[v] {
            continue;
        }
        used[u] = true;
        used[v] = true;
        current.push(e);
        extend(g, e + 1, current, used, out);
        current.pop();
        used[u] = false;
        used[v] = false;
    }
}

/// Maximum-weight matching with at most `k` edges by enumeration; ties go to
/// the lexicographically smallest edge list.
pub fn brute_force_matchings(g: &SimpleGraph, k: usize) -> Result<MatchingResult, MatchingError> {
    if k > g.edges.len() {
        return Err(MatchingError::BoundOutOfRange { k, edges: g.edges.len() });
    }
    let mut best: Option<MatchingResult> = None;
    for edges in all_matchings(g)?.into_iter().filter(|m| m.len() <= k) {
        let weight = g.weight_of(&edges);
        let better = match &best {
            None => true,
            Some(b) => weight > b.weight || (weight == b.weight && edges < b.edges),
        };
        if better {
            best = Some(MatchingResult { edges, weight });
        }
    }
    Ok(best.expect("the empty matching always qualifies"))
}
