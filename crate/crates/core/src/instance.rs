//! Instance model, objective/feasibility evaluation and supply splitting.
//!
//! Supplies, markets and edges are kept in document order; that order is the
//! coordinate order of every vector indexed by edges or markets.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceError {
    DuplicateSupply(String),
    DuplicateMarket(String),
    UnknownSupply(String),
    UnknownMarket(String),
    DuplicateEdge { from: String, to: String },
    NonpositiveSupply(String),
    NonpositiveDemand(String),
    /// A vector does not match the instance's edge or market count.
    DimensionMismatch { what: &'static str, expected: usize, found: usize },
    /// `merge` was handed a solution that is infeasible for the split instance.
    InfeasibleSplitSolution,
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateSupply(id) => write!(f, "duplicate supply id {id:?}"),
            Self::DuplicateMarket(id) => write!(f, "duplicate market id {id:?}"),
            Self::UnknownSupply(id) => write!(f, "edge references unknown supply {id:?}"),
            Self::UnknownMarket(id) => write!(f, "edge references unknown market {id:?}"),
            Self::DuplicateEdge { from, to } => write!(f, "duplicate edge ({from:?}, {to:?})"),
            Self::NonpositiveSupply(id) => write!(f, "supply {id:?} must be at least 1"),
            Self::NonpositiveDemand(id) => write!(f, "demand of market {id:?} must be at least 1"),
            Self::DimensionMismatch { what, expected, found } => {
                write!(f, "{what} has length {found}, expected {expected}")
            }
            Self::InfeasibleSplitSolution => {
                f.write_str("solution is not feasible for the split instance")
            }
        }
    }
}

impl core::error::Error for InstanceError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub supply: usize,
    pub market: usize,
}

/// A validated TPMC instance on the bipartite graph of supplies and markets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TpmcInstance {
    supply_ids: Vec<String>,
    market_ids: Vec<String>,
    supplies: Vec<u64>,
    demands: Vec<u64>,
    edges: Vec<Edge>,
    costs: Vec<Rational>,
    revenues: Vec<Rational>,
}

/// Incremental constructor; all validation happens in [`InstanceBuilder::build`].
#[derive(Debug, Default, Clone)]
pub struct InstanceBuilder {
    supplies: Vec<(String, i64)>,
    markets: Vec<(String, i64, Rational)>,
    edges: Vec<(String, String, Rational)>,
}

impl InstanceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn supply(mut self, id: impl Into<String>, capacity: i64) -> Self {
        self.supplies.push((id.into(), capacity));
        self
    }

    pub fn market(mut self, id: impl Into<String>, demand: i64, revenue: Rational) -> Self {
        self.markets.push((id.into(), demand, revenue));
        self
    }

    pub fn edge(mut self, from: impl Into<String>, to: impl Into<String>, cost: Rational) -> Self {
        self.edges.push((from.into(), to.into(), cost));
        self
    }

    pub fn build(self) -> Result<TpmcInstance, InstanceError> {
        let mut supply_index = BTreeMap::new();
        let mut supply_ids = Vec::with_capacity(self.supplies.len());
        let mut supplies = Vec::with_capacity(self.supplies.len());
        for (id, s) in self.supplies {
            if s < 1 {
                return Err(InstanceError::NonpositiveSupply(id));
            }
            if supply_index.insert(id.clone(), supply_ids.len()).is_some() {
                return Err(InstanceError::DuplicateSupply(id));
            }
            supply_ids.push(id);
            supplies.push(s as u64);
        }

        let mut market_index = BTreeMap::new();
        let mut market_ids = Vec::with_capacity(self.markets.len());
        let mut demands = Vec::with_capacity(self.markets.len());
        let mut revenues = Vec::with_capacity(self.markets.len());
        for (id, d, r) in self.markets {
            if d < 1 {
                return Err(InstanceError::NonpositiveDemand(id));
            }
            if market_index.insert(id.clone(), market_ids.len()).is_some() {
                return Err(InstanceError::DuplicateMarket(id));
            }
            market_ids.push(id);
            demands.push(d as u64);
            revenues.push(r);
        }

        let mut seen = BTreeMap::new();
        let mut edges = Vec::with_capacity(self.edges.len());
        let mut costs = Vec::with_capacity(self.edges.len());
        for (from, to, w) in self.edges {
            let supply = *supply_index
                .get(&from)
                .ok_or_else(|| InstanceError::UnknownSupply(from.clone()))?;
            let market = *market_index
                .get(&to)
                .ok_or_else(|| InstanceError::UnknownMarket(to.clone()))?;
            let edge = Edge { supply, market };
            if seen.insert(edge, ()).is_some() {
                return Err(InstanceError::DuplicateEdge { from, to });
            }
            edges.push(edge);
            costs.push(w);
        }

        Ok(TpmcInstance { supply_ids, market_ids, supplies, demands, edges, costs, revenues })
    }
}

impl TpmcInstance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::new()
    }

    pub fn num_supplies(&self) -> usize {
        self.supplies.len()
    }

    pub fn num_markets(&self) -> usize {
        self.demands.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn supply_ids(&self) -> &[String] {
        &self.supply_ids
    }

    pub fn market_ids(&self) -> &[String] {
        &self.market_ids
    }

    pub fn supplies(&self) -> &[u64] {
        &self.supplies
    }

    pub fn demands(&self) -> &[u64] {
        &self.demands
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn costs(&self) -> &[Rational] {
        &self.costs
    }

    pub fn revenues(&self) -> &[Rational] {
        &self.revenues
    }

    pub fn supply_index(&self, id: &str) -> Option<usize> {
        self.supply_ids.iter().position(|s| s == id)
    }

    pub fn market_index(&self, id: &str) -> Option<usize> {
        self.market_ids.iter().position(|m| m == id)
    }

    pub fn edge_index(&self, supply: usize, market: usize) -> Option<usize> {
        self.edges.iter().position(|e| e.supply == supply && e.market == market)
    }

    /// Same graph and capacities, different objective data.
    pub fn with_objective(
        &self,
        costs: &[Rational],
        revenues: &[Rational],
    ) -> Result<TpmcInstance, InstanceError> {
        check_len("cost vector", self.num_edges(), costs.len())?;
        check_len("revenue vector", self.num_markets(), revenues.len())?;
        Ok(TpmcInstance { costs: costs.to_vec(), revenues: revenues.to_vec(), ..self.clone() })
    }

    /// Every demand is 1 or 2.
    pub fn is_simple(&self) -> bool {
        self.demands.iter().all(|&d| d <= 2)
    }

    pub fn has_unit_supplies(&self) -> bool {
        self.supplies.iter().all(|&s| s == 1)
    }

    /// `Σ w·x + Σ r·z`, exactly.
    pub fn evaluate_objective(&self, x: &[Rational], z: &[Rational]) -> Result<Rational, InstanceError> {
        check_len("x", self.num_edges(), x.len())?;
        check_len("z", self.num_markets(), z.len())?;
        let flow: Rational = self.costs.iter().zip(x).map(|(w, v)| w * v).sum();
        let lost: Rational = self.revenues.iter().zip(z).map(|(r, v)| r * v).sum();
        Ok(flow + lost)
    }

    /// Builds a solution and stores its objective value.
    pub fn solution(&self, x: Vec<Rational>, z: Vec<Rational>) -> Result<Solution, InstanceError> {
        let objective = self.evaluate_objective(&x, &z)?;
        Ok(Solution { x, z, objective: Some(objective) })
    }

    /// Integral solution from per-edge flows and a rejection mask over markets.
    pub fn integral_solution(&self, flow: &[u64], rejected: impl Fn(usize) -> bool) -> Solution {
        let x = flow.iter().map(|&f| int(f as i64)).collect();
        let z = (0..self.num_markets())
            .map(|j| if rejected(j) { Rational::one() } else { Rational::zero() })
            .collect();
        self.solution(x, z).expect("dimensions are consistent by construction")
    }

    /// Checks the demand equalities, supply inequalities and sign/range
    /// restrictions; integrality of `x` and `z` is checked when `integral` is set.
    pub fn check_feasible(&self, sol: &Solution, integral: bool) -> FeasibilityReport {
        let mut violations = Vec::new();
        if sol.x.len() != self.num_edges() || sol.z.len() != self.num_markets() {
            violations.push(Violation::Dimension {
                edges: sol.x.len(),
                markets: sol.z.len(),
            });
            return FeasibilityReport { violations };
        }

        let mut shipped_in = alloc::vec![Rational::zero(); self.num_markets()];
        let mut shipped_out = alloc::vec![Rational::zero(); self.num_supplies()];
        for (e, (edge, x)) in self.edges.iter().zip(&sol.x).enumerate() {
            if x.is_negative() {
                violations.push(Violation::NegativeFlow { edge: e });
            }
            if integral && !x.is_integer() {
                violations.push(Violation::FractionalFlow { edge: e });
            }
            shipped_in[edge.market] += x;
            shipped_out[edge.supply] += x;
        }

        for (j, z) in sol.z.iter().enumerate() {
            if z.is_negative() || *z > Rational::one() {
                violations.push(Violation::RejectionOutOfRange { market: j });
            } else if integral && !z.is_integer() {
                violations.push(Violation::FractionalRejection { market: j });
            }
            let required = int(self.demands[j] as i64) * (Rational::one() - z);
            if shipped_in[j] != required {
                violations.push(Violation::Demand {
                    market: j,
                    shipped: shipped_in[j].clone(),
                    required,
                });
            }
        }

        for (i, out) in shipped_out.into_iter().enumerate() {
            let capacity = int(self.supplies[i] as i64);
            if out > capacity {
                violations.push(Violation::Supply { supply: i, shipped: out, capacity });
            }
        }

        FeasibilityReport { violations }
    }

    /// Replaces every supply `i` by `s_i` unit-capacity copies that inherit all
    /// of `i`'s edges and costs. Copies are named `<id>#<c>`; unit supplies keep
    /// their id, so an all-unit instance maps to itself.
    pub fn split_supplies(&self) -> (TpmcInstance, SplitMapping) {
        let mut supply_ids = Vec::new();
        let mut supply_origin = Vec::new();
        let mut fibers = Vec::with_capacity(self.num_supplies());
        for (i, (&s, id)) in self.supplies.iter().zip(&self.supply_ids).enumerate() {
            let mut fiber = Vec::with_capacity(s as usize);
            for c in 1..=s {
                fiber.push(supply_ids.len());
                supply_origin.push(i);
                if s == 1 {
                    supply_ids.push(id.clone());
                } else {
                    supply_ids.push(format!("{id}#{c}"));
                }
            }
            fibers.push(fiber);
        }

        let mut edges = Vec::new();
        let mut costs = Vec::new();
        let mut edge_origin = Vec::new();
        for (e, (edge, w)) in self.edges.iter().zip(&self.costs).enumerate() {
            for &copy in &fibers[edge.supply] {
                edges.push(Edge { supply: copy, market: edge.market });
                costs.push(w.clone());
                edge_origin.push(e);
            }
        }

        let split = TpmcInstance {
            supply_ids,
            market_ids: self.market_ids.clone(),
            supplies: alloc::vec![1; supply_origin.len()],
            demands: self.demands.clone(),
            edges,
            costs,
            revenues: self.revenues.clone(),
        };
        let mapping = SplitMapping {
            supply_origin,
            fibers,
            edge_origin,
            original_edges: self.num_edges(),
        };
        (split, mapping)
    }
}

fn check_len(what: &'static str, expected: usize, found: usize) -> Result<(), InstanceError> {
    if expected == found {
        Ok(())
    } else {
        Err(InstanceError::DimensionMismatch { what, expected, found })
    }
}

/// Edge flows `x` and market rejections `z`, both exact rationals so relaxed
/// points share the representation with integral solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    pub z: Vec<Rational>,
    pub objective: Option<Rational>,
}

impl Solution {
    /// `Σ z_j`, the number of rejected markets for integral solutions.
    pub fn cardinality(&self) -> Rational {
        self.z.iter().sum()
    }

    /// Cardinality as an integer; `None` if `z` is fractional somewhere.
    pub fn rejected_count(&self) -> Option<usize> {
        let mut count = 0;
        for z in &self.z {
            if z.is_one() {
                count += 1;
            } else if !z.is_zero() {
                return None;
            }
        }
        Some(count)
    }

    pub fn is_rejected(&self, market: usize) -> bool {
        self.z[market].is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.x.iter().chain(&self.z).all(|v| v.is_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Dimension { edges: usize, markets: usize },
    NegativeFlow { edge: usize },
    FractionalFlow { edge: usize },
    RejectionOutOfRange { market: usize },
    FractionalRejection { market: usize },
    Demand { market: usize, shipped: Rational, required: Rational },
    Supply { supply: usize, shipped: Rational, capacity: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Correspondence between a split instance and the original.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMapping {
    /// Split supply index -> original supply index.
    pub supply_origin: Vec<usize>,
    /// Original supply index -> its split copies.
    pub fibers: Vec<Vec<usize>>,
    /// Split edge index -> original edge index.
    pub edge_origin: Vec<usize>,
    pub original_edges: usize,
}

impl SplitMapping {
    pub fn is_identity(&self) -> bool {
        self.fibers.iter().all(|f| f.len() == 1)
    }

    /// Sums copy flows back onto original edges; `z` and the objective carry over.
    pub fn merge(&self, split: &TpmcInstance, sol: &Solution) -> Result<Solution, InstanceError> {
        if !split.check_feasible(sol, false).is_feasible() {
            return Err(InstanceError::InfeasibleSplitSolution);
        }
        let mut x = alloc::vec![Rational::zero(); self.original_edges];
        for (e, v) in sol.x.iter().enumerate() {
            x[self.edge_origin[e]] += v;
        }
        let objective = match &sol.objective {
            Some(o) => Some(o.clone()),
            None => Some(split.evaluate_objective(&sol.x, &sol.z)?),
        };
        Ok(Solution { x, z: sol.z.clone(), objective })
    }
}

/// Direction of a cardinality constraint on `Σ z_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CardinalitySense {
    AtMost,
    Exactly,
    AtLeast,
}

/// `Σ z_j (sense) k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cardinality {
    pub sense: CardinalitySense,
    pub k: usize,
}

impl Cardinality {
    pub fn at_most(k: usize) -> Self {
        Self { sense: CardinalitySense::AtMost, k }
    }

    pub fn exactly(k: usize) -> Self {
        Self { sense: CardinalitySense::Exactly, k }
    }

    pub fn at_least(k: usize) -> Self {
        Self { sense: CardinalitySense::AtLeast, k }
    }

    pub fn admits(&self, count: usize) -> bool {
        match self.sense {
            CardinalitySense::AtMost => count <= self.k,
            CardinalitySense::Exactly => count == self.k,
            CardinalitySense::AtLeast => count >= self.k,
        }
    }
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.sense {
            CardinalitySense::AtMost => "<=",
            CardinalitySense::Exactly => "=",
            CardinalitySense::AtLeast => ">=",
        };
        write!(f, "{op}{}", self.k)
    }
}

impl core::str::FromStr for Cardinality {
    type Err = String;

    /// Accepts `<=k`, `>=k`, `=k` or `==k`, with optional whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (sense, rest) = if let Some(r) = s.strip_prefix("<=") {
            (CardinalitySense::AtMost, r)
        } else if let Some(r) = s.strip_prefix(">=") {
            (CardinalitySense::AtLeast, r)
        } else if let Some(r) = s.strip_prefix("==") {
            (CardinalitySense::Exactly, r)
        } else if let Some(r) = s.strip_prefix('=') {
            (CardinalitySense::Exactly, r)
        } else {
            return Err(format!("cardinality {s:?} must start with <=, >= or ="));
        };
        let k = rest
            .trim()
            .parse::<usize>()
            .map_err(|_| format!("cardinality bound in {s:?} is not a nonnegative integer"))?;
        Ok(Self { sense, k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{frac, replay};
    use alloc::vec;
    use alloc::string::ToString;

    fn zeros(n: usize) -> Vec<Rational> {
        vec![Rational::zero(); n]
    }

    fn ones(n: usize) -> Vec<Rational> {
        vec![Rational::one(); n]
    }

    #[test]
    fn triple_demand_has_nine_edges_and_is_not_simple() {
        let inst = replay::triple_demand_instance();
        assert_eq!(inst.num_edges(), 9);
        assert_eq!(inst.num_supplies(), 6);
        assert_eq!(inst.demands(), &[2, 2, 2, 3]);
        assert!(!inst.is_simple());
    }

    #[test]
    fn empty_instance_is_simple() {
        let inst = InstanceBuilder::new().build().unwrap();
        assert_eq!(inst.num_edges(), 0);
        assert!(inst.is_simple());
        assert_eq!(inst.evaluate_objective(&[], &[]).unwrap(), Rational::zero());
    }

    #[test]
    fn validation_errors() {
        let err = InstanceBuilder::new()
            .supply("1", 1)
            .market("1", 1, int(0))
            .edge("1", "9", int(0))
            .build()
            .unwrap_err();
        assert_eq!(err, InstanceError::UnknownMarket("9".into()));

        let err = InstanceBuilder::new().supply("1", 0).build().unwrap_err();
        assert_eq!(err, InstanceError::NonpositiveSupply("1".into()));

        let err = InstanceBuilder::new().market("m", -1, int(0)).build().unwrap_err();
        assert_eq!(err, InstanceError::NonpositiveDemand("m".into()));

        let err = InstanceBuilder::new()
            .supply("1", 1)
            .market("a", 1, int(0))
            .edge("1", "a", int(0))
            .edge("1", "a", int(2))
            .build()
            .unwrap_err();
        assert!(matches!(err, InstanceError::DuplicateEdge { .. }));
    }

    #[test]
    fn objective_of_full_rejection_is_total_revenue() {
        let inst = replay::triple_demand_instance_with(int(1), int(10));
        let v = inst.evaluate_objective(&zeros(9), &ones(4)).unwrap();
        assert_eq!(v, int(40));
    }

    #[test]
    fn objective_of_triple_demand_halves() {
        let inst = replay::triple_demand_instance_with(int(1), int(10));
        let half = frac(1, 2);
        let v = inst.evaluate_objective(&vec![half.clone(); 9], &vec![half; 4]).unwrap();
        assert_eq!(v, frac(49, 2));
    }

    #[test]
    fn objective_single_edge() {
        let inst = InstanceBuilder::new()
            .supply("i", 5)
            .market("j", 2, int(123))
            .edge("i", "j", int(3))
            .build()
            .unwrap();
        assert_eq!(inst.evaluate_objective(&[int(2)], &[int(0)]).unwrap(), int(6));
        assert!(matches!(
            inst.evaluate_objective(&[], &[int(0)]),
            Err(InstanceError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn full_rejection_is_feasible() {
        let inst = replay::triple_demand_instance();
        let sol = inst.solution(zeros(9), ones(4)).unwrap();
        assert!(inst.check_feasible(&sol, true).is_feasible());
    }

    #[test]
    fn triple_demand_halves_is_relaxed_feasible_but_not_integral() {
        let inst = replay::triple_demand_instance();
        let p = replay::triple_demand_point();
        assert!(inst.check_feasible(&p, false).is_feasible());
        let report = inst.check_feasible(&p, true);
        assert!(!report.is_feasible());
        assert!(report
            .violations
            .iter()
            .all(|v| matches!(v, Violation::FractionalFlow { .. } | Violation::FractionalRejection { .. })));
    }

    #[test]
    fn short_demand_is_reported() {
        let inst = InstanceBuilder::new()
            .supply("1", 1)
            .supply("2", 1)
            .market("a", 2, int(0))
            .edge("1", "a", int(0))
            .edge("2", "a", int(0))
            .build()
            .unwrap();
        let sol = inst.solution(vec![int(1), int(0)], vec![int(0)]).unwrap();
        let report = inst.check_feasible(&sol, true);
        assert_eq!(
            report.violations,
            vec![Violation::Demand { market: 0, shipped: int(1), required: int(2) }]
        );
    }

    #[test]
    fn split_three_copies() {
        let inst = InstanceBuilder::new()
            .supply("i", 3)
            .market("a", 2, int(5))
            .edge("i", "a", int(7))
            .build()
            .unwrap();
        let (split, map) = inst.split_supplies();
        assert_eq!(split.supplies(), &[1, 1, 1]);
        assert_eq!(split.num_edges(), 3);
        assert_eq!(split.supply_ids(), &["i#1", "i#2", "i#3"]);
        assert!(split.costs().iter().all(|w| *w == int(7)));

        let sol = split.solution(vec![int(1), int(1), int(0)], vec![int(0)]).unwrap();
        let merged = map.merge(&split, &sol).unwrap();
        assert_eq!(merged.x, vec![int(2)]);
        assert_eq!(merged.objective, Some(int(14)));
        assert!(inst.check_feasible(&merged, true).is_feasible());
    }

    #[test]
    fn split_is_identity_on_unit_instances() {
        let inst = replay::triple_demand_instance();
        let (split, map) = inst.split_supplies();
        assert_eq!(split, inst);
        assert!(map.is_identity());
        let sol = inst.solution(zeros(9), ones(4)).unwrap();
        assert_eq!(map.merge(&split, &sol).unwrap(), sol);
    }

    #[test]
    fn split_fibers_follow_capacities() {
        let inst = InstanceBuilder::new()
            .supply("1", 2)
            .supply("2", 1)
            .market("a", 2, int(0))
            .edge("1", "a", int(1))
            .edge("2", "a", int(1))
            .build()
            .unwrap();
        let (split, map) = inst.split_supplies();
        assert_eq!(split.num_supplies(), 3);
        assert_eq!(split.num_edges(), 3);
        let sizes: Vec<usize> = map.fibers.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![2, 1]);
        // every feasible split solution merges to a feasible original one
        for pattern in 0u32..8 {
            let x: Vec<Rational> = (0..3).map(|b| int(((pattern >> b) & 1) as i64)).collect();
            for z in [0, 1] {
                let sol = split.solution(x.clone(), vec![int(z)]).unwrap();
                if split.check_feasible(&sol, true).is_feasible() {
                    let merged = map.merge(&split, &sol).unwrap();
                    assert!(inst.check_feasible(&merged, true).is_feasible());
                    assert_eq!(merged.objective, sol.objective);
                }
            }
        }
    }

    #[test]
    fn merge_rejects_infeasible_input() {
        let inst = replay::triple_demand_instance();
        let (split, map) = inst.split_supplies();
        let sol = inst.solution(zeros(9), zeros(4)).unwrap();
        assert_eq!(map.merge(&split, &sol), Err(InstanceError::InfeasibleSplitSolution));
    }

    #[test]
    fn cardinality_parsing() {
        assert_eq!("<=2".parse::<Cardinality>().unwrap(), Cardinality::at_most(2));
        assert_eq!(">= 3".parse::<Cardinality>().unwrap(), Cardinality::at_least(3));
        assert_eq!("=0".parse::<Cardinality>().unwrap(), Cardinality::exactly(0));
        assert_eq!("==1".parse::<Cardinality>().unwrap(), Cardinality::exactly(1));
        assert!("<2".parse::<Cardinality>().is_err());
        assert!("<=-1".parse::<Cardinality>().is_err());
        assert_eq!(Cardinality::at_most(4).to_string(), "<=4");
    }
}
