//! Two counterexample fixtures, plus end-to-end replays.
//!
//! * Perfect matchings of a 3x3 bipartite graph cut by `x14 + x25 <= 1` have a
//!   fractional vertex.
//! * A TPMC instance with one demand of 3 whose cardinality-cut relaxation has
//!   the all-halves point as a fractional vertex.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::instance::{InstanceBuilder, Solution, TpmcInstance};
use crate::polytope::{
    self, ExtremeReport, HullAudit, LabError, LinearSystem, Membership, RationalPoint,
};
use crate::{frac, int, Rational};

/// Edges of the 3x3 bipartite graph, in coordinate order.
pub const CUT_MATCHING_EDGES: [(u8, u8); 7] = [(1, 4), (1, 5), (2, 4), (2, 5), (2, 6), (3, 5), (3, 6)];

/// Degree equalities for all six vertices, `x >= 0`, and `x14 + x25 <= 1`.
pub fn cut_matching_system() -> LinearSystem {
    let dim = CUT_MATCHING_EDGES.len();
    let mut sys = LinearSystem::new(dim);
    for v in 1..=6u8 {
        let row = CUT_MATCHING_EDGES
            .iter()
            .map(|&(a, b)| if a == v || b == v { Rational::one() } else { Rational::zero() })
            .collect();
        sys.add_equality(row, Rational::one());
    }
    sys.add_nonnegativity();
    let mut cut = vec![Rational::zero(); dim];
    cut[0] = Rational::one();
    cut[3] = Rational::one();
    sys.add_inequality(cut, Rational::one());
    sys
}

pub fn cut_matching_point() -> RationalPoint {
    let h = frac(1, 2);
    RationalPoint::new(vec![h.clone(), h.clone(), h.clone(), h, int(0), int(0), int(1)])
}

#[derive(Debug, Clone)]
pub struct CutMatchingReport {
    pub point: RationalPoint,
    pub extreme: ExtremeReport,
}

impl CutMatchingReport {
    pub fn passed(&self) -> bool {
        self.extreme.extreme && !self.point.is_integral()
    }
}

pub fn replay_cut_matching() -> Result<CutMatchingReport, LabError> {
    let point = cut_matching_point();
    let extreme = polytope::extreme_point_check(&point, &cut_matching_system())?;
    Ok(CutMatchingReport { point, extreme })
}

const TRIPLE_DEMAND_EDGES: [(u8, u8); 9] =
    [(1, 1), (2, 2), (3, 3), (4, 1), (4, 4), (5, 2), (5, 4), (6, 3), (6, 4)];

/// Six unit supplies, demands `(2, 2, 2, 3)`, nine edges; costs 1, revenues 10.
pub fn triple_demand_instance() -> TpmcInstance {
    triple_demand_instance_with(int(1), int(10))
}

/// The same graph with uniform cost `w` and uniform lost revenue `r`.
pub fn triple_demand_instance_with(w: Rational, r: Rational) -> TpmcInstance {
    let mut b = InstanceBuilder::new();
    for i in 1..=6 {
        b = b.supply(i.to_string(), 1);
    }
    for (j, d) in [(1, 2), (2, 2), (3, 2), (4, 3)] {
        b = b.market(j.to_string(), d, r.clone());
    }
    for (i, j) in TRIPLE_DEMAND_EDGES {
        b = b.edge(i.to_string(), j.to_string(), w.clone());
    }
    b.build().expect("fixture is valid")
}

/// All nine flows and all four rejections equal to 1/2.
pub fn triple_demand_point() -> Solution {
    let inst = triple_demand_instance();
    let h = frac(1, 2);
    inst.solution(vec![h.clone(); 9], vec![h; 4]).expect("fixture is valid")
}

pub const TRIPLE_DEMAND_K: usize = 2;

#[derive(Debug, Clone)]
pub struct TripleDemandReport {
    pub point: RationalPoint,
    /// Membership of the point in `conv(X)`; `Inside` carries the weights.
    pub relaxation: Membership,
    /// Membership in the hull of integral points with at most `k` rejections.
    pub integer_hull: Membership,
    /// Objective in the battery for which the point is the unique optimum over
    /// `conv(X)` cut by the cardinality constraint, when one exists.
    pub supporting_objective: Option<Vec<Rational>>,
}

impl TripleDemandReport {
    pub fn passed(&self) -> bool {
        let card: Rational = self.point.coords()[9..].iter().sum();
        matches!(self.relaxation, Membership::Inside { .. })
            && card <= int(TRIPLE_DEMAND_K as i64)
            && matches!(self.integer_hull, Membership::Outside { .. })
    }
}

pub fn replay_triple_demand() -> Result<TripleDemandReport, LabError> {
    let inst = triple_demand_instance();
    let point = RationalPoint::from_solution(&triple_demand_point());
    let generators = polytope::enumerate_integral_points(&inst, polytope::DEFAULT_POINT_CAP)?;
    let relaxation = polytope::hull_membership(&point, &generators)?;

    let markets = inst.num_edges()..inst.num_edges() + inst.num_markets();
    let bounded: Vec<RationalPoint> = generators
        .iter()
        .filter(|g| g.coord_sum(markets.clone()) <= int(TRIPLE_DEMAND_K as i64))
        .cloned()
        .collect();
    let integer_hull = polytope::hull_membership(&point, &bounded)?;

    let audit = HullAudit::for_instance(&inst)?;
    let supporting_objective = audit.unique_supporting_objective(&point, TRIPLE_DEMAND_K);

    Ok(TripleDemandReport { point, relaxation, integer_hull, supporting_objective })
}
