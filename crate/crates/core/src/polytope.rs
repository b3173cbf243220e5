//! Exact polyhedral checks on small instances.
//!
//! `conv(X)` is handled through its integral points (each fixed-`z` slice is
//! an integral transportation polytope), so optimizing over
//! `conv(X) ∩ {Σz ≤ k}` is an LP over convex multipliers of those points
//! with one extra linear row.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{Cardinality, CardinalitySense, Solution, TpmcInstance};
use crate::lp::{rank, solve_standard, solve_unique, LpOutcome};
use crate::matching::{all_matchings, SimpleGraph};
use crate::random::random_rational;
use crate::{int, Rational};

pub const DEFAULT_POINT_CAP: u64 = 1_000_000;
pub const MAX_GENERATORS: usize = 5000;
pub const MAX_AUDIT_DIM: usize = 14;
pub const MATCHING_AUDIT_EDGE_CAP: usize = 10;
pub const RANDOM_OBJECTIVES: usize = 64;
const BATTERY_SEED: u64 = 0x7a3c_91e5;
/// Largest number of inequalities tried by the brute-force vertex enumerator.
const VERTEX_SUBSET_CAP: u64 = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabError {
    DimensionMismatch { expected: usize, found: usize },
    PointCapExceeded { bound: u64, cap: u64 },
    TooManyGenerators { count: usize, cap: usize },
    DimensionTooLarge { dim: usize, cap: usize },
    EmptyGenerators,
    /// The point violates row `row` of the system.
    NotInSystem { row: usize },
    TooManyEdges { edges: usize, cap: usize },
    TooManySubsets,
}

impl fmt::Display for LabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DimensionMismatch { expected, found } => {
                write!(f, "expected dimension {expected}, found {found}")
            }
            Self::PointCapExceeded { bound, cap } => {
                write!(f, "up to {bound} candidate points exceed the cap of {cap}")
            }
            Self::TooManyGenerators { count, cap } => {
                write!(f, "{count} generators exceed the cap of {cap}")
            }
            Self::DimensionTooLarge { dim, cap } => write!(f, "dimension {dim} exceeds the cap of {cap}"),
            Self::EmptyGenerators => f.write_str("no generators given"),
            Self::NotInSystem { row } => write!(f, "point violates row {row}"),
            Self::TooManyEdges { edges, cap } => write!(f, "{edges} edges exceed the cap of {cap}"),
            Self::TooManySubsets => f.write_str("too many inequality subsets to enumerate vertices"),
        }
    }
}

impl core::error::Error for LabError {}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint {
    coords: Vec<Rational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    /// Edge flows followed by market rejections.
    pub fn from_solution(sol: &Solution) -> Self {
        Self { coords: sol.x.iter().chain(&sol.z).cloned().collect() }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|v| v.is_integer())
    }

    pub fn coord_sum(&self, range: Range<usize>) -> Rational {
        self.coords[range].iter().sum()
    }

    pub fn dot(&self, c: &[Rational]) -> Rational {
        self.coords.iter().zip(c).map(|(a, b)| a * b).sum()
    }
}

/// Equality rows `a·x = b` and inequality rows `a·x <= b` over a fixed dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    dim: usize,
    equalities: Vec<(Vec<Rational>, Rational)>,
    inequalities: Vec<(Vec<Rational>, Rational)>,
}

impl LinearSystem {
    pub fn new(dim: usize) -> Self {
        Self { dim, equalities: Vec::new(), inequalities: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn equalities(&self) -> &[(Vec<Rational>, Rational)] {
        &self.equalities
    }

    pub fn inequalities(&self) -> &[(Vec<Rational>, Rational)] {
        &self.inequalities
    }

    pub fn add_equality(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.dim, "row length must match the dimension");
        self.equalities.push((row, rhs));
    }

    pub fn add_inequality(&mut self, row: Vec<Rational>, rhs: Rational) {
        assert_eq!(row.len(), self.dim, "row length must match the dimension");
        self.inequalities.push((row, rhs));
    }

    /// `-x_i <= 0` for every coordinate.
    pub fn add_nonnegativity(&mut self) {
        for i in 0..self.dim {
            let mut row = vec![Rational::zero(); self.dim];
            row[i] = -Rational::one();
            self.inequalities.push((row, Rational::zero()));
        }
    }

    /// First violated row, numbering equalities before inequalities.
    pub fn first_violation(&self, p: &RationalPoint) -> Option<usize> {
        let lhs = |row: &[Rational]| -> Rational { row.iter().zip(p.coords()).map(|(a, b)| a * b).sum() };
        for (i, (row, b)) in self.equalities.iter().enumerate() {
            if lhs(row) != *b {
                return Some(i);
            }
        }
        for (i, (row, b)) in self.inequalities.iter().enumerate() {
            if lhs(row) > *b {
                return Some(self.equalities.len() + i);
            }
        }
        None
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        p.dim() == self.dim && self.first_violation(p).is_none()
    }
}

/// Every integral `(x, z)` feasible for the instance, sorted.
pub fn enumerate_integral_points(inst: &TpmcInstance, cap: u64) -> Result<Vec<RationalPoint>, LabError> {
    let mut bound: u64 = 1;
    for e in inst.edges() {
        let range = 1 + inst.supplies()[e.supply].min(inst.demands()[e.market]);
        bound = bound.saturating_mul(range);
        if bound > cap {
            return Err(LabError::PointCapExceeded { bound, cap });
        }
    }
    let mut out = Vec::new();
    let mut x = vec![0u64; inst.num_edges()];
    let mut used = vec![0u64; inst.num_supplies()];
    let mut shipped = vec![0u64; inst.num_markets()];
    fill(inst, 0, &mut x, &mut used, &mut shipped, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn fill(
    inst: &TpmcInstance,
    e: usize,
    x: &mut Vec<u64>,
    used: &mut Vec<u64>,
    shipped: &mut Vec<u64>,
    out: &mut Vec<RationalPoint>,
) {
    if e == inst.num_edges() {
        let demands = inst.demands();
        if shipped.iter().zip(demands).all(|(&s, &d)| s == 0 || s == d) {
            let coords = x
                .iter()
                .map(|&v| int(v as i64))
                .chain(shipped.iter().map(|&s| if s == 0 { Rational::one() } else { Rational::zero() }))
                .collect();
            out.push(RationalPoint::new(coords));
        }
        return;
    }
    let edge = inst.edges()[e];
    let room = (inst.supplies()[edge.supply] - used[edge.supply]).min(inst.demands()[edge.market] - shipped[edge.market]);
    for v in 0..=room {
        x[e] = v;
        used[edge.supply] += v;
        shipped[edge.market] += v;
        fill(inst, e + 1, x, used, shipped, out);
        used[edge.supply] -= v;
        shipped[edge.market] -= v;
    }
    x[e] = 0;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// Convex weights, one per generator, reproducing the point.
    Inside { weights: Vec<Rational> },
    /// `normal·p > offset` while `normal·g <= offset` for every generator.
    Outside { normal: Vec<Rational>, offset: Rational },
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Self::Inside { .. })
    }
}

fn check_dims(p: &RationalPoint, generators: &[RationalPoint]) -> Result<(), LabError> {
    if generators.is_empty() {
        return Err(LabError::EmptyGenerators);
    }
    match generators.iter().find(|g| g.dim() != p.dim()) {
        Some(g) => Err(LabError::DimensionMismatch { expected: p.dim(), found: g.dim() }),
        None => Ok(()),
    }
}

/// Decides `p ∈ conv(generators)` exactly.
pub fn hull_membership(p: &RationalPoint, generators: &[RationalPoint]) -> Result<Membership, LabError> {
    check_dims(p, generators)?;
    let dim = p.dim();
    // columns (g, 1), right-hand side (p, 1)
    let mut a: Vec<Vec<Rational>> = (0..dim).map(|i| generators.iter().map(|g| g.coords[i].clone()).collect()).collect();
    a.push(vec![Rational::one(); generators.len()]);
    let mut b: Vec<Rational> = p.coords.clone();
    b.push(Rational::one());
    let c = vec![Rational::zero(); generators.len()];
    match solve_standard(&a, &b, &c) {
        LpOutcome::Optimal { x, .. } => Ok(Membership::Inside { weights: x }),
        LpOutcome::Infeasible { farkas } => {
            // u·g + t >= 0 for all g and u·p + t < 0
            let normal = farkas[..dim].iter().map(|v| -v).collect();
            Ok(Membership::Outside { normal, offset: farkas[dim].clone() })
        }
        LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
    }
}

/// `true` iff the certificate is valid for `p` and `generators`.
pub fn verify_membership(p: &RationalPoint, generators: &[RationalPoint], verdict: &Membership) -> bool {
    match verdict {
        Membership::Inside { weights } => {
            if weights.len() != generators.len() || weights.iter().any(|w| w.is_negative()) {
                return false;
            }
            let total: Rational = weights.iter().sum();
            let combo_ok = (0..p.dim()).all(|i| {
                let s: Rational = weights.iter().zip(generators).map(|(w, g)| w * &g.coords[i]).sum();
                s == p.coords[i]
            });
            total.is_one() && combo_ok
        }
        Membership::Outside { normal, offset } => {
            p.dot(normal) > *offset && generators.iter().all(|g| g.dot(normal) <= *offset)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremeReport {
    pub extreme: bool,
    pub rank: usize,
    pub dim: usize,
    /// Indices of tight inequality rows.
    pub tight: Vec<usize>,
}

/// `p` is extreme iff its tight rows (all equalities plus tight inequalities)
/// have rank equal to the dimension.
pub fn extreme_point_check(p: &RationalPoint, sys: &LinearSystem) -> Result<ExtremeReport, LabError> {
    if p.dim() != sys.dim {
        return Err(LabError::DimensionMismatch { expected: sys.dim, found: p.dim() });
    }
    if let Some(row) = sys.first_violation(p) {
        return Err(LabError::NotInSystem { row });
    }
    let mut rows: Vec<Vec<Rational>> = sys.equalities.iter().map(|(r, _)| r.clone()).collect();
    let mut tight = Vec::new();
    for (i, (row, b)) in sys.inequalities.iter().enumerate() {
        if p.dot(row) == *b {
            tight.push(i);
            rows.push(row.clone());
        }
    }
    let r = rank(&rows);
    Ok(ExtremeReport { extreme: r == sys.dim, rank: r, dim: sys.dim, tight })
}

/// All vertices of a bounded system by trying every set of inequalities that
/// could complete the equalities to a basis. Meant for cross-checks only.
pub fn enumerate_vertices(sys: &LinearSystem) -> Result<Vec<RationalPoint>, LabError> {
    let eq_rows: Vec<Vec<Rational>> = sys.equalities.iter().map(|(r, _)| r.clone()).collect();
    let eq_rank = rank(&eq_rows);
    let need = sys.dim - eq_rank.min(sys.dim);
    let n = sys.inequalities.len();
    if binomial(n as u64, need as u64) > VERTEX_SUBSET_CAP {
        return Err(LabError::TooManySubsets);
    }
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..need).collect();
    if need > n {
        return Ok(out);
    }
    loop {
        let mut rows = eq_rows.clone();
        let mut rhs: Vec<Rational> = sys.equalities.iter().map(|(_, b)| b.clone()).collect();
        for &i in &subset {
            rows.push(sys.inequalities[i].0.clone());
            rhs.push(sys.inequalities[i].1.clone());
        }
        if let Some(x) = solve_unique(&rows, &rhs, sys.dim) {
            let p = RationalPoint::new(x);
            if sys.contains(&p) {
                out.push(p);
            }
        }
        // next combination in lexicographic order
        let mut i = need;
        loop {
            if i == 0 {
                out.sort();
                out.dedup();
                return Ok(out);
            }
            i -= 1;
            if subset[i] < n - need + i {
                subset[i] += 1;
                for j in i + 1..need {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// A battery objective whose relaxed optimum beats every integral point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub objective: Vec<Rational>,
    pub relaxed: Rational,
    /// `None` when no generator meets the bound.
    pub integral: Option<Rational>,
    /// Optimal point of the relaxation.
    pub point: RationalPoint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub bound: Cardinality,
    pub generators: usize,
    pub objectives: usize,
    pub gaps: Vec<Gap>,
}

impl AuditReport {
    pub fn holds(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Integer-hull audit over a fixed generator set: every battery objective
/// must have the same optimum over `conv(generators) ∩ {card bound}` as over
/// the generators meeting the bound.
#[derive(Debug, Clone)]
pub struct HullAudit {
    generators: Vec<RationalPoint>,
    cards: Vec<usize>,
    card_coords: Range<usize>,
    battery: Vec<Vec<Rational>>,
}

impl HullAudit {
    /// Generators are the integral points of `inst`; the cardinality is the
    /// number of rejected markets.
    pub fn for_instance(inst: &TpmcInstance) -> Result<Self, LabError> {
        let dim = inst.num_edges() + inst.num_markets();
        if dim > MAX_AUDIT_DIM {
            return Err(LabError::DimensionTooLarge { dim, cap: MAX_AUDIT_DIM });
        }
        let generators = enumerate_integral_points(inst, DEFAULT_POINT_CAP)?;
        Self::new(generators, inst.num_edges()..dim)
    }

    /// `card_coords` are the coordinates whose sum is bounded, and the sign
    /// patterns of the battery live on them.
    pub fn new(generators: Vec<RationalPoint>, card_coords: Range<usize>) -> Result<Self, LabError> {
        if generators.is_empty() {
            return Err(LabError::EmptyGenerators);
        }
        if generators.len() > MAX_GENERATORS {
            return Err(LabError::TooManyGenerators { count: generators.len(), cap: MAX_GENERATORS });
        }
        let dim = generators[0].dim();
        let cards = generators
            .iter()
            .map(|g| {
                let s = g.coord_sum(card_coords.clone());
                s.to_integer().to_usize().expect("cardinalities are small nonnegative integers")
            })
            .collect();
        let battery = battery(dim, card_coords.clone());
        Ok(Self { generators, cards, card_coords, battery })
    }

    pub fn generators(&self) -> &[RationalPoint] {
        &self.generators
    }

    pub fn battery(&self) -> &[Vec<Rational>] {
        &self.battery
    }

    pub fn check(&self, bound: Cardinality) -> AuditReport {
        let gaps = self.battery.iter().filter_map(|c| self.gap_for(c, bound)).collect();
        AuditReport { bound, generators: self.generators.len(), objectives: self.battery.len(), gaps }
    }

    /// Compares the relaxed and integral optimum for one objective. Only the
    /// best generator of each cardinality can matter, so the LP runs over
    /// those alone.
    pub fn gap_for(&self, c: &[Rational], bound: Cardinality) -> Option<Gap> {
        let top = self.cards.iter().copied().max().unwrap_or(0);
        let mut best: Vec<Option<(Rational, usize)>> = vec![None; top + 1];
        for (idx, g) in self.generators.iter().enumerate() {
            let v = g.dot(c);
            let slot = &mut best[self.cards[idx]];
            if slot.as_ref().map_or(true, |(b, _)| v < *b) {
                *slot = Some((v, idx));
            }
        }
        let reps: Vec<(usize, Rational, usize)> =
            best.into_iter().enumerate().filter_map(|(k, s)| s.map(|(v, idx)| (k, v, idx))).collect();
        let integral = reps.iter().filter(|(k, _, _)| bound.admits(*k)).map(|(_, v, _)| v.clone()).min();
        let (relaxed, weights) = lift_lp(&reps.iter().map(|(k, v, _)| (*k, v.clone())).collect::<Vec<_>>(), bound)?;
        match integral {
            Some(i) if i == relaxed => None,
            Some(i) if i < relaxed => unreachable!("relaxation cannot be worse than an integral point"),
            integral => {
                let dim = self.generators[0].dim();
                let mut coords = vec![Rational::zero(); dim];
                for ((_, _, idx), w) in reps.iter().zip(&weights) {
                    for (acc, v) in coords.iter_mut().zip(self.generators[*idx].coords()) {
                        *acc += w * v;
                    }
                }
                Some(Gap {
                    objective: c.to_vec(),
                    relaxed,
                    integral,
                    point: RationalPoint::new(coords),
                })
            }
        }
    }

    /// An objective from the battery for which `p` is the unique optimum
    /// over `conv(generators) ∩ {Σ card coords <= k}`.
    pub fn unique_supporting_objective(&self, p: &RationalPoint, k: usize) -> Option<Vec<Rational>> {
        let bound = Cardinality::at_most(k);
        if p.coord_sum(self.card_coords.clone()) > int(k as i64) {
            return None;
        }
        self.battery.iter().find(|c| self.uniquely_optimal(p, c, bound)).cloned()
    }

    fn uniquely_optimal(&self, p: &RationalPoint, c: &[Rational], bound: Cardinality) -> bool {
        let values: Vec<Rational> = self.generators.iter().map(|g| g.dot(c)).collect();
        let target = p.dot(c);
        // optimal face: multipliers with Σλ = 1, bound row, and c·(Σλg) = target
        let (mut a, mut b, slack) = self.face_rows(bound);
        let mut row: Vec<Rational> = values.clone();
        if slack {
            row.push(Rational::zero());
        }
        a.push(row);
        b.push(target.clone());
        let width = a[0].len();
        let zero_cost = vec![Rational::zero(); width];
        if !solve_standard(&a, &b, &zero_cost).is_optimal() {
            return false;
        }
        // nothing strictly better than the target
        let (fa, fb, fslack) = self.face_rows(bound);
        let mut cost = values;
        if fslack {
            cost.push(Rational::zero());
        }
        match solve_standard(&fa, &fb, &cost) {
            LpOutcome::Optimal { value, .. } if value == target => {}
            _ => return false,
        }
        for i in 0..p.dim() {
            let mut coord: Vec<Rational> = self.generators.iter().map(|g| g.coords[i].clone()).collect();
            if slack {
                coord.push(Rational::zero());
            }
            for sign in [1i64, -1] {
                let cost: Vec<Rational> = coord.iter().map(|v| v * int(sign)).collect();
                match solve_standard(&a, &b, &cost) {
                    LpOutcome::Optimal { value, .. } if value == &p.coords[i] * int(sign) => {}
                    _ => return false,
                }
            }
        }
        true
    }

    fn face_rows(&self, bound: Cardinality) -> (Vec<Vec<Rational>>, Vec<Rational>, bool) {
        let n = self.generators.len();
        let slack = bound.sense != CardinalitySense::Exactly;
        let width = n + usize::from(slack);
        let mut ones = vec![Rational::one(); n];
        let mut card: Vec<Rational> = self.cards.iter().map(|&k| int(k as i64)).collect();
        if slack {
            ones.push(Rational::zero());
            card.push(match bound.sense {
                CardinalitySense::AtMost => Rational::one(),
                _ => -Rational::one(),
            });
        }
        debug_assert_eq!(ones.len(), width);
        (vec![ones, card], vec![Rational::one(), int(bound.k as i64)], slack)
    }
}

/// `min Σ λ_i v_i` with `Σ λ_i = 1` and `Σ λ_i k_i` meeting the bound.
/// Returns the optimum and the weights, or `None` if the bound is infeasible
/// even fractionally.
fn lift_lp(points: &[(usize, Rational)], bound: Cardinality) -> Option<(Rational, Vec<Rational>)> {
    let n = points.len();
    let slack = bound.sense != CardinalitySense::Exactly;
    let mut ones = vec![Rational::one(); n];
    let mut card: Vec<Rational> = points.iter().map(|(k, _)| int(*k as i64)).collect();
    let mut cost: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    if slack {
        ones.push(Rational::zero());
        card.push(match bound.sense {
            CardinalitySense::AtMost => Rational::one(),
            _ => -Rational::one(),
        });
        cost.push(Rational::zero());
    }
    match solve_standard(&[ones, card], &[Rational::one(), int(bound.k as i64)], &cost) {
        LpOutcome::Optimal { value, mut x } => {
            x.truncate(n);
            Some((value, x))
        }
        _ => None,
    }
}

/// Sign patterns in `{-1, 1}` on `card_coords` (zero elsewhere), then seeded
/// random rationals in `[-5, 5]` with denominators up to 4 on every coordinate.
fn battery(dim: usize, card_coords: Range<usize>) -> Vec<Vec<Rational>> {
    let width = card_coords.len();
    let mut out = Vec::new();
    if width < 16 {
        for mask in 0u32..1 << width {
            let mut c = vec![Rational::zero(); dim];
            for (bit, idx) in card_coords.clone().enumerate() {
                c[idx] = if mask >> bit & 1 == 1 { -Rational::one() } else { Rational::one() };
            }
            out.push(c);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(BATTERY_SEED);
    for _ in 0..RANDOM_OBJECTIVES {
        out.push((0..dim).map(|_| random_rational(&mut rng, -5, 5, 4)).collect());
    }
    out
}

/// Integer-hull audit of `inst` under `Σ z <= k`.
pub fn audit_cardinality_hull(inst: &TpmcInstance, k: usize) -> Result<AuditReport, LabError> {
    Ok(HullAudit::for_instance(inst)?.check(Cardinality::at_most(k)))
}

/// Audit of `conv(matchings) ∩ {|M| <= k}` on matching incidence vectors.
pub fn audit_matching_cardinality(g: &SimpleGraph, k: usize) -> Result<AuditReport, LabError> {
    let m = g.edges().len();
    if m > MATCHING_AUDIT_EDGE_CAP {
        return Err(LabError::TooManyEdges { edges: m, cap: MATCHING_AUDIT_EDGE_CAP });
    }
    let generators = all_matchings(g)
        .map_err(|_| LabError::TooManyEdges { edges: m, cap: MATCHING_AUDIT_EDGE_CAP })?
        .into_iter()
        .map(|set| {
            let mut y = vec![Rational::zero(); m];
            for e in set {
                y[e] = Rational::one();
            }
            RationalPoint::new(y)
        })
        .collect();
    Ok(HullAudit::new(generators, 0..m)?.check(Cardinality::at_most(k)))
}

/// Human-readable one-liner for a gap.
pub fn describe_gap(gap: &Gap) -> String {
    match &gap.integral {
        Some(v) => format!("relaxed optimum {} below integral optimum {v}", gap.relaxed),
        None => format!("relaxed optimum {} with no integral point", gap.relaxed),
    }
}
