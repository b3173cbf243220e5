//! Cardinality-constrained TPMC on simple instances.
//!
//! Supplies are split into unit copies, then the bound on `Σ z_j` is moved
//! into the objective: every lost revenue is shifted by the same amount `t`.
//! For each shift the inner solver reports the optimal solutions with the
//! fewest and the most rejections. The solver searches for a shift whose
//! range of optimal cardinalities contains `k`, stepping to the shift where
//! the optimal lines of the two current endpoints cross. Inside that range
//! every cardinality is optimal, and a chain of conflict-graph swaps walks
//! from the fewest-rejection optimum up to exactly `k`.
//!
//! The result is optimal because it is optimal for the shifted objective and
//! `t·(count - k) = 0`, with `t >= 0` for an upper bound and `t <= 0` for a
//! lower bound.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Range;

use num_traits::{Signed, Zero};

use crate::conflict::{apply_swap, find_swap_subgraph, ConflictError, ConflictGraph};
use crate::enumerate::{check_cap, solve_exact, EnumerationError, DEFAULT_ENUMERATION_CAP};
use crate::flow::{min_cost_transport, Selection};
use crate::instance::{Cardinality, CardinalitySense, InstanceError, Solution, TpmcInstance};
use crate::Rational;

/// Hard stop for the multiplier search; each step exposes a new breakpoint.
const MAX_STEPS: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CcError {
    NotSimple,
    BoundOutOfRange { k: usize, markets: usize },
    /// The inner solver was built for a different instance.
    SolverMismatch,
    Enumeration(EnumerationError),
    Swap(ConflictError),
    /// An invariant of the method failed on this input.
    Falsified(String),
    Instance(InstanceError),
}

impl fmt::Display for CcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotSimple => f.write_str("the cardinality solver needs demands in {1, 2}"),
            Self::BoundOutOfRange { k, markets } => {
                write!(f, "cardinality bound {k} exceeds the {markets} markets")
            }
            Self::SolverMismatch => f.write_str("inner solver was built for another instance"),
            Self::Enumeration(e) => write!(f, "{e}"),
            Self::Swap(e) => write!(f, "{e}"),
            Self::Falsified(what) => write!(f, "invariant failed: {what}"),
            Self::Instance(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CcError {}

impl From<EnumerationError> for CcError {
    fn from(e: EnumerationError) -> Self {
        Self::Enumeration(e)
    }
}

impl From<ConflictError> for CcError {
    fn from(e: ConflictError) -> Self {
        Self::Swap(e)
    }
}

impl From<InstanceError> for CcError {
    fn from(e: InstanceError) -> Self {
        Self::Instance(e)
    }
}

/// Optimal solutions of an unconstrained objective with the fewest and the
/// most rejected markets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extremes {
    pub value: Rational,
    pub fewest: Solution,
    pub fewest_card: usize,
    pub most: Solution,
    pub most_card: usize,
}

impl Extremes {
    pub fn contains(&self, k: usize) -> bool {
        self.fewest_card <= k && k <= self.most_card
    }
}

/// Unconstrained solver for a fixed graph whose lost revenues vary.
pub trait InnerSolver {
    fn instance(&self) -> &TpmcInstance;
    /// Extremes for the instance's costs and the given revenues. Solutions
    /// carry their objective under those revenues.
    fn extremes(&mut self, revenues: &[Rational]) -> Result<Extremes, CcError>;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibleSelection {
    pub mask: u64,
    pub cost: Rational,
    pub flow: Vec<u64>,
}

/// Transport-feasible selections among the rejection masks in `range`.
pub fn feasible_selections(inst: &TpmcInstance, range: Range<u64>) -> Vec<FeasibleSelection> {
    let n = inst.num_markets();
    range
        .filter_map(|mask| {
            let res = min_cost_transport(inst, &Selection::from_rejection_mask(n, mask));
            res.is_optimal().then(|| FeasibleSelection { mask, cost: res.cost, flow: res.flow })
        })
        .collect()
}

/// Inner solver backed by a table of every feasible selection and its
/// minimum transport cost, so each new revenue vector costs one pass.
#[derive(Debug, Clone)]
pub struct EnumerationSolver {
    inst: TpmcInstance,
    table: Vec<FeasibleSelection>,
}

impl EnumerationSolver {
    pub fn new(inst: &TpmcInstance) -> Result<Self, CcError> {
        let total = check_cap(inst, DEFAULT_ENUMERATION_CAP)?;
        Ok(Self::from_table(inst, feasible_selections(inst, 0..total)))
    }

    /// `table` must list every feasible selection of `inst`, in mask order.
    pub fn from_table(inst: &TpmcInstance, table: Vec<FeasibleSelection>) -> Self {
        Self { inst: inst.clone(), table }
    }
}

impl InnerSolver for EnumerationSolver {
    fn instance(&self) -> &TpmcInstance {
        &self.inst
    }

    fn extremes(&mut self, revenues: &[Rational]) -> Result<Extremes, CcError> {
        let m = self.inst.num_markets();
        if revenues.len() != m {
            return Err(CcError::SolverMismatch);
        }
        let mut best: Option<(Rational, usize, usize)> = None;
        for (idx, entry) in self.table.iter().enumerate() {
            let lost: Rational = (0..m).filter(|j| entry.mask >> j & 1 == 1).map(|j| &revenues[j]).sum();
            let value = &entry.cost + lost;
            best = Some(match best {
                None => (value, idx, idx),
                Some((v, lo, hi)) => {
                    if value < v {
                        (value, idx, idx)
                    } else if value > v {
                        (v, lo, hi)
                    } else {
                        let card = entry.mask.count_ones();
                        let lo_card = self.table[lo].mask.count_ones();
                        let hi_card = self.table[hi].mask.count_ones();
                        // table is in mask order; prefer the smaller 0/1 string on ties
                        let earlier = |a: usize, b: usize| {
                            crate::enumerate::z_lex_cmp(self.table[a].mask, self.table[b].mask).is_lt()
                        };
                        let lo = if card < lo_card || (card == lo_card && earlier(idx, lo)) { idx } else { lo };
                        let hi = if card > hi_card || (card == hi_card && earlier(idx, hi)) { idx } else { hi };
                        (v, lo, hi)
                    }
                }
            });
        }
        let (value, lo, hi) = best.ok_or_else(|| CcError::Falsified("no feasible selection".into()))?;
        let make = |idx: usize| {
            let entry = &self.table[idx];
            let mut sol = self.inst.integral_solution(&entry.flow, |j| entry.mask >> j & 1 == 1);
            sol.objective = Some(value.clone());
            (sol, entry.mask.count_ones() as usize)
        };
        let (fewest, fewest_card) = make(lo);
        let (most, most_card) = make(hi);
        Ok(Extremes { value, fewest, fewest_card, most, most_card })
    }
}

/// Shift tried by the multiplier search and the cardinality range it exposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierStep {
    pub shift: Rational,
    pub fewest: usize,
    pub most: usize,
}

/// One swap of the walk towards `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapStep {
    pub from: usize,
    pub to: usize,
    pub nodes: usize,
    pub components: usize,
}

/// Evidence that a solution is optimal under its cardinality bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub bound: Cardinality,
    /// Amount added to every lost revenue.
    pub shift: Rational,
    /// Optimum of the shifted objective on the unit-supply instance.
    pub penalized_optimum: Rational,
    /// Range of optimal cardinalities at `shift`.
    pub fewest: usize,
    pub most: usize,
    pub steps: Vec<MultiplierStep>,
    pub swaps: Vec<SwapStep>,
}

impl Certificate {
    /// Size of the shift, independent of its direction.
    pub fn multiplier(&self) -> Rational {
        self.shift.abs()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CcSolution {
    /// Solution of the original instance with its original objective.
    pub solution: Solution,
    pub certificate: Certificate,
}

/// Optimum subject to `card`, or `None` when no integral solution meets it.
pub fn solve_cc(inst: &TpmcInstance, card: Cardinality) -> Result<Option<CcSolution>, CcError> {
    let (split, _) = inst.split_supplies();
    let mut solver = EnumerationSolver::new(&split)?;
    solve_cc_with(inst, card, &mut solver)
}

fn check_input(inst: &TpmcInstance, card: Cardinality, solver: &dyn InnerSolver) -> Result<TpmcInstance, CcError> {
    if !inst.is_simple() {
        return Err(CcError::NotSimple);
    }
    if card.k > inst.num_markets() {
        return Err(CcError::BoundOutOfRange { k: card.k, markets: inst.num_markets() });
    }
    let (split, _) = inst.split_supplies();
    if solver.instance() != &split {
        return Err(CcError::SolverMismatch);
    }
    Ok(split)
}

fn shifted(base: &[Rational], shift: &Rational) -> Vec<Rational> {
    base.iter().map(|r| r + shift).collect()
}

/// [`solve_cc`] with a caller-supplied inner solver for the split instance.
pub fn solve_cc_with(
    inst: &TpmcInstance,
    card: Cardinality,
    solver: &mut dyn InnerSolver,
) -> Result<Option<CcSolution>, CcError> {
    let split = check_input(inst, card, solver)?;
    let k = card.k;
    let base = split.revenues().to_vec();
    let zero = Rational::zero();
    let e0 = solver.extremes(&base)?;
    let mut steps = alloc::vec![MultiplierStep { shift: zero.clone(), fewest: e0.fewest_card, most: e0.most_card }];

    let (shift, ext) = match card.sense {
        CardinalitySense::AtMost if e0.fewest_card <= k => {
            let sol = e0.fewest.clone();
            return finish(inst, card, zero, e0, sol, steps, Vec::new()).map(Some);
        }
        CardinalitySense::AtLeast if e0.most_card >= k => {
            let sol = e0.most.clone();
            return finish(inst, card, zero, e0, sol, steps, Vec::new()).map(Some);
        }
        CardinalitySense::Exactly if e0.contains(k) => (zero, e0),
        _ => {
            let upward = e0.fewest_card > k;
            match search(&split, solver, k, upward, e0, &mut steps)? {
                Some(found) => found,
                None => {
                    confirm_infeasible(inst, card)?;
                    return Ok(None);
                }
            }
        }
    };

    let revenues = shifted(&base, &shift);
    let (sol, swaps) = walk(&split, &revenues, &ext, k)?;
    finish(inst, card, shift, ext, sol, steps, swaps).map(Some)
}

/// Looks for a shift whose optimal range contains `k`. `upward` shifts
/// revenues up (fewer rejections), otherwise down.
fn search(
    split: &TpmcInstance,
    solver: &mut dyn InnerSolver,
    k: usize,
    upward: bool,
    e0: Extremes,
    steps: &mut Vec<MultiplierStep>,
) -> Result<Option<(Rational, Extremes)>, CcError> {
    let base = split.revenues().to_vec();
    let sign = if upward { Rational::from_integer(1.into()) } else { Rational::from_integer((-1).into()) };
    let bound: Rational = split.costs().iter().chain(split.revenues()).map(|v| v.abs()).sum::<Rational>()
        + Rational::from_integer(1.into());
    let card_r = |c: usize| Rational::from_integer(c.into());

    // near side: the endpoint closest to k from the violating side
    let near = |e: &Extremes| if upward { e.fewest_card } else { e.most_card };
    let violates = |c: usize| if upward { c > k } else { c < k };

    let top_shift = &sign * &bound;
    let e_top = solver.extremes(&shifted(&base, &top_shift))?;
    steps.push(MultiplierStep { shift: top_shift.clone(), fewest: e_top.fewest_card, most: e_top.most_card });
    if violates(near(&e_top)) {
        return Ok(None);
    }

    // lines value(t) = a + t·c of the two current endpoints, with t the shift
    let mut lo_line = (e0.value.clone(), card_r(near(&e0)));
    let mut hi_shift = top_shift;
    let mut e_hi = e_top;
    for _ in 0..MAX_STEPS {
        if e_hi.contains(k) {
            return Ok(Some((hi_shift, e_hi)));
        }
        let far_card = if upward { e_hi.most_card } else { e_hi.fewest_card };
        let c_hi = card_r(far_card);
        let a_hi = &e_hi.value - &hi_shift * &c_hi;
        let (a_lo, c_lo) = &lo_line;
        if *c_lo == c_hi {
            return Err(CcError::Falsified("parallel optimal lines in multiplier search".into()));
        }
        let t = (&a_hi - a_lo) / (c_lo - &c_hi);
        let e = solver.extremes(&shifted(&base, &t))?;
        steps.push(MultiplierStep { shift: t.clone(), fewest: e.fewest_card, most: e.most_card });
        if e.contains(k) {
            return Ok(Some((t, e)));
        }
        if violates(near(&e)) {
            let c = card_r(near(&e));
            lo_line = (&e.value - &t * &c, c);
        } else {
            hi_shift = t;
            e_hi = e;
        }
    }
    Err(CcError::Falsified(format!("multiplier search did not settle in {MAX_STEPS} steps")))
}

/// From the fewest-rejection optimum, swap upwards until exactly `k`
/// markets are rejected.
fn walk(
    split: &TpmcInstance,
    revenues: &[Rational],
    ext: &Extremes,
    k: usize,
) -> Result<(Solution, Vec<SwapStep>), CcError> {
    if ext.fewest_card == k {
        return Ok((ext.fewest.clone(), Vec::new()));
    }
    if ext.most_card == k {
        return Ok((ext.most.clone(), Vec::new()));
    }
    let priced = split.with_objective(split.costs(), revenues)?;
    let mut cur = ext.fewest.clone();
    let mut cur_card = ext.fewest_card;
    let mut swaps = Vec::new();
    while cur_card < k {
        let graph = ConflictGraph::build(&priced, &cur, &ext.most)?;
        let sub = find_swap_subgraph(&graph)?;
        let out = apply_swap(&graph, &sub.nodes)?;
        if !out.delta.is_zero() {
            return Err(ConflictError::NotBothOptimal { delta: out.delta }.into());
        }
        if out.card3 != cur_card + 1 {
            return Err(CcError::Falsified(format!(
                "swap from {cur_card} rejections produced {}",
                out.card3
            )));
        }
        swaps.push(SwapStep {
            from: cur_card,
            to: out.card3,
            nodes: sub.nodes.len(),
            components: sub.components.len(),
        });
        cur = out.sol3;
        cur_card += 1;
    }
    Ok((cur, swaps))
}

fn finish(
    inst: &TpmcInstance,
    card: Cardinality,
    shift: Rational,
    ext: Extremes,
    split_sol: Solution,
    steps: Vec<MultiplierStep>,
    swaps: Vec<SwapStep>,
) -> Result<CcSolution, CcError> {
    let (split, mapping) = inst.split_supplies();
    let merged = mapping.merge(&split, &split_sol)?;
    let solution = inst.solution(merged.x, merged.z)?;
    let certificate = Certificate {
        bound: card,
        shift,
        penalized_optimum: ext.value,
        fewest: ext.fewest_card,
        most: ext.most_card,
        steps,
        swaps,
    };
    Ok(CcSolution { solution, certificate })
}

fn confirm_infeasible(inst: &TpmcInstance, card: Cardinality) -> Result<(), CcError> {
    match solve_exact(inst, Some(card)) {
        Ok(Some(_)) => Err(CcError::Falsified(format!(
            "multiplier search reported {card} infeasible but enumeration found a solution"
        ))),
        Ok(None) | Err(EnumerationError::CapExceeded { .. }) => Ok(()),
        Err(e) => Err(e.into()),
    }
}

/// Re-derives the optimality argument for `result`: feasibility, the sign of
/// the shift, complementary slackness and optimality under the shifted
/// objective.
pub fn verify_certificate(
    inst: &TpmcInstance,
    result: &CcSolution,
    solver: &mut dyn InnerSolver,
) -> Result<bool, CcError> {
    let cert = &result.certificate;
    let split = check_input(inst, cert.bound, solver)?;
    let sol = &result.solution;
    if !inst.check_feasible(sol, true).is_feasible() {
        return Ok(false);
    }
    let Some(count) = sol.rejected_count() else { return Ok(false) };
    if !cert.bound.admits(count) {
        return Ok(false);
    }
    let sign_ok = match cert.bound.sense {
        CardinalitySense::AtMost => !cert.shift.is_negative(),
        CardinalitySense::AtLeast => !cert.shift.is_positive(),
        CardinalitySense::Exactly => true,
    };
    let slack = Rational::from_integer(count.into()) - Rational::from_integer(cert.bound.k.into());
    if !sign_ok || !(&cert.shift * slack).is_zero() {
        return Ok(false);
    }
    let e = solver.extremes(&shifted(split.revenues(), &cert.shift))?;
    let own = inst.evaluate_objective(&sol.x, &sol.z)? + &cert.shift * Rational::from_integer(count.into());
    Ok(e.value == cert.penalized_optimum && own == e.value)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub k: usize,
    /// `None` when exactly `k` rejections are infeasible.
    pub result: Option<CcSolution>,
}

/// `solve_cc` with `Σ z = k` for every `k` from 0 to the number of markets.
pub fn sweep_cardinality(inst: &TpmcInstance) -> Result<Vec<SweepRow>, CcError> {
    let (split, _) = inst.split_supplies();
    let mut solver = EnumerationSolver::new(&split)?;
    sweep_cardinality_with(inst, &mut solver)
}

pub fn sweep_cardinality_with(inst: &TpmcInstance, solver: &mut dyn InnerSolver) -> Result<Vec<SweepRow>, CcError> {
    (0..=inst.num_markets())
        .map(|k| Ok(SweepRow { k, result: solve_cc_with(inst, Cardinality::exactly(k), solver)? }))
        .collect()
}
