//! Brute-force optimum over all `2^|V2|` market selections.
//!
//! For a fixed rejection vector the best flow is a transportation problem, so
//! the global optimum is the best selection evaluated with the flow oracle.
//! Winners are chosen by objective value, then by the rejection vector read
//! as a 0/1 string in market order (smallest first).

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::Range;

use crate::flow::{min_cost_transport, Selection};
use crate::instance::{Cardinality, InstanceError, Solution, TpmcInstance};
use crate::Rational;

pub const DEFAULT_ENUMERATION_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    /// More markets than the enumeration cap allows.
    CapExceeded { markets: usize, cap: usize },
    BoundOutOfRange { k: usize, markets: usize },
    Instance(InstanceError),
}

impl fmt::Display for EnumerationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CapExceeded { markets, cap } => {
                write!(f, "{markets} markets exceed the enumeration cap of {cap}")
            }
            Self::BoundOutOfRange { k, markets } => {
                write!(f, "cardinality bound {k} exceeds the {markets} markets")
            }
            Self::Instance(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for EnumerationError {}

impl From<InstanceError> for EnumerationError {
    fn from(e: InstanceError) -> Self {
        Self::Instance(e)
    }
}

/// Compares two rejection masks as 0/1 strings in market order.
pub fn z_lex_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let first = diff.trailing_zeros();
    if a >> first & 1 == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// One evaluated selection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    /// Bit `j` set means market `j` is rejected.
    pub mask: u64,
    pub value: Rational,
    pub flow: Vec<u64>,
}

impl Candidate {
    pub fn rejected(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Strictly preferred under the value-then-`z` order.
    pub fn beats(&self, other: &Candidate) -> bool {
        match self.value.cmp(&other.value) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => z_lex_cmp(self.mask, other.mask) == Ordering::Less,
        }
    }

    pub fn into_solution(self, inst: &TpmcInstance) -> Solution {
        let mask = self.mask;
        inst.integral_solution(&self.flow, |j| mask >> j & 1 == 1)
    }
}

/// Keeps the preferred of two optional candidates.
pub fn better(a: Option<Candidate>, b: Option<Candidate>) -> Option<Candidate> {
    match (a, b) {
        (Some(a), Some(b)) => Some(if b.beats(&a) { b } else { a }),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Evaluates one selection; `None` when its demands cannot be met.
pub fn evaluate_mask(inst: &TpmcInstance, mask: u64) -> Option<Candidate> {
    let n = inst.num_markets();
    let res = min_cost_transport(inst, &Selection::from_rejection_mask(n, mask));
    if !res.is_optimal() {
        return None;
    }
    let lost: Rational = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| &inst.revenues()[j]).sum();
    Some(Candidate { mask, value: res.cost + lost, flow: res.flow })
}

/// Best candidate among the masks in `range` admitted by `card`.
pub fn scan_range(inst: &TpmcInstance, card: Option<Cardinality>, range: Range<u64>) -> Option<Candidate> {
    range
        .filter(|m| card.map_or(true, |c| c.admits(m.count_ones() as usize)))
        .filter_map(|m| evaluate_mask(inst, m))
        .fold(None, |best, c| better(best, Some(c)))
}

pub fn check_cap(inst: &TpmcInstance, cap: usize) -> Result<u64, EnumerationError> {
    let n = inst.num_markets();
    if n > cap || n >= 64 {
        return Err(EnumerationError::CapExceeded { markets: n, cap });
    }
    Ok(1u64 << n)
}

fn check_bound(inst: &TpmcInstance, card: Option<Cardinality>) -> Result<(), EnumerationError> {
    match card {
        Some(c) if c.k > inst.num_markets() => {
            Err(EnumerationError::BoundOutOfRange { k: c.k, markets: inst.num_markets() })
        }
        _ => Ok(()),
    }
}

/// Global optimum subject to `card`, or `None` when no admitted selection is
/// transport-feasible. Uses the default cap of 22 markets.
pub fn solve_exact(
    inst: &TpmcInstance,
    card: Option<Cardinality>,
) -> Result<Option<Solution>, EnumerationError> {
    solve_exact_capped(inst, card, DEFAULT_ENUMERATION_CAP)
}

pub fn solve_exact_capped(
    inst: &TpmcInstance,
    card: Option<Cardinality>,
    cap: usize,
) -> Result<Option<Solution>, EnumerationError> {
    let total = check_cap(inst, cap)?;
    check_bound(inst, card)?;
    Ok(scan_range(inst, card, 0..total).map(|c| c.into_solution(inst)))
}

/// Best candidate for each number of rejected markets (index = cardinality).
pub fn best_per_cardinality(
    inst: &TpmcInstance,
    cap: usize,
) -> Result<Vec<Option<Candidate>>, EnumerationError> {
    let total = check_cap(inst, cap)?;
    let mut best: Vec<Option<Candidate>> = alloc::vec![None; inst.num_markets() + 1];
    for mask in 0..total {
        if let Some(c) = evaluate_mask(inst, mask) {
            let k = c.rejected();
            best[k] = better(best[k].take(), Some(c));
        }
    }
    Ok(best)
}

/// For the objective `(costs, revenues)` on `inst`'s graph: one optimal
/// solution for every cardinality at which the optimum is attained, sorted by
/// cardinality. All entries share the same objective value.
pub fn optimal_support(
    inst: &TpmcInstance,
    costs: &[Rational],
    revenues: &[Rational],
) -> Result<Vec<(usize, Solution)>, EnumerationError> {
    let priced = inst.with_objective(costs, revenues)?;
    support_of(&priced, DEFAULT_ENUMERATION_CAP)
}

/// [`optimal_support`] for the instance's own objective.
pub fn support_of(inst: &TpmcInstance, cap: usize) -> Result<Vec<(usize, Solution)>, EnumerationError> {
    let best = best_per_cardinality(inst, cap)?;
    let Some(opt) = best.iter().flatten().map(|c| c.value.clone()).min() else {
        return Ok(Vec::new());
    };
    Ok(best
        .into_iter()
        .enumerate()
        .filter_map(|(k, c)| c.filter(|c| c.value == opt).map(|c| (k, c.into_solution(inst))))
        .collect())
}
