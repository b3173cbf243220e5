//! Exact solvers and verifiers for the transportation problem with market
//! choice (TPMC) and its cardinality-constrained variant.
//!
//! Everything here is pure computation over exact rationals and works with
//! only `alloc`; file formats, parallel drivers and the command line live in
//! the companion `tpmc` crate.
//!
//! Module map:
//!
//! * [`instance`]: instance model, objective and feasibility, supply splitting.
//! * [`flow`]: exact min-cost transportation for a fixed market selection.
//! * [`enumerate`]: brute-force optimum over all market selections.
//! * [`conflict`]: conflict graph of two integral solutions, the path-marking
//!   search for a swap subgraph and the swap itself.
//! * [`cardinality`]: cardinality-constrained solver (Lagrangian multiplier
//!   search plus swap walk).
//! * [`matching`]: matchings of general graphs encoded as simple instances.
//! * [`lp`]: dense exact simplex with Bland's rule and Farkas certificates.
//! * [`polytope`]: integer-hull membership, extreme points and integrality audits.
//! * [`replay`]: two counterexample fixtures with end-to-end replays.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod cardinality;
pub mod conflict;
pub mod enumerate;
pub mod flow;
pub mod instance;
pub mod lp;
pub mod matching;
pub mod polytope;
pub mod random;
pub mod replay;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

pub use cardinality::{solve_cc, sweep_cardinality, CcSolution, Certificate};
pub use enumerate::{optimal_support, solve_exact};
pub use flow::{min_cost_transport, selection_feasible, FlowResult, FlowStatus, Selection};
pub use instance::{
    Cardinality, CardinalitySense, InstanceBuilder, InstanceError, Solution, SplitMapping,
    TpmcInstance,
};

/// Integer-valued rational.
pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
