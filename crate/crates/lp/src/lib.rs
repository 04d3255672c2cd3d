//! The relaxed entropic LP over symmetrized entropy terms, solved exactly.
//!
//! Variables `x_k(a, b)` / `y_k(a, b)` stand for normalized joint entropies
//! of `a` stored contents and `b` answers, without / with message `k`'s
//! preceding messages included. [`build_lp`] emits the submodular,
//! monotone, decodable, Han, privacy and invariance rows; [`solve_exact`]
//! runs a rational simplex method and returns a checked primal point.
//!
//! The minimum of `a0 y_1(1,0) + b0 y_1(0,1)` lower-bounds `a0 alpha + b0 beta`
//! for every achievable pair: the costs dominate the informational
//! quantities, not the other way around.

mod constraint;
mod dump;
mod enumerate;
mod problem;
mod simplex;
mod var;

pub use constraint::{LinearConstraint, Sense};
pub use dump::dump_lp;
pub use enumerate::{
    enumerate_structural, enumerate_submodular, enumerate_submodular_with, submodular_row,
    swapped, tuples, SubmodularMode, Tuple,
};
pub use problem::{
    build_lp, build_lp_with, lp_bound, solve_exact, solve_exact_with_limit, LpProblem, LpSolution,
    LpStatus, DEFAULT_PIVOT_LIMIT,
};
pub use simplex::SolveStats;
pub use var::{variable_census, Side, VarId};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("variable {0} is not part of the problem")]
    UnknownVariable(String),
    #[error("simplex stopped after {0} pivots")]
    IterationLimit(u64),
    #[error("solution failed exact verification: {0}")]
    Certificate(String),
    #[error("LP has no optimum: {0}")]
    NotOptimal(LpStatus),
}

pub type Result<T> = std::result::Result<T, Error>;
