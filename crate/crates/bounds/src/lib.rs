//! Explicit lower bounds on `(N - m) alpha + m beta` and `alpha + m beta`.
//!
//! * [`dunderline_b`] evaluates the closed-form bound (boundary values at
//!   `K = 1`, `m = 1` and `m = N` take precedence).
//! * [`tilde_b`] evaluates the general recursive bound for a supplied
//!   coefficient vector, checked against the feasibility conditions of
//!   [`check_feasible`].
//! * [`theorem3_bound`] gives the `alpha + m beta` bounds for the large
//!   weights `m = (N - 1) + (N - 2) N^(K - k)`.
//! * [`lower_bound_halfplanes`] exports all of them as [`HalfPlane`]s.
//!
//! [`HalfPlane`]: pirtrade_core::HalfPlane

mod coefficients;
mod explicit;
mod halfplanes;
mod jstar;
mod theorem3;

pub use coefficients::{
    check_feasible, d_from_c, feasibility, paper_coefficients, CoefficientVector, DVector,
    Infeasibility,
};
pub use explicit::{
    closed_form, dunderline_b, dunderline_bound, tilde_b, tilde_b_with, BoundKind, BoundResult,
    BoundTable, Provenance,
};
pub use halfplanes::lower_bound_halfplanes;
pub use jstar::jstar;
pub use theorem3::{theorem3_bound, Theorem3Case};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("coefficient vector has the wrong shape: {0}")]
    Shape(String),
    #[error("coefficient vector is infeasible: {0}")]
    Infeasible(Infeasibility),
    #[error(transparent)]
    Core(#[from] pirtrade_core::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
