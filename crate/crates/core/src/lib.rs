//! Exact storage/download tradeoff computations for private information
//! retrieval systems.
//!
//! Every value is an [`ExactRational`]; no floating point enters any cost,
//! bound or curve computation. The crate provides the closed-form achievable
//! point families, the cyclic (round-robin) point transform, lower convex
//! hulls of achievable points, lower-bound envelopes assembled from
//! halfplanes, and pointwise upper/lower ratio curves.

pub mod curve;
pub mod envelope;
pub mod families;
pub mod hull;
pub mod params;
pub mod point;
pub mod rational;
pub mod ratio;

pub use curve::{CurveVertex, EnvelopeCurve};
pub use envelope::{alpha_grid, halfplane_envelope, HalfPlane};
pub use families::{
    cyclic_transform_point, gmds_points, mds_points, prop3_points, sun_jafar_point,
    two_approx_check, uncoded_points, TwoApproxReport,
};
pub use hull::lower_hull;
pub use params::{baseline_costs, beta0, SystemParams};
pub use point::{PointLabel, TradeoffPoint};
pub use rational::{q, ExactRational};
pub use ratio::{ratio_curve, RatioCurve};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid system parameters: {0}")]
    InvalidParams(String),
    #[error("cannot parse rational from {0:?}")]
    ParseRational(String),
    #[error("tradeoff point must have positive coordinates, got ({alpha}, {beta})")]
    NonPositivePoint {
        alpha: ExactRational,
        beta: ExactRational,
    },
    #[error("cyclic transform needs M >= base N (base N = {base_n}, M = {m})")]
    ServersShrink { base_n: u32, m: u32 },
    #[error("invalid halfplane: {0}")]
    InvalidHalfPlane(String),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("grid must have at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("empty alpha domain [{lo}, {hi}]")]
    EmptyDomain { lo: ExactRational, hi: ExactRational },
    #[error("lower curve is not strictly positive at alpha = {0}")]
    NonPositiveLower(ExactRational),
}

pub type Result<T> = std::result::Result<T, Error>;
