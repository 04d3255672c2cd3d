//! Executable PIR codes over GF(2): the two-server code that stores only
//! even-parity sums on its second server (construction A), the grouped
//! parity code for `K = T (N - 1)` (construction B), and round-robin
//! composition onto more servers.
//!
//! Every protocol can be checked exhaustively for correctness, for privacy
//! (exact per-server query distributions), and for its exact costs.

mod combo;
mod constructions;
mod cost;
mod dump;
mod gf2;
mod protocol;
mod verify;

pub use combo::{SymbolId, SymbolNames, XorCombo};
pub use constructions::{build_construction_a, build_construction_b, cyclic_compose};
pub use cost::{expected_lengths, expected_lengths_enumerated, measure_costs, measure_costs_enumerated, CostReport};
pub use dump::{dump_tables, retrieval_rows, MAX_DUMP_KEYS};
pub use gf2::{BitVec, SpanSolver};
pub use protocol::{
    for_each_key, AnswerRecord, AnswerSlot, LinearDecoder, PirProtocol, QueryPlan, StorageLayout,
};
pub use verify::{
    product_distribution, query_distribution, query_factors, verify_correctness,
    verify_correctness_linear, verify_privacy, verify_privacy_enumerated, QueryDistribution,
    DEFAULT_BUDGET,
};

use pirtrade_core::ExactRational;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid protocol parameters: {0}")]
    InvalidParams(String),
    #[error("{what} needs {needed} enumerations, budget is {budget}")]
    BudgetExceeded {
        what: String,
        needed: String,
        budget: u64,
    },
    #[error("server {server} cannot form {combo} from its storage")]
    Unanswerable { server: usize, combo: String },
    #[error("download cost depends on the target: {first} for W1, {other} for W{k}")]
    CostMismatch {
        k: u32,
        first: ExactRational,
        other: ExactRational,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
