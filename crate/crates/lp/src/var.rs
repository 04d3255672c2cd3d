//! Variables of the relaxed LP.

use std::fmt;

use serde::Serialize;

/// `X` houses `x_k(a, b)`, `Y` houses `y_k(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    X,
    Y,
}

/// One symmetrized entropy term: side, message index `k` (one-based),
/// stored-set size `a` and answer-set size `b`, with `a + b <= N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VarId {
    pub side: Side,
    pub k: u32,
    pub a: u32,
    pub b: u32,
}

impl VarId {
    pub fn x(k: u32, a: u32, b: u32) -> Self {
        Self { side: Side::X, k, a, b }
    }

    pub fn y(k: u32, a: u32, b: u32) -> Self {
        Self { side: Side::Y, k, a, b }
    }

    pub fn on(side: Side, k: u32, a: u32, b: u32) -> Self {
        Self { side, k, a, b }
    }

    /// `x_K(a, b)`, pinned to zero.
    pub fn is_boundary(&self, k_total: u32) -> bool {
        self.side == Side::X && self.k == k_total
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::X => 'x',
            Side::Y => 'y',
        };
        write!(f, "{s}_{}_{}_{}", self.k, self.a, self.b)
    }
}

/// Every variable for `(N, K)`, boundary ones included, in a fixed order.
pub fn variable_census(n: u32, k_total: u32) -> Vec<VarId> {
    let mut out = Vec::new();
    for side in [Side::X, Side::Y] {
        for k in 1..=k_total {
            for a in 0..=n {
                for b in 0..=n - a {
                    out.push(VarId::on(side, k, a, b));
                }
            }
        }
    }
    out
}
