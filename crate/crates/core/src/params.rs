use serde::Serialize;

use crate::{Error, ExactRational, Result};

/// Server count `n` and message count `k` of a PIR system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SystemParams {
    pub n: u32,
    pub k: u32,
}

impl SystemParams {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::InvalidParams(format!(
                "need N >= 1 and K >= 1, got N = {n}, K = {k}"
            )));
        }
        Ok(Self { n, k })
    }

    /// Fails unless `n >= min_n` and `k >= min_k`.
    pub fn require(&self, min_n: u32, min_k: u32) -> Result<()> {
        if self.n < min_n || self.k < min_k {
            return Err(Error::InvalidParams(format!(
                "need N >= {min_n} and K >= {min_k}, got N = {}, K = {}",
                self.n, self.k
            )));
        }
        Ok(())
    }

    /// Minimal storage `K/N`.
    pub fn alpha0(&self) -> ExactRational {
        ExactRational::ratio(self.k, self.n)
    }

    /// Minimal download `sum_{i=1..K} N^-i`.
    pub fn beta0(&self) -> ExactRational {
        beta0(self.n, self.k)
    }
}

/// `1/N + 1/N^2 + ... + 1/N^K`, summed term by term.
pub fn beta0(n: u32, k: u32) -> ExactRational {
    let step = ExactRational::ratio(1, n);
    let mut term = ExactRational::one();
    let mut total = ExactRational::zero();
    for _ in 0..k {
        term *= &step;
        total += &term;
    }
    total
}

/// The two extreme costs `(alpha0, beta0) = (K/N, sum_{i=1..K} N^-i)`.
pub fn baseline_costs(p: &SystemParams) -> (ExactRational, ExactRational) {
    (p.alpha0(), p.beta0())
}
