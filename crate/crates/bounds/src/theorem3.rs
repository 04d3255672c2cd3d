//! Bounds on `alpha + m beta` for the weights `m = (N - 1) + (N - 2) N^(K - k)`.

use num_bigint::BigInt;
use pirtrade_core::ExactRational;
use serde::Serialize;

use crate::explicit::{BoundKind, BoundResult, BoundTable, Provenance};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem3Case {
    /// `2k <= K`
    LowerHalf,
    /// `2k > K`
    UpperHalf,
}

/// `B(k', N - 1)` terms are replaced by the double-underline values, which
/// keeps the bound valid because each enters with a nonnegative multiplier.
fn inner(table: &mut BoundTable, n: u32, kk: u32, mult: &ExactRational) -> Result<ExactRational> {
    assert!(
        !mult.is_negative(),
        "multiplier of B({kk}, N - 1) is negative: {mult}"
    );
    Ok(mult * (table.value(kk, n - 1)? - ExactRational::one()))
}

/// `alpha + m beta >= value` for `k in [1:K]`.
pub fn theorem3_bound(n: u32, k_total: u32, k: u32) -> Result<BoundResult> {
    if n < 2 || k_total < 2 || k == 0 || k > k_total {
        return Err(Error::InvalidArgs(format!(
            "need N >= 2, K >= 2 and k in [1:K], got N = {n}, K = {k_total}, k = {k}"
        )));
    }
    let r = |a: u64, b: u64| ExactRational::ratio(a, b);
    let nn = ExactRational::from(n);
    let pow = |e: u32| nn.pow(e as i32);
    let kk = k_total;
    let n2 = ExactRational::from(n - 2);
    let n1 = ExactRational::from(n - 1);
    let one = ExactRational::one();
    let mut table = BoundTable::new(n);

    // 1/N^{k-1} [ (N^{K-k} - 1)(N - 2) / (N(N - 1)) + (K - k) ], shared by both cases
    let shared = (&(pow(kk - k) - &one) * &n2 / (&nn * &n1) + ExactRational::from(kk - k))
        / pow(k - 1);

    let (case, value) = if 2 * k <= kk {
        let mut v = ExactRational::from(k)
            + pow(kk - 2 * k) * (pow(k) - &one) * &n2 / &n1
            + shared;
        let mult = &one - pow(k - 1).recip().expect("nonzero");
        v += inner(&mut table, n, kk - k + 1, &mult)?;
        (Theorem3Case::LowerHalf, v)
    } else {
        let e = 2 * k - kk;
        let mut v = ExactRational::from(kk - k)
            + &n2 * (pow(kk - k) - &one) / &n1
            + r(2, 1) * (pow(e) - &one) / pow(e)
            + shared;
        for i in 1..e {
            let mult = &n1 / pow(i);
            v += inner(&mut table, n, k - i + 1, &mult)?;
        }
        let mult = (pow(kk - k) - &one) / pow(k - 1);
        v += inner(&mut table, n, kk - k + 1, &mult)?;
        (Theorem3Case::UpperHalf, v)
    };

    let m = BigInt::from(n - 1) + BigInt::from(n - 2) * BigInt::from(n).pow(kk - k);
    Ok(BoundResult {
        kind: BoundKind::Theorem3,
        n,
        k: kk,
        target: Some(k),
        m,
        value,
        provenance: Provenance::Theorem3 { case },
    })
}
