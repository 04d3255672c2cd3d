//! Export of every explicit bound as a halfplane.

use pirtrade_core::{ExactRational, HalfPlane, SystemParams};

use crate::explicit::dunderline_bound;
use crate::theorem3::theorem3_bound;
use crate::{Error, Result};

/// `(N - m) alpha + m beta >= dunderline_B(N, K, m)` for `m in [1:N]`,
/// `alpha + m_k beta >= theorem3_bound(N, K, k)` for `k in [1:K]`, and the
/// storage cut `alpha >= K/N`, in that order.
pub fn lower_bound_halfplanes(n: u32, k: u32) -> Result<Vec<HalfPlane>> {
    if n < 2 || k < 2 {
        return Err(Error::InvalidArgs(format!(
            "need N >= 2 and K >= 2, got N = {n}, K = {k}"
        )));
    }
    let mut out = Vec::with_capacity((n + k + 1) as usize);
    for m in 1..=n {
        out.push(dunderline_bound(n, k, m)?.to_halfplane()?);
    }
    for idx in 1..=k {
        out.push(theorem3_bound(n, k, idx)?.to_halfplane()?);
    }
    let alpha0 = SystemParams::new(n, k)?.alpha0();
    out.push(HalfPlane::new(ExactRational::one(), ExactRational::zero(), alpha0, "alpha0")?);
    Ok(out)
}
