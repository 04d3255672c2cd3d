//! Closed-form achievable point families and the cyclic point transform.

use serde::Serialize;

use crate::{Error, ExactRational, PointLabel, Result, SystemParams, TradeoffPoint};

/// `sum_{i=0}^{terms-1} ratio^i`, summed directly.
fn geometric_sum(ratio: &ExactRational, terms: u32) -> ExactRational {
    let mut term = ExactRational::one();
    let mut total = ExactRational::zero();
    for _ in 0..terms {
        total += &term;
        term *= ratio;
    }
    total
}

fn point(alpha: ExactRational, beta: ExactRational, label: PointLabel) -> TradeoffPoint {
    // Every family below produces strictly positive costs for N, K >= 1.
    TradeoffPoint::new(alpha, beta, label).expect("family costs are positive")
}

/// MDS-coded PIR: `(K/T, (1/N) sum_{i<K} (T/N)^i)` for `T = 1..=N`.
pub fn mds_points(p: &SystemParams) -> Result<Vec<TradeoffPoint>> {
    p.require(2, 1)?;
    let (n, k) = (p.n, p.k);
    Ok((1..=n)
        .map(|t| {
            let alpha = ExactRational::ratio(k, t);
            let beta = geometric_sum(&ExactRational::ratio(t, n), k) / ExactRational::from(n);
            point(
                alpha,
                beta,
                PointLabel::new("mds", &[("N", n.into()), ("K", k.into()), ("T", t.into())]),
            )
        })
        .collect())
}

/// Uncoded storage PIR: `(KT/N, (1/N) sum_{i<K} T^-i)` for `T = 1..=N`.
pub fn uncoded_points(p: &SystemParams) -> Result<Vec<TradeoffPoint>> {
    p.require(2, 1)?;
    let (n, k) = (p.n, p.k);
    Ok((1..=n)
        .map(|t| {
            let alpha = ExactRational::ratio(k * t, n);
            let beta = geometric_sum(&ExactRational::ratio(1, t), k) / ExactRational::from(n);
            point(
                alpha,
                beta,
                PointLabel::new("uncoded", &[("N", n.into()), ("K", k.into()), ("T", t.into())]),
            )
        })
        .collect())
}

/// Generalized MDS PIR: `(K T2 / (N T1), (1/N) sum_{i<K} (T1/T2)^i)` for
/// every `1 <= T1 <= T2 <= N`, ordered by `T1` then `T2`.
pub fn gmds_points(p: &SystemParams) -> Result<Vec<TradeoffPoint>> {
    p.require(2, 1)?;
    let (n, k) = (p.n, p.k);
    let mut out = Vec::with_capacity((n * (n + 1) / 2) as usize);
    for t1 in 1..=n {
        for t2 in t1..=n {
            let alpha = ExactRational::ratio(k * t2, n * t1);
            let beta = geometric_sum(&ExactRational::ratio(t1, t2), k) / ExactRational::from(n);
            out.push(point(
                alpha,
                beta,
                PointLabel::new(
                    "gmds",
                    &[("N", n.into()), ("K", k.into()), ("T1", t1.into()), ("T2", t2.into())],
                ),
            ));
        }
    }
    Ok(out)
}

/// Points obtained by spreading Construction-A (two servers) and
/// Construction-B (`K/T + 1` servers) over all `N` servers round-robin:
///
/// * (a) `(2/N) (K - 1/2, (2^K - 1)/2^K)`
/// * (b) `((K/T + 1)/N) (T, (2^T - 1)/2^T)` for each divisor `T` of `K`
///   with `K/T + 1 <= N`, in increasing `T`.
pub fn prop3_points(p: &SystemParams) -> Result<Vec<TradeoffPoint>> {
    p.require(2, 2)?;
    let (n, k) = (p.n, p.k);
    let mut out = Vec::new();

    let scale = ExactRational::ratio(2, n);
    let alpha = &scale * (ExactRational::from(k) - ExactRational::ratio(1, 2));
    out.push(point(
        alpha,
        &scale * download_fraction(k),
        PointLabel::new("prop3a", &[("N", n.into()), ("K", k.into())]),
    ));

    for t in (1..=k).filter(|t| k % t == 0 && k / t < n) {
        let scale = ExactRational::ratio(k / t + 1, n);
        out.push(point(
            &scale * ExactRational::from(t),
            &scale * download_fraction(t),
            PointLabel::new("prop3b", &[("N", n.into()), ("K", k.into()), ("T", t.into())]),
        ));
    }
    Ok(out)
}

/// `(2^t - 1) / 2^t`
fn download_fraction(t: u32) -> ExactRational {
    let two_t = num_bigint::BigInt::from(1u8) << t as usize;
    ExactRational::ratio(&two_t - 1, two_t)
}

/// The full-replication capacity point `(K, sum_{i=1..K} N^-i)`.
pub fn sun_jafar_point(p: &SystemParams) -> TradeoffPoint {
    point(
        ExactRational::from(p.k),
        p.beta0(),
        PointLabel::new("sunjafar", &[("N", p.n.into()), ("K", p.k.into())]),
    )
}

/// Scales `pt` by `base_n / m`: the cost of running an `base_n`-server code
/// round-robin over `m >= base_n` servers.
pub fn cyclic_transform_point(pt: &TradeoffPoint, base_n: u32, m: u32) -> Result<TradeoffPoint> {
    if base_n == 0 || m < base_n {
        return Err(Error::ServersShrink { base_n, m });
    }
    if m == base_n {
        return Ok(pt.clone());
    }
    let scale = ExactRational::ratio(base_n, m);
    let label = PointLabel::new("cyclic", &[("baseN", base_n.into()), ("M", m.into())])
        .with_base(pt.label.clone());
    TradeoffPoint::new(&scale * &pt.alpha, &scale * &pt.beta, label)
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoApproxReport {
    pub point: TradeoffPoint,
    pub alpha0: ExactRational,
    pub beta0: ExactRational,
    /// The uncoded `T = 2` point has `alpha = 2 alpha0` and `beta < 2 beta0`.
    pub dominated_by_2x: bool,
}

/// Checks that `(2 alpha0, 2 beta0)` is dominated by the uncoded point at
/// `T = 2`.
pub fn two_approx_check(p: &SystemParams) -> Result<TwoApproxReport> {
    p.require(2, 1)?;
    let pt = uncoded_points(p)?.swap_remove(1);
    let (alpha0, beta0) = crate::baseline_costs(p);
    let two = ExactRational::from(2);
    let dominated_by_2x = pt.alpha == &two * &alpha0 && pt.beta < &two * &beta0;
    Ok(TwoApproxReport {
        point: pt,
        alpha0,
        beta0,
        dominated_by_2x,
    })
}
