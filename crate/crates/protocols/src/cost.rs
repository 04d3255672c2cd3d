//! Exact storage and expected download costs.

use pirtrade_core::ExactRational;
use serde::Serialize;

use crate::protocol::{for_each_key, placed, PirProtocol, QueryPlan};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostReport {
    pub alpha_bar: ExactRational,
    pub beta_bar: ExactRational,
    /// Stored symbols per server.
    pub storage_symbols: Vec<usize>,
    /// Expected downloaded symbols per server when retrieving the first message.
    pub expected_download: Vec<ExactRational>,
}

/// `E[l_n]` for target `k`, from the plan's structure: table rows are
/// averaged over the uniform key; compositions add the expectations of the
/// copies hosted on each server.
pub fn expected_lengths(p: &PirProtocol, k: u32) -> Result<Vec<ExactRational>> {
    p.check_target(k)?;
    match &p.plan {
        QueryPlan::Table { key_count, queries } => {
            let mut out = vec![ExactRational::zero(); p.n as usize];
            let w = ExactRational::ratio(1, *key_count as u64);
            for row in &queries[k as usize] {
                for (server, c) in row.iter().enumerate() {
                    if !c.is_empty() {
                        out[server] += &w;
                    }
                }
            }
            Ok(out)
        }
        QueryPlan::Cyclic { base, m } => {
            let inner = expected_lengths(base, k)?;
            let mut out = vec![ExactRational::zero(); *m as usize];
            for j in 0..*m {
                for i in 0..base.n {
                    out[placed(j, i, *m)] += &inner[i as usize];
                }
            }
            Ok(out)
        }
    }
}

/// `E[l_n]` by walking the whole key space.
pub fn expected_lengths_enumerated(p: &PirProtocol, k: u32, budget: u64) -> Result<Vec<ExactRational>> {
    p.check_target(k)?;
    let size = p
        .key_space_size()
        .filter(|s| *s <= u128::from(budget))
        .ok_or_else(|| Error::BudgetExceeded {
            what: "cost enumeration".to_string(),
            needed: p
                .key_space_size()
                .map_or_else(|| "more than 2^128".to_string(), |s| s.to_string()),
            budget,
        })?;
    let mut counts = vec![0u64; p.n as usize];
    for_each_key(&p.key_radices(), |key| {
        for (server, q) in p.queries(k, key).iter().enumerate() {
            counts[server] += q.iter().filter(|c| !c.is_empty()).count() as u64;
        }
        true
    });
    Ok(counts
        .into_iter()
        .map(|c| ExactRational::ratio(c, size as u64))
        .collect())
}

fn report(
    p: &PirProtocol,
    mut lengths: impl FnMut(u32) -> Result<Vec<ExactRational>>,
) -> Result<CostReport> {
    let scale = ExactRational::from(u64::from(p.n) * u64::from(p.message_len));
    let alpha_bar = ExactRational::from(p.storage.total_symbols()) / &scale;
    let first = lengths(0)?;
    let beta_bar = first.iter().sum::<ExactRational>() / &scale;
    for k in 1..p.k {
        let beta_k = lengths(k)?.iter().sum::<ExactRational>() / &scale;
        if beta_k != beta_bar {
            return Err(Error::CostMismatch {
                k: k + 1,
                first: beta_bar,
                other: beta_k,
            });
        }
    }
    Ok(CostReport {
        alpha_bar,
        beta_bar,
        storage_symbols: p.storage.servers.iter().map(Vec::len).collect(),
        expected_download: first,
    })
}

/// `alpha = (1/(N L)) sum_n |S_n|` and `beta = (1/(N L)) sum_n E[l_n]`,
/// failing if `beta` depends on the requested message.
pub fn measure_costs(p: &PirProtocol) -> Result<CostReport> {
    report(p, |k| expected_lengths(p, k))
}

/// [`measure_costs`] with every key enumerated explicitly.
pub fn measure_costs_enumerated(p: &PirProtocol, budget: u64) -> Result<CostReport> {
    report(p, |k| expected_lengths_enumerated(p, k, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::XorCombo;
    use crate::constructions::{build_construction_a, build_construction_b, cyclic_compose};
    use crate::verify::DEFAULT_BUDGET;
    use pirtrade_core::q;

    fn costs(p: &PirProtocol) -> (ExactRational, ExactRational) {
        let r = measure_costs(p).unwrap();
        (r.alpha_bar, r.beta_bar)
    }

    #[test]
    fn base_examples() {
        assert_eq!(costs(&build_construction_a(3).unwrap()), (q(5, 2), q(7, 8)));
        assert_eq!(costs(&build_construction_a(1).unwrap()), (q(1, 2), q(1, 2)));
        assert_eq!(costs(&build_construction_b(3, 2).unwrap()), (q(2, 1), q(3, 4)));
        assert_eq!(costs(&build_construction_b(3, 1).unwrap()), (q(1, 1), q(1, 2)));
    }

    #[test]
    fn composed_examples() {
        let a2 = build_construction_a(2).unwrap();
        let c = cyclic_compose(&a2, 3).unwrap();
        assert_eq!(costs(&c), (q(1, 1), q(1, 2)));
        let e = measure_costs_enumerated(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!((e.alpha_bar, e.beta_bar), (q(1, 1), q(1, 2)));
        assert_eq!(costs(&cyclic_compose(&a2, 2).unwrap()), costs(&a2));

        let b = build_construction_b(3, 2).unwrap();
        assert_eq!(costs(&cyclic_compose(&b, 4).unwrap()), (q(3, 2), q(9, 16)));
        let a4 = build_construction_a(4).unwrap();
        assert_eq!(costs(&cyclic_compose(&a4, 7).unwrap()), (q(1, 1), q(15, 56)));
    }

    #[test]
    fn target_dependent_download_is_rejected() {
        let mut p = build_construction_a(2).unwrap();
        if let QueryPlan::Table { queries, .. } = &mut p.plan {
            for row in &mut queries[1] {
                row[1] = XorCombo::empty();
            }
        }
        assert!(matches!(measure_costs(&p), Err(Error::CostMismatch { k: 2, .. })));
    }
}
