//! Exhaustive correctness checks and exact query distributions.

use std::collections::BTreeMap;

use pirtrade_core::ExactRational;

use crate::combo::{SymbolId, XorCombo};
use crate::gf2::{symbol_index, BitVec};
use crate::protocol::{for_each_key, placed, relabel, PirProtocol, QueryPlan, Responder};
use crate::{Error, Result};

/// Default cap on enumerated (assignment, key, target) triples.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Exact distribution of the query a server sees: combinations per slot,
/// with probabilities.
pub type QueryDistribution = BTreeMap<Vec<XorCombo>, ExactRational>;

fn ensure_within(needed: Option<u128>, budget: u64, what: &str) -> Result<()> {
    match needed {
        Some(n) if n <= u128::from(budget) => Ok(()),
        _ => Err(Error::BudgetExceeded {
            what: what.to_string(),
            needed: needed.map_or_else(|| "more than 2^128".to_string(), |n| n.to_string()),
            budget,
        }),
    }
}

/// Decodes `W_k` for every message assignment in `GF(2)^{K L}`, every key
/// and every `k`, answering each query from the server's stored content.
///
/// Returns `Ok(false)` on the first wrong output or unanswerable query.
pub fn verify_correctness(p: &PirProtocol, budget: u64) -> Result<bool> {
    let symbols = p.symbol_count();
    let assignments = 1u128.checked_shl(symbols).filter(|_| symbols < 128);
    let needed = assignments
        .and_then(|a| a.checked_mul(p.key_space_size()?))
        .and_then(|x| x.checked_mul(u128::from(p.k)));
    ensure_within(needed, budget, "exhaustive correctness check")?;

    let responder = Responder::new(p);
    let width = symbols as usize;
    let mut ok = true;
    for_each_key(&p.key_radices(), |key| {
        for k in 0..p.k {
            let plan = match responder.plan(k, key) {
                Ok(plan) => plan,
                Err(_) => {
                    ok = false;
                    return false;
                }
            };
            for w in 0..(1u64 << symbols) {
                let mut assignment = BitVec::zeros(width);
                for i in (0..width).filter(|i| w >> i & 1 == 1) {
                    assignment.flip(i);
                }
                let (_, decoded) = responder.run(&plan, &assignment, &p.decoder);
                let wanted = (0..p.message_len)
                    .map(|part| assignment.get(symbol_index(SymbolId::new(k, part), p.message_len)));
                if decoded.len() != p.message_len as usize || !decoded.iter().copied().eq(wanted) {
                    ok = false;
                    return false;
                }
            }
        }
        true
    })
    ;
    Ok(ok)
}

/// Correctness for all assignments at once: every query lies in the span
/// of its server's storage, and the decoder's XOR of the queried
/// combinations is exactly the desired symbol. Enumerates keys and targets
/// only.
pub fn verify_correctness_linear(p: &PirProtocol, budget: u64) -> Result<bool> {
    let needed = p.key_space_size().and_then(|x| x.checked_mul(u128::from(p.k)));
    ensure_within(needed, budget, "linear correctness check")?;
    let responder = Responder::new(p);
    let mut ok = true;
    for_each_key(&p.key_radices(), |key| {
        for k in 0..p.k {
            let Ok(plan) = responder.plan(k, key) else {
                ok = false;
                return false;
            };
            for (part, slots) in p.decoder.parts.iter().enumerate() {
                let mut got = XorCombo::empty();
                for s in slots {
                    got.xor_assign(&plan[s.server][s.slot].0);
                }
                if got != XorCombo::single(SymbolId::new(k, part as u32)) {
                    ok = false;
                    return false;
                }
            }
        }
        true
    });
    Ok(ok)
}

/// Distribution of server `server`'s query for target `k`, as a list of
/// independent factors whose concatenation is the full query.
pub fn query_factors(p: &PirProtocol, server: usize, k: u32) -> Result<Vec<QueryDistribution>> {
    p.check_target(k)?;
    match &p.plan {
        QueryPlan::Table { key_count, queries } => {
            let mut dist = QueryDistribution::new();
            let w = ExactRational::ratio(1, *key_count as u64);
            for row in &queries[k as usize] {
                *dist.entry(vec![row[server].clone()]).or_insert_with(ExactRational::zero) += &w;
            }
            Ok(vec![dist])
        }
        QueryPlan::Cyclic { base, m } => {
            let mut out = Vec::new();
            for j in 0..*m {
                for i in 0..base.n {
                    if placed(j, i, *m) != server {
                        continue;
                    }
                    for f in query_factors(base, i as usize, k)? {
                        out.push(
                            f.into_iter()
                                .map(|(q, pr)| {
                                    (q.iter().map(|c| relabel(c, j, base.message_len)).collect(), pr)
                                })
                                .collect(),
                        );
                    }
                }
            }
            Ok(out)
        }
    }
}

/// The joint query distribution at `server` by enumerating every key.
pub fn query_distribution(
    p: &PirProtocol,
    server: usize,
    k: u32,
    budget: u64,
) -> Result<QueryDistribution> {
    p.check_target(k)?;
    let size = p.key_space_size();
    ensure_within(size, budget, "query distribution enumeration")?;
    let w = ExactRational::ratio(1, size.expect("checked") as u64);
    let mut dist = QueryDistribution::new();
    for_each_key(&p.key_radices(), |key| {
        let q = p.queries(k, key).swap_remove(server);
        *dist.entry(q).or_insert_with(ExactRational::zero) += &w;
        true
    });
    Ok(dist)
}

/// Joint distribution of independent factors (concatenating query values).
pub fn product_distribution(factors: &[QueryDistribution]) -> QueryDistribution {
    factors.iter().fold(
        QueryDistribution::from([(Vec::new(), ExactRational::one())]),
        |acc, f| {
            let mut next = QueryDistribution::new();
            for (qa, pa) in &acc {
                for (qb, pb) in f {
                    let mut q = qa.clone();
                    q.extend(qb.iter().cloned());
                    *next.entry(q).or_insert_with(ExactRational::zero) += pa * pb;
                }
            }
            next
        },
    )
}

/// True iff every server's query distribution is the same for all targets.
///
/// Composed protocols are compared factor by factor: the factors are
/// independent, so the joint laws agree exactly when every factor does.
pub fn verify_privacy(p: &PirProtocol) -> Result<bool> {
    for server in 0..p.n as usize {
        let first = query_factors(p, server, 0)?;
        for k in 1..p.k {
            if query_factors(p, server, k)? != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// [`verify_privacy`] by enumerating the full key space.
pub fn verify_privacy_enumerated(p: &PirProtocol, budget: u64) -> Result<bool> {
    for server in 0..p.n as usize {
        let first = query_distribution(p, server, 0, budget)?;
        for k in 1..p.k {
            if query_distribution(p, server, k, budget)? != first {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_construction_a, build_construction_b, cyclic_compose};
    use pirtrade_core::q;

    #[test]
    fn a3_correct_and_private() {
        let p = build_construction_a(3).unwrap();
        assert!(verify_correctness(&p, DEFAULT_BUDGET).unwrap());
        assert!(verify_correctness_linear(&p, DEFAULT_BUDGET).unwrap());
        assert!(verify_privacy(&p).unwrap());
        // Server 1 sees the four odd-parity combinations, each with probability 1/4.
        let d = &query_factors(&p, 0, 2).unwrap()[0];
        assert_eq!(d.len(), 4);
        assert!(d.iter().all(|(qv, pr)| qv[0].len() % 2 == 1 && *pr == q(1, 4)));
        let d = &query_factors(&p, 1, 0).unwrap()[0];
        assert!(d.keys().all(|qv| qv[0].len() % 2 == 0));
    }

    #[test]
    fn dropping_a_stored_parity_breaks_decoding() {
        let mut p = build_construction_a(3).unwrap();
        p.storage.servers[1].retain(|c| *c != XorCombo::of_messages([0, 2]));
        assert!(!verify_correctness(&p, DEFAULT_BUDGET).unwrap());
        assert!(!verify_correctness_linear(&p, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn b_private_uniform() {
        let p = build_construction_b(3, 2).unwrap();
        assert!(verify_correctness(&p, DEFAULT_BUDGET).unwrap());
        assert!(verify_privacy(&p).unwrap());
        for server in 0..3 {
            let d = &query_factors(&p, server, 1).unwrap()[0];
            assert_eq!(d.len(), 4);
        }
    }

    #[test]
    fn factors_match_enumeration() {
        let base = build_construction_a(2).unwrap();
        let c = cyclic_compose(&base, 3).unwrap();
        for server in 0..3 {
            for k in 0..2 {
                let joint = query_distribution(&c, server, k, DEFAULT_BUDGET).unwrap();
                let prod = product_distribution(&query_factors(&c, server, k).unwrap());
                assert_eq!(joint, prod);
            }
        }
        assert!(verify_privacy_enumerated(&c, DEFAULT_BUDGET).unwrap());
        assert!(verify_correctness(&c, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let p = build_construction_a(4).unwrap();
        let c = cyclic_compose(&p, 7).unwrap();
        assert!(matches!(
            verify_correctness(&c, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
