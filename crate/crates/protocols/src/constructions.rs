//! The two base codes and round-robin composition.

use crate::combo::XorCombo;
use crate::protocol::{
    placed, relabel, AnswerSlot, LinearDecoder, PirProtocol, QueryPlan, StorageLayout,
};
use crate::{Error, Result};

fn bits_of(key: usize, width: u32) -> impl Iterator<Item = u32> {
    (0..width).filter(move |j| key >> j & 1 == 1)
}

fn xor_all(n: u32) -> LinearDecoder {
    LinearDecoder {
        parts: vec![(0..n as usize).map(|server| AnswerSlot { server, slot: 0 }).collect()],
    }
}

/// Two servers, `K` one-symbol messages. Server 1 stores every message and
/// server 2 stores `W_1 ^ W_k` for `k in [2:K]`, so it can form exactly the
/// even-parity combinations.
///
/// For a uniform `v in {0,1}^K` the user asks for `X = sum_{v_j = 1} W_j`
/// and `X ^ W_k`; whichever of the two has even parity goes to server 2.
pub fn build_construction_a(k: u32) -> Result<PirProtocol> {
    if k == 0 || k > 20 {
        return Err(Error::InvalidParams(format!(
            "construction A needs K in [1:20], got {k}"
        )));
    }
    let server1 = (0..k).map(|m| XorCombo::of_messages([m])).collect();
    let server2 = (1..k).map(|m| XorCombo::of_messages([0, m])).collect();
    let key_count = 1usize << k;
    let queries = (0..k)
        .map(|target| {
            (0..key_count)
                .map(|key| {
                    let x = XorCombo::of_messages(bits_of(key, k));
                    let y = x.xor(&XorCombo::of_messages([target]));
                    if x.len().is_multiple_of(2) {
                        vec![y, x]
                    } else {
                        vec![x, y]
                    }
                })
                .collect()
        })
        .collect();
    Ok(PirProtocol {
        name: format!("A(K={k})"),
        n: 2,
        k,
        message_len: 1,
        storage: StorageLayout {
            servers: vec![server1, server2],
        },
        plan: QueryPlan::Table { key_count, queries },
        decoder: xor_all(2),
    })
}

/// `N` servers and `K = T (N - 1)` one-symbol messages in `N - 1` groups of
/// `T`. Server `n < N` stores group `n`; server `N` stores the `T`
/// position-wise parities across groups.
///
/// To fetch position `b` of group `a`, draw `v in {0,1}^T` and let `v'` be
/// `v` with bit `b` flipped; server `a` returns its `v`-combination, every
/// other server its `v'`-combination, and the user XORs all answers.
pub fn build_construction_b(n: u32, t: u32) -> Result<PirProtocol> {
    if n < 2 || t == 0 || t > 16 {
        return Err(Error::InvalidParams(format!(
            "construction B needs N >= 2 and T in [1:16], got N = {n}, T = {t}"
        )));
    }
    let groups = n - 1;
    let k = t * groups;
    let group_combo = |g: u32, key: usize| XorCombo::of_messages(bits_of(key, t).map(|i| t * g + i));
    let parity_combo = |key: usize| {
        XorCombo::of_messages(bits_of(key, t).flat_map(|i| (0..groups).map(move |g| t * g + i)))
    };

    let mut servers: Vec<Vec<XorCombo>> = (0..groups)
        .map(|g| (0..t).map(|i| XorCombo::of_messages([t * g + i])).collect())
        .collect();
    servers.push(
        (0..t)
            .map(|i| XorCombo::of_messages((0..groups).map(|g| t * g + i)))
            .collect(),
    );

    let key_count = 1usize << t;
    let queries = (0..k)
        .map(|target| {
            let (a, b) = (target / t, target % t);
            (0..key_count)
                .map(|v| {
                    let flipped = v ^ (1 << b);
                    let mut row: Vec<XorCombo> = (0..groups)
                        .map(|g| group_combo(g, if g == a { v } else { flipped }))
                        .collect();
                    row.push(parity_combo(flipped));
                    row
                })
                .collect()
        })
        .collect();

    Ok(PirProtocol {
        name: format!("B(N={n},T={t})"),
        n,
        k,
        message_len: 1,
        storage: StorageLayout { servers },
        plan: QueryPlan::Table { key_count, queries },
        decoder: xor_all(n),
    })
}

/// Runs `m` copies of `base` round-robin: each message is split into `m`
/// sub-messages, copy `j` serves sub-message `j` on servers
/// `j + 1, ..., j + N (mod m)`, and keys are drawn independently per copy.
pub fn cyclic_compose(base: &PirProtocol, m: u32) -> Result<PirProtocol> {
    if m < base.n {
        return Err(Error::InvalidParams(format!(
            "composition needs M >= N = {}, got M = {m}",
            base.n
        )));
    }
    let base_len = base.message_len;
    let base_slots = base.slots_per_server();
    let mut servers = vec![Vec::new(); m as usize];
    let mut used_slots = vec![0usize; m as usize];
    let mut parts = vec![Vec::new(); (m * base_len) as usize];
    for j in 0..m {
        let offsets: Vec<usize> = (0..base.n).map(|i| used_slots[placed(j, i, m)]).collect();
        for i in 0..base.n {
            let dst = placed(j, i, m);
            servers[dst].extend(base.storage.servers[i as usize].iter().map(|c| relabel(c, j, base_len)));
            used_slots[dst] += base_slots[i as usize];
        }
        for (p, slots) in base.decoder.parts.iter().enumerate() {
            parts[(j * base_len) as usize + p] = slots
                .iter()
                .map(|s| AnswerSlot {
                    server: placed(j, s.server as u32, m),
                    slot: offsets[s.server] + s.slot,
                })
                .collect();
        }
    }
    Ok(PirProtocol {
        name: format!("cyclic(M={m})<{}>", base.name),
        n: m,
        k: base.k,
        message_len: m * base_len,
        storage: StorageLayout { servers },
        plan: QueryPlan::Cyclic {
            base: Box::new(base.clone()),
            m,
        },
        decoder: LinearDecoder { parts },
    })
}
