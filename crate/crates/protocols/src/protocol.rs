//! Protocol data: what each server stores, which combination each server
//! is asked for, and how the user combines the answers.

use serde::Serialize;

use crate::combo::{SymbolId, XorCombo};
use crate::gf2::{combo_bits, BitVec, SpanSolver};
use crate::{Error, Result};

/// Per-server stored combinations; each entry occupies one symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StorageLayout {
    pub servers: Vec<Vec<XorCombo>>,
}

impl StorageLayout {
    pub fn symbols(&self, server: usize) -> usize {
        self.servers[server].len()
    }

    pub fn total_symbols(&self) -> usize {
        self.servers.iter().map(Vec::len).sum()
    }
}

/// Position of one answer symbol: the `slot`-th combination returned by `server`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AnswerSlot {
    pub server: usize,
    pub slot: usize,
}

/// Symbol `p` of the desired message is the XOR of the answers in `parts[p]`,
/// for every target and key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinearDecoder {
    pub parts: Vec<Vec<AnswerSlot>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryPlan {
    /// `queries[k][key][server]`: one combination per server, keys uniform
    /// over `0..key_count`.
    Table {
        key_count: usize,
        queries: Vec<Vec<Vec<XorCombo>>>,
    },
    /// `m` independent copies of `base` on sub-messages, copy `j` placed on
    /// servers `j, j + 1, ..., j + N - 1 (mod m)`.
    Cyclic { base: Box<PirProtocol>, m: u32 },
}

/// A retrieval scheme over GF(2) with `n` servers, `k` messages of
/// `message_len` symbols each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PirProtocol {
    pub name: String,
    pub n: u32,
    pub k: u32,
    pub message_len: u32,
    pub storage: StorageLayout,
    pub plan: QueryPlan,
    pub decoder: LinearDecoder,
}

/// What the servers sent back for one retrieval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnswerRecord {
    pub symbols: Vec<Vec<bool>>,
    /// Downloaded symbols per server; empty combinations cost nothing.
    pub lengths: Vec<u32>,
}

/// Server of base position `i` in sub-code `j` of an `m`-server composition.
pub(crate) fn placed(j: u32, i: u32, m: u32) -> usize {
    ((j + i) % m) as usize
}

pub(crate) fn relabel(c: &XorCombo, j: u32, base_len: u32) -> XorCombo {
    c.map_symbols(|s| SymbolId::new(s.message, j * base_len + s.part))
}

impl PirProtocol {
    /// Radices of the key digits; the key space is their product.
    pub fn key_radices(&self) -> Vec<usize> {
        match &self.plan {
            QueryPlan::Table { key_count, .. } => vec![*key_count],
            QueryPlan::Cyclic { base, m } => {
                let r = base.key_radices();
                (0..*m).flat_map(|_| r.iter().copied()).collect()
            }
        }
    }

    /// Number of keys, `None` past `u128`.
    pub fn key_space_size(&self) -> Option<u128> {
        self.key_radices()
            .iter()
            .try_fold(1u128, |acc, r| acc.checked_mul(*r as u128))
    }

    /// Number of combinations each server returns per retrieval.
    pub fn slots_per_server(&self) -> Vec<usize> {
        match &self.plan {
            QueryPlan::Table { .. } => vec![1; self.n as usize],
            QueryPlan::Cyclic { base, m } => {
                let b = base.slots_per_server();
                let mut out = vec![0; *m as usize];
                for j in 0..*m {
                    for i in 0..base.n {
                        out[placed(j, i, *m)] += b[i as usize];
                    }
                }
                out
            }
        }
    }

    /// Queries for target `k` (zero-based) under `key`, per server.
    pub fn queries(&self, k: u32, key: &[usize]) -> Vec<Vec<XorCombo>> {
        match &self.plan {
            QueryPlan::Table { queries, .. } => queries[k as usize][key[0]]
                .iter()
                .map(|c| vec![c.clone()])
                .collect(),
            QueryPlan::Cyclic { base, m } => {
                let arity = base.key_radices().len();
                let mut out = vec![Vec::new(); *m as usize];
                for j in 0..*m {
                    let sub = &key[j as usize * arity..(j as usize + 1) * arity];
                    for (i, q) in base.queries(k, sub).into_iter().enumerate() {
                        let dst = &mut out[placed(j, i as u32, *m)];
                        dst.extend(q.iter().map(|c| relabel(c, j, base.message_len)));
                    }
                }
                out
            }
        }
    }

    pub fn symbol_count(&self) -> u32 {
        self.k * self.message_len
    }

    pub(crate) fn check_target(&self, k: u32) -> Result<()> {
        if k >= self.k {
            return Err(Error::InvalidParams(format!(
                "target message {} outside [1:{}]",
                k + 1,
                self.k
            )));
        }
        Ok(())
    }

    /// Runs one retrieval of message `k` under `key` with message content
    /// `assignment` (bit `i` is symbol `i` in message-major order).
    ///
    /// Fails with [`Error::Unanswerable`] if some server cannot form its
    /// query from what it stores.
    pub fn retrieve(
        &self,
        k: u32,
        key: &[usize],
        assignment: &BitVec,
    ) -> Result<(AnswerRecord, Vec<bool>)> {
        self.check_target(k)?;
        let responder = Responder::new(self);
        let plan = responder.plan(k, key)?;
        Ok(responder.run(&plan, assignment, &self.decoder))
    }
}

/// Per-server span solvers over the stored combinations.
pub(crate) struct Responder<'a> {
    proto: &'a PirProtocol,
    stored: Vec<Vec<BitVec>>,
    solvers: Vec<SpanSolver>,
}

/// For each server and slot: the combination asked for and which stored
/// entries sum to it.
pub(crate) type ResponsePlan = Vec<Vec<(XorCombo, Vec<usize>)>>;

impl<'a> Responder<'a> {
    pub fn new(proto: &'a PirProtocol) -> Self {
        let stored: Vec<Vec<BitVec>> = proto
            .storage
            .servers
            .iter()
            .map(|s| {
                s.iter()
                    .map(|c| combo_bits(c, proto.k, proto.message_len))
                    .collect()
            })
            .collect();
        let solvers = stored.iter().map(|s| SpanSolver::new(s)).collect();
        Self {
            proto,
            stored,
            solvers,
        }
    }

    pub fn plan(&self, k: u32, key: &[usize]) -> Result<ResponsePlan> {
        let p = self.proto;
        p.queries(k, key)
            .into_iter()
            .enumerate()
            .map(|(server, slots)| {
                slots
                    .into_iter()
                    .map(|c| {
                        let target = combo_bits(&c, p.k, p.message_len);
                        match self.solvers[server].solve(&target) {
                            Some(rep) => Ok((c, rep)),
                            None => Err(Error::Unanswerable {
                                server: server + 1,
                                combo: c.to_string(),
                            }),
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Stored values under `assignment`, then answers and the decoder output.
    pub fn run(
        &self,
        plan: &ResponsePlan,
        assignment: &BitVec,
        decoder: &LinearDecoder,
    ) -> (AnswerRecord, Vec<bool>) {
        let mut symbols = Vec::with_capacity(plan.len());
        let mut lengths = Vec::with_capacity(plan.len());
        for (server, slots) in plan.iter().enumerate() {
            let values: Vec<bool> = self.stored[server].iter().map(|s| s.dot(assignment)).collect();
            symbols.push(
                slots
                    .iter()
                    .map(|(_, rep)| rep.iter().fold(false, |acc, &i| acc ^ values[i]))
                    .collect::<Vec<_>>(),
            );
            lengths.push(slots.iter().filter(|(c, _)| !c.is_empty()).count() as u32);
        }
        let decoded = decoder
            .parts
            .iter()
            .map(|slots| {
                slots
                    .iter()
                    .fold(false, |acc, s| acc ^ symbols[s.server][s.slot])
            })
            .collect();
        (AnswerRecord { symbols, lengths }, decoded)
    }
}

/// Calls `f` on every key of the given radices, in lexicographic order.
pub fn for_each_key(radices: &[usize], mut f: impl FnMut(&[usize]) -> bool) {
    if radices.contains(&0) {
        return;
    }
    let mut key = vec![0; radices.len()];
    loop {
        if !f(&key) {
            return;
        }
        let mut pos = radices.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            key[pos] += 1;
            if key[pos] < radices[pos] {
                break;
            }
            key[pos] = 0;
        }
    }
}
