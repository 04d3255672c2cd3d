//! Text tables in the layout of the storage and retrieval tables: one
//! column per server, combinations written as `a^c`, `∅` for nothing.

use std::fmt::Write;

use pirtrade_core::ExactRational;

use crate::combo::{SymbolNames, XorCombo};
use crate::protocol::{for_each_key, PirProtocol};

/// Retrieval tables are only written when the key space is at most this large.
pub const MAX_DUMP_KEYS: u128 = 4096;

fn cell(slots: &[XorCombo], names: &SymbolNames) -> String {
    if slots.iter().all(XorCombo::is_empty) {
        return "∅".to_string();
    }
    slots
        .iter()
        .map(|c| c.render(names))
        .collect::<Vec<_>>()
        .join(", ")
}

fn write_table(out: &mut String, header: &[String], rows: &[Vec<String>]) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect::<Vec<_>>()
            .join(" | ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(header)).unwrap();
    writeln!(
        out,
        "{}",
        widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")
    )
    .unwrap();
    for row in rows {
        writeln!(out, "{}", line(row)).unwrap();
    }
}

/// Rows of the retrieval table for target `k`; keys that produce the same
/// queries are merged and their probabilities added.
pub fn retrieval_rows(p: &PirProtocol, k: u32) -> Vec<(ExactRational, Vec<Vec<XorCombo>>)> {
    let size = p.key_space_size().unwrap_or(u128::MAX);
    let w = ExactRational::ratio(1, size as u64);
    let mut rows: Vec<(ExactRational, Vec<Vec<XorCombo>>)> = Vec::new();
    for_each_key(&p.key_radices(), |key| {
        let q = p.queries(k, key);
        match rows.iter_mut().find(|(_, r)| *r == q) {
            Some((pr, _)) => *pr += &w,
            None => rows.push((w.clone(), q)),
        }
        true
    });
    rows
}

/// The storage table followed by one retrieval table per message.
pub fn dump_tables(p: &PirProtocol) -> String {
    let names = SymbolNames {
        messages: p.k,
        message_len: p.message_len,
    };
    let mut out = String::new();
    writeln!(out, "protocol {}: N={} K={} L={}", p.name, p.n, p.k, p.message_len).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "storage").unwrap();
    let header: Vec<String> = (1..=p.n).map(|n| format!("S{n}")).collect();
    let depth = p.storage.servers.iter().map(Vec::len).max().unwrap_or(0);
    let rows: Vec<Vec<String>> = (0..depth)
        .map(|r| {
            p.storage
                .servers
                .iter()
                .map(|s| s.get(r).map_or("∅".to_string(), |c| c.render(&names)))
                .collect()
        })
        .collect();
    write_table(&mut out, &header, &rows);

    let keys = p.key_space_size();
    if keys.is_none_or(|k| k > MAX_DUMP_KEYS) {
        writeln!(out).unwrap();
        writeln!(
            out,
            "retrieval tables omitted: key space of {} keys",
            keys.map_or_else(|| "more than 2^128".to_string(), |k| k.to_string())
        )
        .unwrap();
        return out;
    }
    let mut header = vec!["prob.".to_string()];
    header.extend((1..=p.n).map(|n| format!("server {n}")));
    for k in 0..p.k {
        writeln!(out).unwrap();
        let target = XorCombo::single(crate::combo::SymbolId::new(k, 0));
        let label = if p.message_len == 1 {
            format!(" ({})", target.render(&names))
        } else {
            String::new()
        };
        writeln!(out, "retrieval of W{}{label}", k + 1).unwrap();
        let rows: Vec<Vec<String>> = retrieval_rows(p, k)
            .into_iter()
            .map(|(pr, q)| {
                let mut row = vec![pr.to_string()];
                row.extend(q.iter().map(|slots| cell(slots, &names)));
                row
            })
            .collect();
        write_table(&mut out, &header, &rows);
    }
    out
}
