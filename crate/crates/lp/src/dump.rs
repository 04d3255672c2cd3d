//! Text export in the CPLEX-style LP format, coefficients as exact `p/q`.

use std::fmt::Write;

use crate::constraint::{render_terms, Sense};
use crate::problem::LpProblem;

pub fn dump_lp(lp: &LpProblem) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ relaxed entropic LP, N = {}, K = {}", lp.n, lp.k);
    let _ = writeln!(out, "Minimize\n obj: {}", render_terms(&lp.objective));
    out.push_str("Subject To\n");
    let mut counters = std::collections::BTreeMap::new();
    for c in &lp.constraints {
        let i = counters.entry(c.tag).or_insert(0usize);
        *i += 1;
        let op = match c.sense {
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {}_{}: {} {op} {}", c.tag, i, render_terms(&c.terms), c.rhs);
    }
    out.push_str("Bounds\n");
    for v in &lp.variables {
        let _ = writeln!(out, " {v} >= 0");
    }
    out.push_str("End\n");
    out
}
