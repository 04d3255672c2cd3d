//! `simulate`: build a code, dump its tables, verify it.

use pirtrade_protocols::{
    build_construction_a, build_construction_b, cyclic_compose, dump_tables, measure_costs,
    verify_correctness, verify_privacy, PirProtocol, DEFAULT_BUDGET,
};
use serde_json::{json, Map, Value};

use crate::report::{json_string, Format, ReportSpec, Table};
use crate::{Error, Outcome, Result, BUDGET_ENV};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    Correctness,
    Privacy,
    Costs,
}

pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let c = match part {
            "correctness" => Check::Correctness,
            "privacy" => Check::Privacy,
            "costs" => Check::Costs,
            _ => return Err(Error::Usage(format!("unknown check {part:?}"))),
        };
        if !out.contains(&c) {
            out.push(c);
        }
    }
    if out.is_empty() {
        return Err(Error::Usage("no checks requested".to_string()));
    }
    Ok(out)
}

fn need(v: Option<u32>, flag: &str, what: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Usage(format!("{what} needs --{flag}")))
}

fn build_base(kind: &str, n: Option<u32>, k: Option<u32>, t: Option<u32>) -> Result<PirProtocol> {
    match kind.to_ascii_lowercase().as_str() {
        "a" => Ok(build_construction_a(need(k, "k", "construction A")?)?),
        "b" => Ok(build_construction_b(
            need(n, "n", "construction B")?,
            need(t, "t", "construction B")?,
        )?),
        _ => Err(Error::Usage(format!("unknown construction {kind:?}"))),
    }
}

pub fn build(
    construction: &str,
    n: Option<u32>,
    k: Option<u32>,
    t: Option<u32>,
    m: Option<u32>,
    base: Option<&str>,
    base_k: Option<u32>,
) -> Result<PirProtocol> {
    if construction.eq_ignore_ascii_case("cyclic") {
        let base = base.ok_or_else(|| Error::Usage("cyclic needs --base A or --base B".to_string()))?;
        let proto = build_base(base, n, base_k.or(k), t)?;
        Ok(cyclic_compose(&proto, need(m, "m", "a cyclic composition")?)?)
    } else {
        build_base(construction, n, k, t)
    }
}

/// Budget for exhaustive enumeration, from the environment if set.
pub fn budget() -> Result<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{BUDGET_ENV} must be an integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

pub(crate) fn run(p: &PirProtocol, checks: &[Check], spec: &ReportSpec) -> Result<Outcome> {
    let mut passed = true;
    let mut results: Vec<(&str, bool)> = Vec::new();
    let mut costs = None;
    for c in checks {
        match c {
            Check::Correctness => {
                let ok = verify_correctness(p, budget()?)?;
                passed &= ok;
                results.push(("correctness", ok));
            }
            Check::Privacy => {
                let ok = verify_privacy(p)?;
                passed &= ok;
                results.push(("privacy", ok));
            }
            Check::Costs => match measure_costs(p) {
                Ok(r) => costs = Some(r),
                Err(pirtrade_protocols::Error::CostMismatch { .. }) => {
                    passed = false;
                    results.push(("costs", false));
                }
                Err(e) => return Err(e.into()),
            },
        }
    }
    let verdict = |ok: bool| if ok { "pass" } else { "fail" };

    let body = match spec.format {
        Format::Text => {
            let mut out = dump_tables(p);
            out.push('\n');
            for (name, ok) in &results {
                out.push_str(&format!("{name}: {}\n", verdict(*ok)));
            }
            if let Some(r) = &costs {
                out.push_str(&format!("costs: ({}, {})\n", r.alpha_bar, r.beta_bar));
                out.push_str(&format!("  alpha = {}\n", spec.both(&r.alpha_bar)));
                out.push_str(&format!("  beta  = {}\n", spec.both(&r.beta_bar)));
            }
            out
        }
        Format::Csv => {
            let mut t = Table::new(&["quantity", "status", "exact", "decimal"]);
            for (name, ok) in &results {
                t.push(vec![name.to_string(), verdict(*ok).to_string(), String::new(), String::new()]);
            }
            if let Some(r) = &costs {
                for (name, v) in [("alpha", &r.alpha_bar), ("beta", &r.beta_bar)] {
                    t.push(vec![name.to_string(), "measured".to_string(), v.to_string(), spec.decimal(v)]);
                }
            }
            t.to_csv()?
        }
        Format::Json => {
            let mut checks = Map::new();
            for (name, ok) in &results {
                checks.insert(name.to_string(), Value::Bool(*ok));
            }
            if let Some(r) = &costs {
                checks.insert(
                    "costs".to_string(),
                    json!({
                        "alpha": spec.value(&r.alpha_bar),
                        "beta": spec.value(&r.beta_bar),
                        "storage_symbols": r.storage_symbols,
                        "expected_download": r.expected_download.iter().map(|v| spec.value(v)).collect::<Vec<_>>(),
                    }),
                );
            }
            json_string(&json!({
                "protocol": p.name,
                "n": p.n,
                "k": p.k,
                "message_len": p.message_len,
                "tables": dump_tables(p),
                "checks": checks,
                "passed": passed,
            }))?
        }
    };
    Ok(Outcome {
        body,
        notes: Vec::new(),
        passed,
    })
}
