//! `lp`: exact solve of the relaxed entropic LP.

use std::path::Path;

use pirtrade_bounds::dunderline_b;
use pirtrade_core::ExactRational;
use pirtrade_lp::{build_lp, dump_lp, solve_exact, variable_census, LpStatus};
use serde_json::json;

use crate::report::{json_string, Format, ReportSpec, Table};
use crate::{lp_guard, Error, Outcome, Result};

/// The explicit bound for the same objective, when `(a0, b0)` is a
/// positive multiple of `(N - m, m)` for some `m in [1:N]`.
fn matching_explicit(n: u32, k: u32, a0: &ExactRational, b0: &ExactRational) -> Result<Option<(u32, ExactRational)>> {
    let total = a0.clone() + b0.clone();
    if !b0.is_positive() || k < 1 {
        return Ok(None);
    }
    let m = ExactRational::from(n) * b0.clone() / total.clone();
    if !m.is_integer() {
        return Ok(None);
    }
    let m = u32::try_from(m.floor()).expect("m lies in [1:N]");
    let scale = total / ExactRational::from(n);
    Ok(Some((m, dunderline_b(n, k, m)? * scale)))
}

pub(crate) fn run(
    n: u32,
    k: u32,
    a0: &ExactRational,
    b0: &ExactRational,
    dump: Option<&Path>,
    allow_large: bool,
    spec: &ReportSpec,
) -> Result<Outcome> {
    lp_guard(n, k, allow_large)?;
    let lp = build_lp(n, k, a0.clone(), b0.clone())?;
    if let Some(path) = dump {
        std::fs::write(path, dump_lp(&lp)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    let sol = solve_exact(&lp)?;
    let census = variable_census(n, k).len();
    let families = lp.family_counts();
    let explicit = matching_explicit(n, k, a0, b0)?;
    let dominates = match (&sol.value, &explicit) {
        (Some(v), Some((_, e))) => Some(v >= e),
        _ => None,
    };
    let passed = sol.status == LpStatus::Optimal && dominates != Some(false);

    let body = match spec.format {
        Format::Text => {
            let mut out = format!(
                "relaxed LP for N={n}, K={k}: minimize {a0} y_1(1,0) + {b0} y_1(0,1)\n"
            );
            out.push_str(&format!("status: {}\n", sol.status));
            if let Some(v) = &sol.value {
                out.push_str(&format!("value: {}\n", spec.both(v)));
            }
            out.push_str(&format!(
                "variables: {census} in the census, {} free after fixing x_{k}(.,.) = 0\n",
                lp.variables.len()
            ));
            let fams: Vec<String> = families.iter().map(|(f, c)| format!("{f} {c}")).collect();
            out.push_str(&format!("constraints: {} ({})\n", lp.constraints.len(), fams.join(", ")));
            out.push_str(&format!(
                "pivots: {} (phase 1: {}), dual columns: {}\n",
                sol.stats.pivots, sol.stats.phase1_pivots, sol.stats.columns
            ));
            if let Some((m, e)) = &explicit {
                out.push_str(&format!(
                    "explicit bound (m={m}): {} -> {}\n",
                    spec.both(e),
                    if dominates == Some(true) { "dominated by the LP" } else { "EXCEEDS the LP" }
                ));
            }
            out
        }
        Format::Csv => {
            let mut t = Table::new(&["field", "value"]);
            let mut row = |f: &str, v: String| t.push(vec![f.to_string(), v]);
            row("n", n.to_string());
            row("k", k.to_string());
            row("a0", a0.to_string());
            row("b0", b0.to_string());
            row("status", sol.status.to_string());
            row("value_exact", sol.value.as_ref().map_or(String::new(), ToString::to_string));
            row("value", sol.value.as_ref().map_or(String::new(), |v| spec.decimal(v)));
            row("variables_census", census.to_string());
            row("variables_free", lp.variables.len().to_string());
            row("constraints", lp.constraints.len().to_string());
            for (f, c) in &families {
                row(&format!("constraints_{f}"), c.to_string());
            }
            row("pivots", sol.stats.pivots.to_string());
            row("phase1_pivots", sol.stats.phase1_pivots.to_string());
            if let Some((m, e)) = &explicit {
                row("explicit_m", m.to_string());
                row("explicit_exact", e.to_string());
            }
            t.to_csv()?
        }
        Format::Json => json_string(&json!({
            "n": n,
            "k": k,
            "a0": a0.to_string(),
            "b0": b0.to_string(),
            "status": sol.status,
            "value": sol.value.as_ref().map(|v| spec.value(v)),
            "variables": { "census": census, "free": lp.variables.len() },
            "constraints": families,
            "stats": {
                "pivots": sol.stats.pivots,
                "phase1_pivots": sol.stats.phase1_pivots,
                "basis_rows": sol.stats.basis_rows,
                "dual_columns": sol.stats.columns,
            },
            "explicit": explicit.as_ref().map(|(m, e)| json!({ "m": m, "value": spec.value(e) })),
            "certificate": sol.assignment.iter().map(|(v, x)| (v.to_string(), x.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
        }))?,
    };
    Ok(Outcome {
        body,
        notes: Vec::new(),
        passed,
    })
}
