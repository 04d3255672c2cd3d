//! `bounds`: closed-form and large-weight bounds with their halfplanes.

use pirtrade_bounds::{dunderline_bound, lower_bound_halfplanes, theorem3_bound, BoundResult};
use serde_json::json;

use crate::report::{json_string, Format, ReportSpec, Table};
use crate::{Outcome, Result};

pub(crate) fn run(n: u32, k: u32, spec: &ReportSpec) -> Result<Outcome> {
    let halfplanes = lower_bound_halfplanes(n, k)?;
    let mut results: Vec<(u32, BoundResult)> = Vec::new();
    for m in 1..=n {
        results.push((m, dunderline_bound(n, k, m)?));
    }
    for idx in 1..=k {
        results.push((idx, theorem3_bound(n, k, idx)?));
    }
    let kind = |r: &BoundResult| serde_json::to_value(r.kind).map(|v| v.as_str().unwrap_or("").to_string());

    let body = match spec.format {
        Format::Json => json_string(&json!({
            "n": n,
            "k": k,
            "bounds": results.iter().map(|(_, r)| {
                let (ca, cb) = r.weights();
                json!({
                    "label": r.label(),
                    "weights": [ca.to_string(), cb.to_string()],
                    "value": spec.value(&r.value),
                    "result": r,
                })
            }).collect::<Vec<_>>(),
            "halfplanes": halfplanes.iter().map(|h| json!({
                "ca": h.ca.to_string(),
                "cb": h.cb.to_string(),
                "rhs": spec.value(&h.rhs),
                "label": h.label,
            })).collect::<Vec<_>>(),
        }))?,
        Format::Csv | Format::Text => {
            let mut t = Table::new(&["kind", "index", "ca", "cb", "value", "value_exact", "label"]);
            for (idx, r) in &results {
                let (ca, cb) = r.weights();
                t.push(vec![
                    kind(r)?,
                    idx.to_string(),
                    ca.to_string(),
                    cb.to_string(),
                    spec.decimal(&r.value),
                    r.value.to_string(),
                    r.label(),
                ]);
            }
            for h in halfplanes.iter().filter(|h| h.is_alpha_cut()) {
                t.push(vec![
                    "alpha_cut".to_string(),
                    String::new(),
                    h.ca.to_string(),
                    h.cb.to_string(),
                    spec.decimal(&h.rhs),
                    h.rhs.to_string(),
                    h.label.clone(),
                ]);
            }
            if spec.format == Format::Csv {
                t.to_csv()?
            } else {
                t.to_text()
            }
        }
    };
    Ok(Outcome::pass(body))
}
