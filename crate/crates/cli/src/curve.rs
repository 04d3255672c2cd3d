//! `curve`: achievable hull against the lower-bound envelope on a grid.

use pirtrade_bounds::lower_bound_halfplanes;
use pirtrade_core::{
    halfplane_envelope, lower_hull, ratio_curve, CurveVertex, EnvelopeCurve, ExactRational,
    SystemParams,
};
use pirtrade_lp::{build_lp, solve_exact, LinearConstraint, Sense, VarId};
use serde_json::json;

use crate::achievable::{family_points, Family};
use crate::report::{json_string, Format, ReportSpec, Table};
use crate::{lp_guard, Error, Outcome, Result};

/// `min y_1(0,1)` subject to `y_1(1,0) <= alpha`: a lower bound on the
/// download of any code with storage `alpha`.
fn lp_beta_floor(n: u32, k: u32, alpha: &ExactRational) -> Result<ExactRational> {
    let mut lp = build_lp(n, k, ExactRational::zero(), ExactRational::one())?;
    lp.add_constraint(LinearConstraint::new(
        [(VarId::y(1, 1, 0), -ExactRational::one())],
        Sense::Ge,
        -alpha.clone(),
        "storage",
    ))?;
    let sol = solve_exact(&lp)?;
    sol.value
        .ok_or_else(|| Error::Usage(format!("LP at alpha = {alpha} is {}", sol.status)))
}

fn upper_curve(n: u32, k: u32) -> Result<EnvelopeCurve> {
    let mut fams = vec![Family::Mds, Family::Uncoded, Family::Gmds, Family::SunJafar];
    if k >= 2 {
        fams.push(Family::Prop3);
    }
    let mut points = Vec::new();
    for f in &fams {
        points.extend(family_points(f, n, k)?);
    }
    Ok(lower_hull(&points)?)
}

pub(crate) fn run(
    n: u32,
    k: u32,
    grid: usize,
    lp_refine: bool,
    allow_large: bool,
    spec: &ReportSpec,
) -> Result<Outcome> {
    if grid < 2 {
        return Err(Error::Usage(format!("--grid must be at least 2, got {grid}")));
    }
    if lp_refine {
        lp_guard(n, k, allow_large)?;
    }
    let params = SystemParams::new(n, k)?;
    let upper = upper_curve(n, k)?;
    let halfplanes = lower_bound_halfplanes(n, k)?;
    let mut lower = halfplane_envelope(&halfplanes, &params.alpha0(), &ExactRational::from(k), grid)?;
    if lp_refine {
        for v in &mut lower.vertices {
            let lp = lp_beta_floor(n, k, &v.alpha)?;
            if lp > v.beta {
                v.beta = lp;
                v.sources = vec!["lp".to_string()];
            }
        }
    }
    let ratio = ratio_curve(&upper, &lower, grid)?;
    let lower_at = |a: &ExactRational| -> &CurveVertex {
        lower
            .vertices
            .iter()
            .find(|v| &v.alpha == a)
            .expect("ratio grid coincides with the envelope grid")
    };
    let one = ExactRational::one();
    let passed = ratio.points.iter().all(|(_, r)| *r >= one);
    let summary = format!(
        "max ratio {} at alpha = {}",
        spec.both(&ratio.max_ratio),
        spec.both(&ratio.argmax_alpha)
    );

    let rows: Vec<_> = ratio
        .points
        .iter()
        .map(|(alpha, r)| {
            let ub = upper.value_at(alpha).expect("inside the hull domain");
            (alpha, ub, lower_at(alpha), r)
        })
        .collect();

    let (body, notes) = match spec.format {
        Format::Json => (
            json_string(&json!({
                "n": n,
                "k": k,
                "grid": grid,
                "lp_refined": lp_refine,
                "points": rows.iter().map(|(a, ub, lb, r)| json!({
                    "alpha": spec.value(a),
                    "beta_upper": spec.value(ub),
                    "beta_lower": spec.value(&lb.beta),
                    "ratio": spec.value(r),
                    "lower_sources": lb.sources,
                })).collect::<Vec<_>>(),
                "summary": {
                    "max_ratio": spec.value(&ratio.max_ratio),
                    "argmax_alpha": spec.value(&ratio.argmax_alpha),
                },
                "upper_hull": upper.vertices.iter().map(|v| json!({
                    "alpha": spec.value(&v.alpha),
                    "beta": spec.value(&v.beta),
                    "sources": v.sources,
                })).collect::<Vec<_>>(),
                "halfplanes": halfplanes.iter().map(|h| json!({
                    "ca": h.ca.to_string(),
                    "cb": h.cb.to_string(),
                    "rhs": h.rhs.to_string(),
                    "label": h.label,
                })).collect::<Vec<_>>(),
            }))?,
            Vec::new(),
        ),
        Format::Csv | Format::Text => {
            let mut t = Table::new(&[
                "alpha",
                "beta_upper",
                "beta_lower",
                "ratio",
                "alpha_exact",
                "beta_upper_exact",
                "beta_lower_exact",
                "ratio_exact",
                "lower_source",
            ]);
            for (a, ub, lb, r) in &rows {
                t.push(vec![
                    spec.decimal(a),
                    spec.decimal(ub),
                    spec.decimal(&lb.beta),
                    spec.decimal(r),
                    a.to_string(),
                    ub.to_string(),
                    lb.beta.to_string(),
                    r.to_string(),
                    lb.sources.join(";"),
                ]);
            }
            if spec.format == Format::Csv {
                (t.to_csv()?, vec![summary])
            } else {
                (t.to_text() + &summary + "\n", Vec::new())
            }
        }
    };
    Ok(Outcome { body, notes, passed })
}
