//! Lower-left convex envelope of a set of achievable points.

use crate::{CurveVertex, EnvelopeCurve, Error, ExactRational, Result, TradeoffPoint};

/// Returns the lower-left convex envelope of `points`.
///
/// Strictly dominated points are removed, points with identical costs are
/// kept once with their labels merged, and points lying strictly above the
/// chain are dropped. Collinear points on the envelope stay as vertices.
pub fn lower_hull(points: &[TradeoffPoint]) -> Result<EnvelopeCurve> {
    if points.is_empty() {
        return Err(Error::Empty("lower_hull needs at least one point"));
    }

    let mut merged: Vec<CurveVertex> = Vec::new();
    let mut sorted: Vec<&TradeoffPoint> = points.iter().collect();
    sorted.sort_by(|a, b| a.alpha.cmp(&b.alpha).then_with(|| a.beta.cmp(&b.beta)));
    for p in sorted {
        match merged.last_mut() {
            Some(last) if last.alpha == p.alpha && last.beta == p.beta => {
                let label = p.label.to_string();
                if !last.sources.contains(&label) {
                    last.sources.push(label);
                }
            }
            _ => merged.push(CurveVertex {
                alpha: p.alpha.clone(),
                beta: p.beta.clone(),
                sources: vec![p.label.to_string()],
            }),
        }
    }

    // Sorted by alpha ascending: a point survives domination iff its beta is
    // strictly below every beta seen at smaller alpha.
    let mut frontier: Vec<CurveVertex> = Vec::new();
    for v in merged {
        match frontier.last() {
            Some(last) if v.beta >= last.beta => continue,
            _ => frontier.push(v),
        }
    }

    let mut chain: Vec<CurveVertex> = Vec::with_capacity(frontier.len());
    for v in frontier {
        while chain.len() >= 2 {
            let a = &chain[chain.len() - 2];
            let b = &chain[chain.len() - 1];
            if strictly_above_segment(b, a, &v) {
                chain.pop();
            } else {
                break;
            }
        }
        chain.push(v);
    }
    Ok(EnvelopeCurve { vertices: chain })
}

/// True when `mid` lies strictly above the segment from `left` to `right`
/// (alphas strictly increasing).
fn strictly_above_segment(mid: &CurveVertex, left: &CurveVertex, right: &CurveVertex) -> bool {
    let lhs: ExactRational = (&mid.beta - &left.beta) * (&right.alpha - &left.alpha);
    let rhs: ExactRational = (&right.beta - &left.beta) * (&mid.alpha - &left.alpha);
    lhs > rhs
}
