use serde::Serialize;

use crate::envelope::alpha_grid;
use crate::{EnvelopeCurve, Error, ExactRational, Result};

#[derive(Debug, Clone, Serialize)]
pub struct RatioCurve {
    /// `(alpha, beta_upper(alpha) / beta_lower(alpha))` on the grid.
    pub points: Vec<(ExactRational, ExactRational)>,
    pub max_ratio: ExactRational,
    /// First grid alpha attaining `max_ratio`.
    pub argmax_alpha: ExactRational,
}

/// Pointwise `upper / lower` on an exact grid over the overlap of both
/// curves' alpha domains.
pub fn ratio_curve(upper: &EnvelopeCurve, lower: &EnvelopeCurve, grid: usize) -> Result<RatioCurve> {
    if upper.vertices.is_empty() || lower.vertices.is_empty() {
        return Err(Error::Empty("ratio_curve needs non-empty curves"));
    }
    let (ulo, uhi) = upper.alpha_domain();
    let (llo, lhi) = lower.alpha_domain();
    let lo = ulo.max(llo);
    let hi = uhi.min(lhi);
    let alphas = alpha_grid(&lo, &hi, grid)?;

    let mut points = Vec::with_capacity(alphas.len());
    let mut best: Option<(ExactRational, ExactRational)> = None;
    for alpha in alphas {
        let ub = upper.value_at(&alpha).expect("alpha inside upper domain");
        let lb = lower.value_at(&alpha).expect("alpha inside lower domain");
        if !lb.is_positive() {
            return Err(Error::NonPositiveLower(alpha));
        }
        let r = ub / lb;
        if best.as_ref().is_none_or(|(b, _)| &r > b) {
            best = Some((r.clone(), alpha.clone()));
        }
        points.push((alpha, r));
    }
    let (max_ratio, argmax_alpha) = best.expect("grid is non-empty");
    Ok(RatioCurve {
        points,
        max_ratio,
        argmax_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, CurveVertex};

    fn curve(pts: &[(ExactRational, ExactRational)]) -> EnvelopeCurve {
        EnvelopeCurve {
            vertices: pts
                .iter()
                .map(|(a, b)| CurveVertex {
                    alpha: a.clone(),
                    beta: b.clone(),
                    sources: vec![],
                })
                .collect(),
        }
    }

    #[test]
    fn identity_and_scaling() {
        let lower = curve(&[(q(1, 1), q(2, 1)), (q(2, 1), q(1, 1)), (q(4, 1), q(1, 2))]);
        let r = ratio_curve(&lower, &lower, 7).unwrap();
        assert!(r.points.iter().all(|(_, v)| v == &q(1, 1)));
        assert_eq!(r.max_ratio, q(1, 1));
        assert_eq!(r.argmax_alpha, q(1, 1));

        let upper = curve(&[(q(1, 1), q(4, 1)), (q(2, 1), q(2, 1)), (q(4, 1), q(1, 1))]);
        let r = ratio_curve(&upper, &lower, 5).unwrap();
        assert!(r.points.iter().all(|(_, v)| v == &q(2, 1)));
    }

    #[test]
    fn overlap_and_errors() {
        let a = curve(&[(q(1, 1), q(2, 1)), (q(2, 1), q(1, 1))]);
        let b = curve(&[(q(3, 1), q(2, 1)), (q(4, 1), q(1, 1))]);
        assert!(ratio_curve(&a, &b, 3).is_err());
        let zero = curve(&[(q(1, 1), q(0, 1)), (q(2, 1), q(0, 1))]);
        assert!(matches!(ratio_curve(&a, &zero, 3), Err(Error::NonPositiveLower(_))));

        let wide = curve(&[(q(0, 1), q(4, 1)), (q(3, 1), q(1, 1))]);
        let r = ratio_curve(&wide, &a, 2).unwrap();
        assert_eq!(r.points[0].0, q(1, 1));
        assert_eq!(r.points[1].0, q(2, 1));
        // wide(1) = 3 against a(1) = 2; wide(2) = 2 against a(2) = 1
        assert_eq!(r.max_ratio, q(2, 1));
        assert_eq!(r.argmax_alpha, q(2, 1));
    }
}
