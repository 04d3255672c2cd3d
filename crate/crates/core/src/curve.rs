use serde::Serialize;

use crate::ExactRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveVertex {
    pub alpha: ExactRational,
    pub beta: ExactRational,
    /// Points or halfplanes that produced this vertex.
    pub sources: Vec<String>,
}

/// A piecewise-linear curve `beta(alpha)` given by its vertices, strictly
/// increasing in alpha.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnvelopeCurve {
    pub vertices: Vec<CurveVertex>,
}

impl EnvelopeCurve {
    pub fn alpha_domain(&self) -> (ExactRational, ExactRational) {
        let first = self.vertices.first().expect("curve has vertices");
        let last = self.vertices.last().expect("curve has vertices");
        (first.alpha.clone(), last.alpha.clone())
    }

    /// Linear interpolation between neighbouring vertices; `None` outside
    /// the alpha domain.
    pub fn value_at(&self, alpha: &ExactRational) -> Option<ExactRational> {
        let idx = self.vertices.partition_point(|v| &v.alpha < alpha);
        let right = self.vertices.get(idx)?;
        if &right.alpha == alpha {
            return Some(right.beta.clone());
        }
        let left = self.vertices.get(idx.checked_sub(1)?)?;
        let t = (alpha - &left.alpha) / (&right.alpha - &left.alpha);
        Some(&left.beta + t * (&right.beta - &left.beta))
    }

    /// Checks the envelope shape: strictly increasing alpha, non-increasing
    /// beta and non-decreasing slopes.
    pub fn is_convex_nonincreasing(&self) -> bool {
        let v = &self.vertices;
        if v.is_empty() {
            return false;
        }
        let increasing = v.windows(2).all(|w| w[0].alpha < w[1].alpha && w[0].beta >= w[1].beta);
        let convex = v.windows(3).all(|w| {
            // slope(w0, w1) <= slope(w1, w2), cross-multiplied with positive widths
            let lhs = (&w[1].beta - &w[0].beta) * (&w[2].alpha - &w[1].alpha);
            let rhs = (&w[2].beta - &w[1].beta) * (&w[1].alpha - &w[0].alpha);
            lhs <= rhs
        });
        increasing && convex
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn curve(pts: &[(i64, i64)]) -> EnvelopeCurve {
        EnvelopeCurve {
            vertices: pts
                .iter()
                .map(|&(a, b)| CurveVertex {
                    alpha: q(a, 1),
                    beta: q(b, 1),
                    sources: vec![],
                })
                .collect(),
        }
    }

    #[test]
    fn interpolates() {
        let c = curve(&[(1, 4), (3, 2), (5, 2)]);
        assert_eq!(c.value_at(&q(2, 1)), Some(q(3, 1)));
        assert_eq!(c.value_at(&q(1, 1)), Some(q(4, 1)));
        assert_eq!(c.value_at(&q(5, 1)), Some(q(2, 1)));
        assert_eq!(c.value_at(&q(1, 2)), None);
        assert_eq!(c.value_at(&q(6, 1)), None);
        assert!(c.is_convex_nonincreasing());
        assert!(!curve(&[(1, 4), (2, 3), (3, 0)]).is_convex_nonincreasing());
    }
}
