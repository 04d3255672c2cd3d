//! Lower-bound curves assembled from linear certificates
//! `ca * alpha + cb * beta >= rhs`.

use serde::Serialize;

use crate::{CurveVertex, EnvelopeCurve, Error, ExactRational, Result};

/// The constraint `ca * alpha + cb * beta >= rhs` with `ca, cb >= 0`, not
/// both zero. `cb = 0` makes it a pure storage cut `alpha >= rhs / ca`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfPlane {
    pub ca: ExactRational,
    pub cb: ExactRational,
    pub rhs: ExactRational,
    pub label: String,
}

impl HalfPlane {
    pub fn new(
        ca: ExactRational,
        cb: ExactRational,
        rhs: ExactRational,
        label: impl Into<String>,
    ) -> Result<Self> {
        if ca.is_negative() || cb.is_negative() {
            return Err(Error::InvalidHalfPlane(format!(
                "weights must be nonnegative, got ({ca}, {cb})"
            )));
        }
        if ca.is_zero() && cb.is_zero() {
            return Err(Error::InvalidHalfPlane("both weights are zero".into()));
        }
        Ok(Self {
            ca,
            cb,
            rhs,
            label: label.into(),
        })
    }

    pub fn is_alpha_cut(&self) -> bool {
        self.cb.is_zero()
    }

    pub fn satisfied_by(&self, alpha: &ExactRational, beta: &ExactRational) -> bool {
        &self.ca * alpha + &self.cb * beta >= self.rhs
    }

    /// `(rhs - ca * alpha) / cb`, `None` for an alpha cut.
    pub fn beta_floor(&self, alpha: &ExactRational) -> Option<ExactRational> {
        if self.is_alpha_cut() {
            None
        } else {
            Some((&self.rhs - &self.ca * alpha) / &self.cb)
        }
    }
}

/// `count` evenly spaced exact points from `lo` to `hi` inclusive.
pub fn alpha_grid(lo: &ExactRational, hi: &ExactRational, count: usize) -> Result<Vec<ExactRational>> {
    if count < 2 {
        return Err(Error::GridTooSmall(count));
    }
    if lo > hi {
        return Err(Error::EmptyDomain {
            lo: lo.clone(),
            hi: hi.clone(),
        });
    }
    let step = (hi - lo) / ExactRational::from(count - 1);
    Ok((0..count)
        .map(|i| lo + &step * ExactRational::from(i))
        .collect())
}

/// Evaluates `beta_lb(alpha) = max_i (rhs_i - ca_i alpha) / cb_i` over the
/// halfplanes with `cb > 0` on an exact grid of `[alpha_lo, alpha_hi]`.
/// Alpha cuts raise the left end of the domain.
pub fn halfplane_envelope(
    hps: &[HalfPlane],
    alpha_lo: &ExactRational,
    alpha_hi: &ExactRational,
    grid: usize,
) -> Result<EnvelopeCurve> {
    if hps.is_empty() {
        return Err(Error::Empty("halfplane_envelope needs at least one halfplane"));
    }
    if grid < 2 {
        return Err(Error::GridTooSmall(grid));
    }
    for hp in hps {
        if hp.ca.is_negative() || hp.cb.is_negative() || (hp.ca.is_zero() && hp.cb.is_zero()) {
            return Err(Error::InvalidHalfPlane(hp.label.clone()));
        }
    }
    let lo = hps
        .iter()
        .filter(|hp| hp.is_alpha_cut())
        .map(|hp| &hp.rhs / &hp.ca)
        .fold(alpha_lo.clone(), ExactRational::max);
    let bounding: Vec<&HalfPlane> = hps.iter().filter(|hp| !hp.is_alpha_cut()).collect();
    if bounding.is_empty() {
        return Err(Error::Empty("halfplane_envelope needs a halfplane with cb > 0"));
    }

    let vertices = alpha_grid(&lo, alpha_hi, grid)?
        .into_iter()
        .map(|alpha| {
            let mut best: Option<ExactRational> = None;
            let mut sources = Vec::new();
            for hp in &bounding {
                let value = hp.beta_floor(&alpha).expect("non-cut halfplane");
                match &best {
                    Some(b) if &value < b => {}
                    Some(b) if &value == b => sources.push(hp.label.clone()),
                    _ => {
                        best = Some(value);
                        sources = vec![hp.label.clone()];
                    }
                }
            }
            CurveVertex {
                alpha,
                beta: best.expect("at least one bounding halfplane"),
                sources,
            }
        })
        .collect();
    Ok(EnvelopeCurve { vertices })
}
