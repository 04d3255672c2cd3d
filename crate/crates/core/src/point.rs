use std::fmt;

use serde::Serialize;

use crate::{Error, ExactRational, Result};

/// Where a tradeoff point came from: a family name plus its parameters.
/// Composite points (e.g. a cyclic transform) keep the label of their base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PointLabel {
    pub family: String,
    pub params: Vec<(String, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<PointLabel>>,
}

impl PointLabel {
    pub fn new(family: impl Into<String>, params: &[(&str, u64)]) -> Self {
        Self {
            family: family.into(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            base: None,
        }
    }

    pub fn with_base(mut self, base: PointLabel) -> Self {
        self.base = Some(Box::new(base));
        self
    }

    pub fn param(&self, name: &str) -> Option<u64> {
        self.params.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }
}

impl fmt::Display for PointLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        for (i, (k, v)) in self.params.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{k}={v}")?;
        }
        write!(f, ")")?;
        if let Some(base) = &self.base {
            write!(f, "<{base}>")?;
        }
        Ok(())
    }
}

/// An achievable (storage, download) pair, normalized per server and per
/// message symbol.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TradeoffPoint {
    pub alpha: ExactRational,
    pub beta: ExactRational,
    pub label: PointLabel,
}

impl TradeoffPoint {
    pub fn new(alpha: ExactRational, beta: ExactRational, label: PointLabel) -> Result<Self> {
        if !alpha.is_positive() || !beta.is_positive() {
            return Err(Error::NonPositivePoint { alpha, beta });
        }
        Ok(Self { alpha, beta, label })
    }

    /// True when `self` is at least as good in both costs and strictly better
    /// in one.
    pub fn dominates(&self, other: &TradeoffPoint) -> bool {
        self.alpha <= other.alpha
            && self.beta <= other.beta
            && (self.alpha < other.alpha || self.beta < other.beta)
    }

    pub fn same_costs(&self, other: &TradeoffPoint) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }
}
