//! Sparse linear rows over [`VarId`]s.

use std::collections::BTreeMap;
use std::fmt;

use pirtrade_core::ExactRational;
use serde::Serialize;

use crate::var::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sense {
    Ge,
    Eq,
}

/// `sum terms  (>= | =)  rhs`. Terms are sorted by variable, with no
/// repeats and no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LinearConstraint {
    pub terms: Vec<(VarId, ExactRational)>,
    pub sense: Sense,
    pub rhs: ExactRational,
    pub tag: &'static str,
}

impl LinearConstraint {
    /// Combines repeated variables and drops zero coefficients.
    pub fn new(
        terms: impl IntoIterator<Item = (VarId, ExactRational)>,
        sense: Sense,
        rhs: ExactRational,
        tag: &'static str,
    ) -> Self {
        let mut acc: BTreeMap<VarId, ExactRational> = BTreeMap::new();
        for (v, c) in terms {
            *acc.entry(v).or_default() += c;
        }
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            sense,
            rhs,
            tag,
        }
    }

    /// No variables and satisfied by anything (e.g. `0 >= 0`).
    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
            && match self.sense {
                Sense::Ge => !self.rhs.is_positive(),
                Sense::Eq => self.rhs.is_zero(),
            }
    }

    pub fn coefficient(&self, v: &VarId) -> ExactRational {
        self.terms
            .binary_search_by(|(w, _)| w.cmp(v))
            .map_or_else(|_| ExactRational::zero(), |i| self.terms[i].1.clone())
    }

    pub fn lhs(&self, value: impl Fn(&VarId) -> ExactRational) -> ExactRational {
        self.terms
            .iter()
            .map(|(v, c)| c.clone() * value(v))
            .sum()
    }

    pub fn satisfied_by(&self, value: impl Fn(&VarId) -> ExactRational) -> bool {
        let lhs = self.lhs(value);
        match self.sense {
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }

    /// Same row with the given variables set to zero.
    pub fn without(&self, drop: impl Fn(&VarId) -> bool) -> Self {
        Self {
            terms: self.terms.iter().filter(|(v, _)| !drop(v)).cloned().collect(),
            ..self.clone()
        }
    }
}

/// `coef var` pieces joined with signs, e.g. `2 y_1_1_0 - y_1_2_0`.
pub(crate) fn render_terms(terms: &[(VarId, ExactRational)]) -> String {
    let mut out = String::new();
    for (i, (v, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if i == 0 {
            if c.is_negative() {
                out.push_str("- ");
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(&v.to_string());
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.sense {
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        write!(f, "{} {op} {}", render_terms(&self.terms), self.rhs)
    }
}
