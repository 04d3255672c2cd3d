//! Assembling and solving the relaxed LP.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use pirtrade_core::ExactRational;
use serde::Serialize;

use crate::constraint::{LinearConstraint, Sense};
use crate::enumerate::{enumerate_structural, enumerate_submodular_with, SubmodularMode};
use crate::simplex::{self, Outcome, Primal, RowSense, SolveStats};
use crate::var::{variable_census, VarId};
use crate::{Error, Result};

/// Pivot cap; Bland's rule terminates long before this on supported sizes.
pub const DEFAULT_PIVOT_LIMIT: u64 = 2_000_000;

/// `minimize objective` over nonnegative `variables` subject to `constraints`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub n: u32,
    pub k: u32,
    pub variables: Vec<VarId>,
    pub constraints: Vec<LinearConstraint>,
    pub objective: Vec<(VarId, ExactRational)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

impl std::fmt::Display for LpStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LpStatus::Optimal => "optimal",
            LpStatus::Infeasible => "infeasible",
            LpStatus::Unbounded => "unbounded",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Option<ExactRational>,
    /// Primal values, checked against every row before being returned.
    pub assignment: BTreeMap<VarId, ExactRational>,
    pub stats: SolveStats,
}

impl LpSolution {
    pub fn value_of(&self, v: &VarId) -> ExactRational {
        self.assignment.get(v).cloned().unwrap_or_default()
    }
}

impl LpProblem {
    /// Counts of constraints per family tag.
    pub fn family_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for c in &self.constraints {
            *out.entry(c.tag).or_insert(0) += 1;
        }
        out
    }

    /// Every row and the objective mention only declared variables.
    pub fn validate(&self) -> Result<()> {
        let known: BTreeSet<&VarId> = self.variables.iter().collect();
        let check = |v: &VarId| {
            known
                .contains(v)
                .then_some(())
                .ok_or_else(|| Error::UnknownVariable(v.to_string()))
        };
        for c in &self.constraints {
            c.terms.iter().try_for_each(|(v, _)| check(v))?;
        }
        self.objective.iter().try_for_each(|(v, _)| check(v))
    }

    pub fn add_constraint(&mut self, c: LinearConstraint) -> Result<()> {
        let known: BTreeSet<&VarId> = self.variables.iter().collect();
        if let Some((v, _)) = c.terms.iter().find(|(v, _)| !known.contains(v)) {
            return Err(Error::UnknownVariable(v.to_string()));
        }
        self.constraints.push(c);
        Ok(())
    }

    pub fn objective_value(&self, value: impl Fn(&VarId) -> ExactRational) -> ExactRational {
        self.objective.iter().map(|(v, c)| c.clone() * value(v)).sum()
    }

    fn to_primal(&self) -> Primal {
        let index: BTreeMap<&VarId, usize> =
            self.variables.iter().enumerate().map(|(i, v)| (v, i)).collect();
        let big = |c: &ExactRational| c.as_big().clone();
        let mut cost = vec![BigRational::default(); self.variables.len()];
        for (v, c) in &self.objective {
            cost[index[v]] += big(c);
        }
        Primal {
            vars: self.variables.len(),
            rows: self
                .constraints
                .iter()
                .map(|c| {
                    (
                        c.terms.iter().map(|(v, x)| (index[v], big(x))).collect(),
                        match c.sense {
                            Sense::Ge => RowSense::Ge,
                            Sense::Eq => RowSense::Eq,
                        },
                        big(&c.rhs),
                    )
                })
                .collect(),
            cost,
        }
    }
}

fn check_weights(a0: &ExactRational, b0: &ExactRational) -> Result<()> {
    if a0.is_negative() || b0.is_negative() || (a0.is_zero() && b0.is_zero()) {
        return Err(Error::InvalidArgs(format!(
            "weights must be nonnegative and not both zero, got a0 = {a0}, b0 = {b0}"
        )));
    }
    Ok(())
}

pub fn build_lp(n: u32, k: u32, a0: ExactRational, b0: ExactRational) -> Result<LpProblem> {
    build_lp_with(n, k, a0, b0, SubmodularMode::Canonical)
}

/// The LP for `(N, K)` with objective `a0 y_1(1,0) + b0 y_1(0,1)`; the
/// boundary variables `x_K(., .)` are substituted by zero.
pub fn build_lp_with(
    n: u32,
    k: u32,
    a0: ExactRational,
    b0: ExactRational,
    mode: SubmodularMode,
) -> Result<LpProblem> {
    if n < 2 || k < 1 {
        return Err(Error::InvalidArgs(format!("need N >= 2 and K >= 1, got N = {n}, K = {k}")));
    }
    check_weights(&a0, &b0)?;
    let boundary = |v: &VarId| v.is_boundary(k);
    let constraints = enumerate_submodular_with(n, k, mode)
        .into_iter()
        .chain(enumerate_structural(n, k))
        .filter(|c| c.tag != "boundary")
        .map(|c| c.without(boundary))
        .filter(|c| !c.is_trivial())
        .collect();
    let objective = [(VarId::y(1, 1, 0), a0), (VarId::y(1, 0, 1), b0)]
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    Ok(LpProblem {
        n,
        k,
        variables: variable_census(n, k).into_iter().filter(|v| !boundary(v)).collect(),
        constraints,
        objective,
    })
}

pub fn solve_exact(lp: &LpProblem) -> Result<LpSolution> {
    solve_exact_with_limit(lp, DEFAULT_PIVOT_LIMIT)
}

pub fn solve_exact_with_limit(lp: &LpProblem, limit: u64) -> Result<LpSolution> {
    lp.validate()?;
    let primal = lp.to_primal();
    let (outcome, stats) = simplex::solve(&primal, limit)?;
    let (status, value, assignment) = match outcome {
        Outcome::Infeasible => (LpStatus::Infeasible, None, BTreeMap::new()),
        Outcome::Unbounded => (LpStatus::Unbounded, None, BTreeMap::new()),
        Outcome::Optimal { x, value } => {
            if !simplex::certify(&primal, &x, &value) {
                return Err(Error::Certificate(
                    "primal point violates a row or misses the optimum".to_string(),
                ));
            }
            let assignment = lp
                .variables
                .iter()
                .zip(x)
                .filter(|(_, v)| *v != BigRational::default())
                .map(|(var, v)| (*var, ExactRational::from_big(v)))
                .collect();
            (LpStatus::Optimal, Some(ExactRational::from_big(value)), assignment)
        }
    };
    Ok(LpSolution {
        status,
        value,
        assignment,
        stats,
    })
}

/// Optimal value of the relaxed LP: a lower bound on `a0 alpha + b0 beta`
/// for every achievable pair.
pub fn lp_bound(n: u32, k: u32, a0: ExactRational, b0: ExactRational) -> Result<ExactRational> {
    let sol = solve_exact(&build_lp(n, k, a0, b0)?)?;
    sol.value.ok_or(Error::NotOptimal(sol.status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pirtrade_core::{beta0, q};

    #[test]
    fn boundary_variables_are_gone() {
        let lp = build_lp(3, 2, q(0, 1), q(1, 1)).unwrap();
        assert!(lp.variables.iter().all(|v| !v.is_boundary(2)));
        assert_eq!(lp.variables.len(), 2 * 10 * 2 - 10);
        lp.validate().unwrap();
        assert!(!lp.family_counts().contains_key("boundary"));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(build_lp(3, 2, q(-1, 1), q(1, 1)).is_err());
        assert!(build_lp(3, 2, q(0, 1), q(0, 1)).is_err());
        assert!(build_lp(1, 2, q(1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn single_message_download() {
        // K = 1: the user must download the whole message.
        assert_eq!(lp_bound(2, 1, q(0, 1), q(1, 1)).unwrap(), beta0(2, 1));
        assert_eq!(lp_bound(3, 1, q(0, 1), q(1, 1)).unwrap(), beta0(3, 1));
    }

    #[test]
    fn certificate_attains_value() {
        let lp = build_lp(3, 2, q(1, 1), q(2, 1)).unwrap();
        let sol = solve_exact(&lp).unwrap();
        let value = sol.value.clone().unwrap();
        assert!(lp.constraints.iter().all(|c| c.satisfied_by(|v| sol.value_of(v))));
        assert_eq!(lp.objective_value(|v| sol.value_of(v)), value);
    }

    #[test]
    fn unknown_variable_is_rejected() {
        let mut lp = build_lp(2, 2, q(1, 1), q(1, 1)).unwrap();
        let c = LinearConstraint::new([(VarId::x(2, 0, 0), q(1, 1))], Sense::Ge, q(0, 1), "extra");
        assert!(matches!(lp.add_constraint(c), Err(Error::UnknownVariable(_))));
    }
}
