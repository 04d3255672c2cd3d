//! Coefficient vectors `c = (c_j^n : j in [1:m], n in [0:N-j+1])`, the
//! induced subset-entropy weights `d_j`, and the feasibility predicate.

use std::fmt;

use pirtrade_core::ExactRational;
use serde::Serialize;

use crate::jstar::jstar;
use crate::{Error, Result};

/// Weights `c_j^n` for one weighted-sum bound with weight index `m`.
///
/// Only the shape is enforced on construction; row sums, entry ranges and
/// the subset-entropy condition are checked by [`check_feasible`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CoefficientVector {
    n: u32,
    m: u32,
    /// `rows[j - 1][idx]` is `c_j^idx`, `idx in [0, N - j + 1]`.
    rows: Vec<Vec<ExactRational>>,
}

impl CoefficientVector {
    pub fn new(n: u32, m: u32, rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        if n < 2 || m == 0 || m >= n {
            return Err(Error::Shape(format!("need 1 <= m <= N - 1, got N = {n}, m = {m}")));
        }
        if rows.len() != m as usize {
            return Err(Error::Shape(format!("expected {m} rows, got {}", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            let j = i as u32 + 1;
            let want = (n - j + 2) as usize;
            if row.len() != want {
                return Err(Error::Shape(format!(
                    "row j = {j} needs {want} entries, got {}",
                    row.len()
                )));
            }
        }
        Ok(Self { n, m, rows })
    }

    /// All-zero vector of the right shape.
    pub fn zeros(n: u32, m: u32) -> Result<Self> {
        let rows = (1..=m)
            .map(|j| vec![ExactRational::zero(); (n.saturating_sub(j) + 2) as usize])
            .collect();
        Self::new(n, m, rows)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn rows(&self) -> &[Vec<ExactRational>] {
        &self.rows
    }

    /// `c_j^idx`, zero outside the index set.
    pub fn get(&self, j: u32, idx: u32) -> ExactRational {
        if j == 0 {
            return ExactRational::zero();
        }
        self.rows
            .get(j as usize - 1)
            .and_then(|row| row.get(idx as usize))
            .cloned()
            .unwrap_or_else(ExactRational::zero)
    }

    /// Sets `c_j^idx`. Panics outside the index set.
    pub fn set(&mut self, j: u32, idx: u32, value: ExactRational) {
        self.rows[j as usize - 1][idx as usize] = value;
    }
}

/// `d_j` for `j in [2:N]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DVector {
    n: u32,
    values: Vec<ExactRational>,
}

impl DVector {
    /// `d_j`, zero outside `[2:N]`.
    pub fn get(&self, j: u32) -> ExactRational {
        if j < 2 || j > self.n {
            return ExactRational::zero();
        }
        self.values[(j - 2) as usize].clone()
    }

    pub fn values(&self) -> &[ExactRational] {
        &self.values
    }
}

/// `sum_{i=2}^{upper} c_i^{j-i} (1/(j-i) - 1/(j-1))`
fn cross_terms(c: &CoefficientVector, j: u32, upper: u32) -> ExactRational {
    (2..=upper)
        .map(|i| {
            let w = ExactRational::ratio(1, j - i) - ExactRational::ratio(1, j - 1);
            c.get(i, j - i) * w
        })
        .sum()
}

/// Evaluates the three-case formula for `d_j`, `j in [2:N]`.
pub fn d_from_c(c: &CoefficientVector) -> DVector {
    let (n, m) = (c.n, c.m);
    let values = (2..=n)
        .map(|j| {
            if j <= m {
                let tail: ExactRational = (1..=n - j + 1)
                    .map(|idx| c.get(j, idx) * ExactRational::ratio(idx - 1, idx))
                    .sum();
                cross_terms(c, j, j - 1) + c.get(j - 1, 0) + tail
            } else if j == m + 1 {
                c.get(m, 0) + cross_terms(c, j, m)
            } else {
                cross_terms(c, j, m)
            }
        })
        .collect();
    DVector { n, values }
}

/// The first condition a coefficient vector fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Infeasibility {
    RowSum { j: u32, sum: ExactRational },
    Range { j: u32, idx: u32, value: ExactRational },
    SubsetEntropy { j: u32, lhs: ExactRational, rhs: ExactRational },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::RowSum { j, sum } => write!(f, "row j = {j} sums to {sum}, not 1"),
            Infeasibility::Range { j, idx, value } => {
                write!(f, "c_{j}^{idx} = {value} is outside [0, 1]")
            }
            Infeasibility::SubsetEntropy { j, lhs, rhs } => {
                write!(f, "subset-entropy condition fails at j = {j}: {lhs} < {rhs}")
            }
        }
    }
}

/// Checks row sums, entry ranges, and
/// `sum_{i=j}^N (N-i+1) d_i >= sum_{i=j}^m (N-i+1)` for all `j in [2:m]`.
pub fn feasibility(c: &CoefficientVector) -> std::result::Result<(), Infeasibility> {
    let (n, m) = (c.n, c.m);
    for (i, row) in c.rows.iter().enumerate() {
        let j = i as u32 + 1;
        let sum: ExactRational = row.iter().sum();
        if !sum.is_one() {
            return Err(Infeasibility::RowSum { j, sum });
        }
        for (idx, v) in row.iter().enumerate() {
            if v.is_negative() || v > &ExactRational::one() {
                return Err(Infeasibility::Range {
                    j,
                    idx: idx as u32,
                    value: v.clone(),
                });
            }
        }
    }
    let d = d_from_c(c);
    for j in 2..=m {
        let lhs: ExactRational = (j..=n).map(|i| ExactRational::from(n - i + 1) * d.get(i)).sum();
        let rhs = ExactRational::from((j..=m).map(|i| u64::from(n - i + 1)).sum::<u64>());
        if lhs < rhs {
            return Err(Infeasibility::SubsetEntropy { j, lhs, rhs });
        }
    }
    Ok(())
}

pub fn check_feasible(c: &CoefficientVector) -> bool {
    feasibility(c).is_ok()
}

/// The explicit coefficient assignment whose recursive bound equals the
/// closed form, for `K >= 2` and `m in [2:N-1]`.
pub fn paper_coefficients(n: u32, k: u32, m: u32) -> Result<CoefficientVector> {
    if k < 2 || m < 2 || m + 1 > n {
        return Err(Error::InvalidArgs(format!(
            "coefficient constructor needs K >= 2 and m in [2:N-1], got N = {n}, K = {k}, m = {m}"
        )));
    }
    let js = jstar(n, k, m)?;
    let mut c = CoefficientVector::zeros(n, m)?;
    let one = ExactRational::one();
    // weight carried by c_{j*-1}^1, the rest of that row goes to n = 0
    let split = if k == 2 {
        let t_js = ExactRational::ratio(
            u64::from(m - js) * u64::from(m + js - 1),
            2 * u64::from(js - 1) * u64::from(n - js),
        );
        ExactRational::ratio(u64::from(n - js) * u64::from(js - 1), n - js + 1) * (&one - t_js)
    } else {
        let tail: ExactRational = (js + 1..=m).map(|i| ExactRational::ratio(n - i + 1, i - 1)).sum();
        let y = ExactRational::ratio(js, u64::from(js - 1) * u64::from(n - js))
            * (ExactRational::ratio(u64::from(n - m) * u64::from(m - 1), m) - tail);
        ExactRational::ratio(
            u64::from(n - js) * u64::from(js - 1) * u64::from(js - 1),
            u64::from(js) * u64::from(n - js + 1),
        ) * y
    };
    for j in 1..=m {
        if j >= js {
            if k == 2 {
                let t = ExactRational::ratio(
                    u64::from(m - j) * u64::from(m + j - 1),
                    2 * u64::from(j - 1) * u64::from(n - j),
                );
                c.set(j, n - j + 1, &one - &t);
                c.set(j, 1, t);
            } else {
                c.set(j, 1, one.clone());
            }
        } else if j + 1 == js {
            c.set(j, 0, &one - &split);
            c.set(j, 1, split.clone());
        } else {
            c.set(j, 0, one.clone());
        }
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pirtrade_core::q;

    #[test]
    fn k2_assignment_for_3_2_2() {
        let c = paper_coefficients(3, 2, 2).unwrap();
        assert_eq!(c.get(1, 0), q(1, 2));
        assert_eq!(c.get(1, 1), q(1, 2));
        assert_eq!(c.get(2, 1), q(0, 1));
        assert_eq!(c.get(2, 2), q(1, 1));
        for idx in 2..=3 {
            assert_eq!(c.get(1, idx), q(0, 1));
        }
        assert_eq!(c.get(2, 0), q(0, 1));

        let d = d_from_c(&c);
        assert_eq!(d.get(2), q(1, 1));
        assert_eq!(d.get(3), q(0, 1));
        assert!(check_feasible(&c));
    }

    #[test]
    fn k3_assignment_for_5_3_4() {
        // j* = 3: rows 3 and 4 put all mass on n = 1, row 2 splits, row 1 on n = 0.
        let c = paper_coefficients(5, 3, 4).unwrap();
        assert_eq!(c.get(3, 1), q(1, 1));
        assert_eq!(c.get(4, 1), q(1, 1));
        assert_eq!(c.get(1, 0), q(1, 1));
        // y = 3/(2*2) * (3/4 - 2/3) = 1/16; split = (2*2*2)/(3*3) * y = 1/18
        assert_eq!(c.get(2, 1), q(1, 18));
        assert_eq!(c.get(2, 0), q(17, 18));
        assert!(check_feasible(&c));
    }

    #[test]
    fn all_mass_on_monotone_term() {
        // c_j^0 = 1 for every j: only the c_{j-1}^0 contributions survive.
        let n = 6;
        let m = 4;
        let mut c = CoefficientVector::zeros(n, m).unwrap();
        for j in 1..=m {
            c.set(j, 0, q(1, 1));
        }
        let d = d_from_c(&c);
        for j in 2..=m {
            assert_eq!(d.get(j), q(1, 1));
        }
        assert_eq!(d.get(m + 1), q(1, 1));
        assert_eq!(d.get(m + 2), q(0, 1));
    }

    #[test]
    fn m_equal_one_has_only_tail_cases() {
        let mut c = CoefficientVector::zeros(4, 1).unwrap();
        c.set(1, 1, q(1, 1));
        let d = d_from_c(&c);
        // j = 2 = m + 1: c_1^0 + (empty sum); j in [3:4]: empty sums
        assert!(d.values().iter().all(|v| v.is_zero()));
        assert!(check_feasible(&c));
    }

    #[test]
    fn infeasible_inputs() {
        let mut c = paper_coefficients(5, 2, 3).unwrap();
        let mut half = c.clone();
        half.set(1, 0, q(0, 1));
        half.set(1, 1, q(1, 2));
        assert!(matches!(feasibility(&half), Err(Infeasibility::RowSum { j: 1, .. })));

        c.set(1, 0, q(3, 2));
        c.set(1, 1, q(-1, 2));
        assert!(matches!(feasibility(&c), Err(Infeasibility::Range { .. })));

        // Row sums fine, but no weight on the subset-entropy terms.
        let mut lazy = CoefficientVector::zeros(5, 3).unwrap();
        for j in 1..=3 {
            lazy.set(j, 1, q(1, 1));
        }
        assert!(matches!(feasibility(&lazy), Err(Infeasibility::SubsetEntropy { .. })));
    }

    #[test]
    fn shape_checks() {
        assert!(CoefficientVector::new(3, 3, vec![]).is_err());
        assert!(CoefficientVector::new(3, 1, vec![vec![q(1, 1)]]).is_err());
        assert!(paper_coefficients(5, 1, 3).is_err());
        assert!(paper_coefficients(5, 2, 5).is_err());
    }
}
