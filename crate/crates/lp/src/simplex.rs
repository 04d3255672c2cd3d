//! Exact revised simplex.
//!
//! The primal `min c.x  s.t.  A x >= b, E x = r, x >= 0` is solved through
//! its dual `max b.u + r.w  s.t.  A^T u + E^T w + s = c, u, s >= 0, w free`,
//! whose basis has one row per primal variable; the relaxed LPs here have
//! far fewer variables than rows. With `c >= 0` the slack basis is feasible
//! and no first phase is needed. Entering and leaving choices follow
//! Bland's rule, so the method terminates.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RowSense {
    Ge,
    Eq,
}

/// A primal problem in column-index form.
#[derive(Debug, Clone)]
pub(crate) struct Primal {
    pub vars: usize,
    pub rows: Vec<(Vec<(usize, BigRational)>, RowSense, BigRational)>,
    pub cost: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal { x: Vec<BigRational>, value: BigRational },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub phase1_pivots: u64,
    pub pivots: u64,
    /// Rows of the basis (primal variables).
    pub basis_rows: usize,
    /// Columns of the dual system, slacks and artificials included.
    pub columns: usize,
}

type Col = Vec<(usize, BigRational)>;

struct Tableau {
    m: usize,
    cols: Vec<Col>,
    basis: Vec<usize>,
    position: Vec<Option<usize>>,
    binv: Vec<Vec<BigRational>>,
    xb: Vec<BigRational>,
}

enum Step {
    Optimal,
    Unbounded,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Tableau {
    fn new(cols: Vec<Col>, basis: Vec<usize>, rhs: Vec<BigRational>) -> Self {
        let m = rhs.len();
        let mut position = vec![None; cols.len()];
        for (i, &j) in basis.iter().enumerate() {
            position[j] = Some(i);
        }
        let binv = (0..m)
            .map(|i| (0..m).map(|r| if r == i { rat(1) } else { rat(0) }).collect())
            .collect();
        Self {
            m,
            cols,
            basis,
            position,
            binv,
            xb: rhs,
        }
    }

    fn duals(&self, cost: &[BigRational]) -> Vec<BigRational> {
        let mut pi = vec![BigRational::zero(); self.m];
        for (i, &j) in self.basis.iter().enumerate() {
            let f = &cost[j];
            if f.is_zero() {
                continue;
            }
            for (p, b) in pi.iter_mut().zip(&self.binv[i]) {
                if !b.is_zero() {
                    *p += f * b;
                }
            }
        }
        pi
    }

    fn reduced_cost(&self, j: usize, cost: &[BigRational], pi: &[BigRational]) -> BigRational {
        let mut d = cost[j].clone();
        for (r, v) in &self.cols[j] {
            if !pi[*r].is_zero() {
                d -= &pi[*r] * v;
            }
        }
        d
    }

    fn column_in_basis(&self, j: usize) -> Vec<BigRational> {
        (0..self.m)
            .map(|i| {
                let row = &self.binv[i];
                let mut acc = BigRational::zero();
                for (r, v) in &self.cols[j] {
                    if !row[*r].is_zero() {
                        acc += &row[*r] * v;
                    }
                }
                acc
            })
            .collect()
    }

    fn pivot(&mut self, p: usize, j: usize, dcol: &[BigRational]) {
        let piv = dcol[p].clone();
        for v in self.binv[p].iter_mut() {
            if !v.is_zero() {
                *v /= &piv;
            }
        }
        self.xb[p] /= &piv;
        let prow = self.binv[p].clone();
        let px = self.xb[p].clone();
        for (i, d) in dcol.iter().enumerate() {
            if i == p || d.is_zero() {
                continue;
            }
            for (v, pv) in self.binv[i].iter_mut().zip(&prow) {
                if !pv.is_zero() {
                    *v -= d * pv;
                }
            }
            self.xb[i] -= d * &px;
        }
        self.position[self.basis[p]] = None;
        self.basis[p] = j;
        self.position[j] = Some(p);
    }

    /// Minimizes `cost . z` over the current feasible basis, considering
    /// only columns with `enterable(j)`.
    fn run(
        &mut self,
        cost: &[BigRational],
        enterable: impl Fn(usize) -> bool,
        pivots: &mut u64,
        limit: u64,
    ) -> Result<Step> {
        loop {
            if *pivots >= limit {
                return Err(Error::IterationLimit(limit));
            }
            let pi = self.duals(cost);
            let entering = (0..self.cols.len()).find(|&j| {
                self.position[j].is_none()
                    && enterable(j)
                    && self.reduced_cost(j, cost, &pi).is_negative()
            });
            let Some(j) = entering else {
                return Ok(Step::Optimal);
            };
            let dcol = self.column_in_basis(j);
            let mut leave: Option<(usize, BigRational)> = None;
            for (i, d) in dcol.iter().enumerate() {
                if !d.is_positive() {
                    continue;
                }
                let ratio = &self.xb[i] / d;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((p, _)) = leave else {
                return Ok(Step::Unbounded);
            };
            self.pivot(p, j, &dcol);
            *pivots += 1;
        }
    }

    fn objective(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .zip(&self.xb)
            .map(|(&j, x)| &cost[j] * x)
            .sum()
    }
}

/// Dual columns with their objective weights (maximized).
fn dual_columns(p: &Primal) -> (Vec<Col>, Vec<BigRational>) {
    let mut cols = Vec::new();
    let mut obj = Vec::new();
    for (terms, sense, rhs) in &p.rows {
        cols.push(terms.clone());
        obj.push(rhs.clone());
        if *sense == RowSense::Eq {
            cols.push(terms.iter().map(|(r, v)| (*r, -v)).collect());
            obj.push(-rhs);
        }
    }
    for r in 0..p.vars {
        cols.push(vec![(r, rat(1))]);
        obj.push(BigRational::zero());
    }
    (cols, obj)
}

/// Whether `max obj.z, M z = 0, z >= 0` is unbounded, i.e. the primal
/// constraints admit no solution.
fn primal_infeasible(cols: &[Col], obj: &[BigRational], m: usize, limit: u64) -> Result<bool> {
    let slack0 = cols.len() - m;
    let mut t = Tableau::new(cols.to_vec(), (slack0..cols.len()).collect(), vec![rat(0); m]);
    let cost: Vec<BigRational> = obj.iter().map(|v| -v).collect();
    let mut pivots = 0;
    Ok(matches!(t.run(&cost, |_| true, &mut pivots, limit)?, Step::Unbounded))
}

pub(crate) fn solve(p: &Primal, limit: u64) -> Result<(Outcome, SolveStats)> {
    let m = p.vars;
    let (mut cols, obj) = dual_columns(p);
    let n_orig = cols.len();
    let slack0 = n_orig - m;
    let mut stats = SolveStats {
        basis_rows: m,
        ..SolveStats::default()
    };

    // Rows with a negative right-hand side are negated and get an artificial.
    let sign: Vec<bool> = p.cost.iter().map(|c| c.is_negative()).collect();
    if sign.iter().any(|s| *s) {
        for col in cols.iter_mut() {
            for (r, v) in col.iter_mut() {
                if sign[*r] {
                    *v = -v.clone();
                }
            }
        }
    }
    let rhs: Vec<BigRational> = p.cost.iter().map(|c| c.abs()).collect();
    let mut basis = Vec::with_capacity(m);
    for r in 0..m {
        if sign[r] {
            basis.push(cols.len());
            cols.push(vec![(r, rat(1))]);
        } else {
            basis.push(slack0 + r);
        }
    }
    stats.columns = cols.len();
    let is_art = |j: usize| j >= n_orig;
    let mut t = Tableau::new(cols, basis, rhs);

    if sign.iter().any(|s| *s) {
        let cost1: Vec<BigRational> = (0..t.cols.len())
            .map(|j| if is_art(j) { rat(1) } else { rat(0) })
            .collect();
        t.run(&cost1, |_| true, &mut stats.phase1_pivots, limit)?;
        if t.objective(&cost1).is_positive() {
            // The dual is infeasible: the primal is infeasible or unbounded.
            let (ocols, _) = dual_columns(p);
            let outcome = if primal_infeasible(&ocols, &obj, m, limit)? {
                Outcome::Infeasible
            } else {
                Outcome::Unbounded
            };
            return Ok((outcome, stats));
        }
        for i in 0..m {
            if !is_art(t.basis[i]) {
                continue;
            }
            let swap = (0..n_orig).find_map(|j| {
                if t.position[j].is_some() {
                    return None;
                }
                let d = t.column_in_basis(j);
                (!d[i].is_zero()).then_some((j, d))
            });
            if let Some((j, d)) = swap {
                t.pivot(i, j, &d);
                stats.phase1_pivots += 1;
            }
        }
    }

    let mut cost: Vec<BigRational> = obj.iter().map(|v| -v).collect();
    cost.resize(t.cols.len(), BigRational::zero());
    match t.run(&cost, |j| !is_art(j), &mut stats.pivots, limit)? {
        Step::Unbounded => Ok((Outcome::Infeasible, stats)),
        Step::Optimal => {
            let pi = t.duals(&cost);
            let x: Vec<BigRational> = pi
                .iter()
                .zip(&sign)
                .map(|(v, neg)| if *neg { v.clone() } else { -v })
                .collect();
            let value = -t.objective(&cost);
            Ok((Outcome::Optimal { x, value }, stats))
        }
    }
}

/// Exact check of `x` against every row, the bounds, and the claimed value.
pub(crate) fn certify(p: &Primal, x: &[BigRational], value: &BigRational) -> bool {
    if x.iter().any(|v| v.is_negative()) {
        return false;
    }
    let rows_ok = p.rows.iter().all(|(terms, sense, rhs)| {
        let lhs: BigRational = terms.iter().map(|(j, v)| v * &x[*j]).sum();
        match sense {
            RowSense::Ge => lhs >= *rhs,
            RowSense::Eq => lhs == *rhs,
        }
    });
    let obj: BigRational = p.cost.iter().zip(x).map(|(c, v)| c * v).sum();
    rows_ok && obj == *value
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn primal(vars: usize, rows: Vec<(Vec<(usize, i64)>, RowSense, i64)>, cost: Vec<i64>) -> Primal {
        Primal {
            vars,
            rows: rows
                .into_iter()
                .map(|(t, s, b)| (t.into_iter().map(|(j, v)| (j, rat(v))).collect(), s, rat(b)))
                .collect(),
            cost: cost.into_iter().map(rat).collect(),
        }
    }

    #[test]
    fn small_optimum() {
        // min x + 2y, x + y >= 3, x - y >= -1, x <= 5 (as -x >= -5)
        let p = primal(
            2,
            vec![
                (vec![(0, 1), (1, 1)], RowSense::Ge, 3),
                (vec![(0, 1), (1, -1)], RowSense::Ge, -1),
                (vec![(0, -1)], RowSense::Ge, -5),
            ],
            vec![1, 2],
        );
        let (out, _) = solve(&p, 1000).unwrap();
        let Outcome::Optimal { x, value } = out else { panic!("{out:?}") };
        assert_eq!(value, rat(3));
        assert!(certify(&p, &x, &value));
    }

    #[test]
    fn fractional_optimum_with_equality() {
        // min x, 3x - y = 0, x + y >= 2  ->  x = 1/2
        let p = primal(
            2,
            vec![
                (vec![(0, 3), (1, -1)], RowSense::Eq, 0),
                (vec![(0, 1), (1, 1)], RowSense::Ge, 2),
            ],
            vec![1, 0],
        );
        let (out, _) = solve(&p, 1000).unwrap();
        let Outcome::Optimal { x, value } = out else { panic!() };
        assert_eq!(value, r(1, 2));
        assert_eq!(x[0], r(1, 2));
        assert!(certify(&p, &x, &value));
    }

    #[test]
    fn infeasible_and_unbounded() {
        // x >= 1 and -x >= 0
        let p = primal(1, vec![(vec![(0, 1)], RowSense::Ge, 1), (vec![(0, -1)], RowSense::Ge, 0)], vec![1]);
        assert_eq!(solve(&p, 1000).unwrap().0, Outcome::Infeasible);
        // min -x, x >= 1
        let p = primal(1, vec![(vec![(0, 1)], RowSense::Ge, 1)], vec![-1]);
        assert_eq!(solve(&p, 1000).unwrap().0, Outcome::Unbounded);
        // min -x, x >= 1, -x >= 0: infeasible even though the objective is negative
        let p = primal(1, vec![(vec![(0, 1)], RowSense::Ge, 1), (vec![(0, -1)], RowSense::Ge, 0)], vec![-1]);
        assert_eq!(solve(&p, 1000).unwrap().0, Outcome::Infeasible);
    }

    #[test]
    fn negative_costs_with_bounded_optimum() {
        // min -x - y, -x >= -2, -y >= -3  ->  -5
        let p = primal(
            2,
            vec![(vec![(0, -1)], RowSense::Ge, -2), (vec![(1, -1)], RowSense::Ge, -3)],
            vec![-1, -1],
        );
        let (out, stats) = solve(&p, 1000).unwrap();
        let Outcome::Optimal { x, value } = out else { panic!() };
        assert_eq!(value, rat(-5));
        assert!(certify(&p, &x, &value));
        assert!(stats.phase1_pivots > 0);
    }
}
