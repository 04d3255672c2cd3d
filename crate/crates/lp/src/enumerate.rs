//! Constraint families of the relaxed LP.

use std::collections::BTreeSet;

use pirtrade_core::ExactRational;

use crate::constraint::{LinearConstraint, Sense};
use crate::var::{Side, VarId};

/// How submodular rows are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubmodularMode {
    /// One tuple per swap orbit `(a,b,c,d,e,f,g,h) ~ (a,d,g,b,e,h,c,f)`,
    /// duplicate rows removed.
    #[default]
    Canonical,
    /// Every tuple; only trivially-zero rows are dropped.
    Raw,
}

pub type Tuple = [u32; 8];

/// All `t in N^8` with `sum t <= n`, in lexicographic order.
pub fn tuples(n: u32) -> Vec<Tuple> {
    fn go(pos: usize, left: u32, cur: &mut Tuple, out: &mut Vec<Tuple>) {
        if pos == 8 {
            out.push(*cur);
            return;
        }
        for v in 0..=left {
            cur[pos] = v;
            go(pos + 1, left - v, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    go(0, n, &mut [0; 8], &mut out);
    out
}

pub fn swapped(t: &Tuple) -> Tuple {
    let [a, b, c, d, e, f, g, h] = *t;
    [a, d, g, b, e, h, c, f]
}

/// `v(a+b+c, d+e+f) + v(a+g+d, b+e+h) - v(a+b+c+d+g, e+f+h) - v(a, b+d+e) >= 0`
/// on the given side and message.
pub fn submodular_row(t: &Tuple, side: Side, k: u32) -> LinearConstraint {
    let [a, b, c, d, e, f, g, h] = *t;
    let v = |x, y| VarId::on(side, k, x, y);
    let one = ExactRational::one;
    LinearConstraint::new(
        [
            (v(a + b + c, d + e + f), one()),
            (v(a + g + d, b + e + h), one()),
            (v(a + b + c + d + g, e + f + h), -one()),
            (v(a, b + d + e), -one()),
        ],
        Sense::Ge,
        ExactRational::zero(),
        "submodular",
    )
}

/// Sides carrying free variables: `X` for `k in [1:K-1]`, `Y` for `k in [1:K]`.
fn free_sides(k_total: u32) -> impl Iterator<Item = (Side, u32)> {
    (1..k_total)
        .map(|k| (Side::X, k))
        .chain((1..=k_total).map(|k| (Side::Y, k)))
}

pub fn enumerate_submodular(n: u32, k_total: u32) -> Vec<LinearConstraint> {
    enumerate_submodular_with(n, k_total, SubmodularMode::Canonical)
}

pub fn enumerate_submodular_with(n: u32, k_total: u32, mode: SubmodularMode) -> Vec<LinearConstraint> {
    let all = tuples(n);
    let kept: Vec<&Tuple> = match mode {
        SubmodularMode::Canonical => all.iter().filter(|t| **t <= swapped(t)).collect(),
        SubmodularMode::Raw => all.iter().collect(),
    };
    let mut out = Vec::new();
    for (side, k) in free_sides(k_total) {
        let mut seen = BTreeSet::new();
        for t in &kept {
            let row = submodular_row(t, side, k);
            if row.is_trivial() {
                continue;
            }
            if mode == SubmodularMode::Canonical && !seen.insert(row.terms.clone()) {
                continue;
            }
            out.push(row);
        }
    }
    out
}

fn r(n: u64, d: u64) -> ExactRational {
    ExactRational::ratio(n, d)
}

/// Monotone, Decodable, Han, Privacy, Invariance and Boundary rows.
/// Nonnegativity is left to the variable bounds.
pub fn enumerate_structural(n: u32, k_total: u32) -> Vec<LinearConstraint> {
    let mut out = Vec::new();
    let one = ExactRational::one;
    let zero = ExactRational::zero;

    for (side, k) in free_sides(k_total) {
        for a in 0..n {
            for b in 1..=n - a {
                out.push(LinearConstraint::new(
                    [(VarId::on(side, k, a, b), one()), (VarId::on(side, k, a, b - 1), -one())],
                    Sense::Ge,
                    zero(),
                    "monotone",
                ));
            }
        }
    }
    for k in 1..=k_total {
        for a in 0..n {
            out.push(LinearConstraint::new(
                [(VarId::y(k, a, n - a), one()), (VarId::x(k, a, n - a), -one())],
                Sense::Ge,
                one(),
                "decodable",
            ));
        }
    }
    for k in 1..=k_total {
        for b in 1..n {
            out.push(LinearConstraint::new(
                [(VarId::y(k, 0, b), one()), (VarId::y(k, 0, n), -r(b.into(), n.into()))],
                Sense::Ge,
                zero(),
                "han",
            ));
        }
    }
    for k in 1..k_total {
        for a in 0..n {
            out.push(LinearConstraint::new(
                [(VarId::x(k, a, 1), one()), (VarId::y(k + 1, a, 1), -one())],
                Sense::Eq,
                zero(),
                "privacy",
            ));
        }
        for a in 1..=n {
            out.push(LinearConstraint::new(
                [(VarId::x(k, a, 0), one()), (VarId::y(k + 1, a, 0), -one())],
                Sense::Eq,
                zero(),
                "invariance",
            ));
        }
    }
    for a in 0..=n {
        for b in 0..=n - a {
            out.push(LinearConstraint::new(
                [(VarId::x(k_total, a, b), one())],
                Sense::Eq,
                zero(),
                "boundary",
            ));
        }
    }
    out
}
