//! The recursive (tilde) and closed-form (double-underline) bounds on
//! `(N - m) alpha + m beta`.

use std::collections::HashMap;

use num_bigint::BigInt;
use pirtrade_core::{beta0, ExactRational, HalfPlane};
use serde::{Serialize, Serializer};

use crate::coefficients::{feasibility, paper_coefficients, CoefficientVector};
use crate::jstar::jstar;
use crate::theorem3::Theorem3Case;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Tilde,
    Dunderline,
    Theorem3,
}

/// How a bound value was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// One of the values at `K = 1`, `m = 1` or `m = N`.
    Boundary,
    ClosedForm { jstar: u32 },
    /// The top-level coefficient vector of a tilde evaluation.
    Coefficients(CoefficientVector),
    Theorem3 { case: Theorem3Case },
}

/// A lower bound `ca * alpha + cb * beta >= value`; `(ca, cb)` is
/// `(N - m, m)` for tilde/dunderline results and `(1, m)` for the large-weight bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub n: u32,
    pub k: u32,
    /// The index `k` of a large-weight bound.
    pub target: Option<u32>,
    #[serde(serialize_with = "as_string")]
    pub m: BigInt,
    pub value: ExactRational,
    pub provenance: Provenance,
}

fn as_string<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl BoundResult {
    pub fn weights(&self) -> (ExactRational, ExactRational) {
        let m = ExactRational::from(self.m.clone());
        match self.kind {
            BoundKind::Theorem3 => (ExactRational::one(), m),
            _ => (ExactRational::from(self.n) - &m, m),
        }
    }

    pub fn label(&self) -> String {
        match (self.kind, self.target) {
            (BoundKind::Theorem3, Some(k)) => format!("theorem3(k={k} m={})", self.m),
            (BoundKind::Tilde, _) => format!("tilde(m={})", self.m),
            _ => format!("dunderline(m={})", self.m),
        }
    }

    pub fn to_halfplane(&self) -> Result<HalfPlane> {
        let (ca, cb) = self.weights();
        Ok(HalfPlane::new(ca, cb, self.value.clone(), self.label())?)
    }
}

fn check_args(n: u32, k: u32, m: u32) -> Result<()> {
    if n < 2 || k == 0 || m == 0 || m > n {
        return Err(Error::InvalidArgs(format!(
            "need N >= 2, K >= 1 and m in [1:N], got N = {n}, K = {k}, m = {m}"
        )));
    }
    Ok(())
}

/// The boundary values, which take precedence over every formula.
fn boundary(n: u32, k: u32, m: u32) -> Option<ExactRational> {
    if k == 1 {
        Some(ExactRational::one())
    } else if m == 1 {
        Some(ExactRational::from(k))
    } else if m == n {
        Some(ExactRational::from(n) * beta0(n, k))
    } else {
        None
    }
}

/// Memo of double-underline values for a fixed `N`, keyed on `(K, m)`.
#[derive(Debug, Clone)]
pub struct BoundTable {
    n: u32,
    memo: HashMap<(u32, u32), ExactRational>,
}

impl BoundTable {
    pub fn new(n: u32) -> Self {
        Self {
            n,
            memo: HashMap::new(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `dunderline_B(N, k, m)`.
    pub fn value(&mut self, k: u32, m: u32) -> Result<ExactRational> {
        check_args(self.n, k, m)?;
        if let Some(v) = boundary(self.n, k, m) {
            return Ok(v);
        }
        if let Some(v) = self.memo.get(&(k, m)) {
            return Ok(v.clone());
        }
        let js = jstar(self.n, k, m)?;
        let v = closed_form(self.n, k, m, js, self)?;
        self.memo.insert((k, m), v.clone());
        Ok(v)
    }
}

/// The two-case closed form at a given switching index, ignoring the
/// boundary values. Inner `K - 1` values come from `table`.
///
/// With `m = N` and `j* = N` this reduces to `N beta0`.
pub fn closed_form(
    n: u32,
    k: u32,
    m: u32,
    js: u32,
    table: &mut BoundTable,
) -> Result<ExactRational> {
    if k < 2 || js < 2 || js > m || m > n || table.n != n {
        return Err(Error::InvalidArgs(format!(
            "closed form needs K >= 2 and 2 <= j* <= m <= N, got N = {n}, K = {k}, m = {m}, j* = {js}"
        )));
    }
    let r = |a: u64, b: u64| ExactRational::ratio(a, b);
    let one = ExactRational::one();
    if k == 2 {
        let mut v = &one + r((m - js + 1).into(), n.into());
        for j in js..m {
            v += r(
                u64::from(m - j) * u64::from(m + j - 1),
                2 * u64::from(j) * u64::from(j - 1) * u64::from(n),
            );
        }
        let last = ExactRational::from(n - js)
            - r(u64::from(m - js) * u64::from(m + js - 1), 2 * u64::from(js - 1));
        return Ok(v + last / ExactRational::from(n - js + 1));
    }
    let mut v = one;
    for j in js..=m {
        v += table.value(k - 1, j)? / ExactRational::from(j);
    }
    let tail: ExactRational = (js + 1..=m).map(|i| r((n - i + 1).into(), (i - 1).into())).sum();
    let slack = r(u64::from(n - m) * u64::from(m - 1), m.into()) - tail;
    v += slack * table.value(k - 1, js - 1)? / ExactRational::from(n - js + 1);
    Ok(v)
}

/// `dunderline_B(N, K, m)`.
pub fn dunderline_b(n: u32, k: u32, m: u32) -> Result<ExactRational> {
    BoundTable::new(n).value(k, m)
}

pub fn dunderline_bound(n: u32, k: u32, m: u32) -> Result<BoundResult> {
    let mut table = BoundTable::new(n);
    let value = table.value(k, m)?;
    let provenance = if boundary(n, k, m).is_some() {
        Provenance::Boundary
    } else {
        Provenance::ClosedForm {
            jstar: jstar(n, k, m)?,
        }
    };
    Ok(BoundResult {
        kind: BoundKind::Dunderline,
        n,
        k,
        target: None,
        m: m.into(),
        value,
        provenance,
    })
}

/// The recursive bound with `c` at the top level `(K, m)` and the
/// constructor's coefficients at every inner level `(K', m')`.
pub fn tilde_b(n: u32, k: u32, m: u32, c: &CoefficientVector) -> Result<BoundResult> {
    tilde_b_with(n, k, m, |kk, mm| {
        if (kk, mm) == (k, m) {
            Ok(c.clone())
        } else {
            paper_coefficients(n, kk, mm)
        }
    })
}

/// The recursive bound
/// `1 + c_1^1 (K - 1) + sum_{j=2}^m sum_{n=1}^{N-j+1} c_j^n / (j + n - 1) * B(K - 1, j + n - 1)`
/// where `rule(K', m')` supplies the coefficient vector used at each
/// non-boundary level. Every vector is checked for feasibility.
pub fn tilde_b_with<F>(n: u32, k: u32, m: u32, mut rule: F) -> Result<BoundResult>
where
    F: FnMut(u32, u32) -> Result<CoefficientVector>,
{
    check_args(n, k, m)?;
    let mut memo = HashMap::new();
    let mut top = None;
    let value = tilde_rec(n, (k, m), (k, m), &mut rule, &mut memo, &mut top)?;
    Ok(BoundResult {
        kind: BoundKind::Tilde,
        n,
        k,
        target: None,
        m: m.into(),
        value,
        provenance: top.map_or(Provenance::Boundary, Provenance::Coefficients),
    })
}

fn tilde_rec<F>(
    n: u32,
    (k, m): (u32, u32),
    outer: (u32, u32),
    rule: &mut F,
    memo: &mut HashMap<(u32, u32), ExactRational>,
    top: &mut Option<CoefficientVector>,
) -> Result<ExactRational>
where
    F: FnMut(u32, u32) -> Result<CoefficientVector>,
{
    if let Some(v) = boundary(n, k, m) {
        return Ok(v);
    }
    if let Some(v) = memo.get(&(k, m)) {
        return Ok(v.clone());
    }
    let c = rule(k, m)?;
    if c.n() != n || c.m() != m {
        return Err(Error::Shape(format!(
            "level (K = {k}, m = {m}) got a vector for N = {}, m = {}",
            c.n(),
            c.m()
        )));
    }
    feasibility(&c).map_err(Error::Infeasible)?;

    let mut v = ExactRational::one() + c.get(1, 1) * ExactRational::from(k - 1);
    for j in 2..=m {
        for idx in 1..=n - j + 1 {
            let w = c.get(j, idx);
            if w.is_zero() {
                continue;
            }
            let target = j + idx - 1;
            let inner = tilde_rec(n, (k - 1, target), outer, rule, memo, top)?;
            v += w * inner / ExactRational::from(target);
        }
    }
    memo.insert((k, m), v.clone());
    if (k, m) == outer {
        *top = Some(c);
    }
    Ok(v)
}
