//! The switching index `j*` of the closed-form bound.

use pirtrade_core::ExactRational;

use crate::{Error, Result};

/// `j*(N, K, m)` for `K >= 2`, `m in [2:N]`.
///
/// * `K = 2`: `max{2, ceil((N + 1/2) - sqrt((N - m)(N + m - 1) + 1/4))}`,
///   evaluated over the integers.
/// * `K >= 3`: the least `j in [2:m]` with
///   `sum_{i=j+1}^m (N - i + 1)/(i - 1) <= (m - 1)(N - m)/m`.
///
/// `m = N` is accepted (giving `j* = N`) so the closed form can be probed at
/// its boundary.
pub fn jstar(n: u32, k: u32, m: u32) -> Result<u32> {
    if k < 2 || m < 2 || m > n {
        return Err(Error::InvalidArgs(format!(
            "j* needs K >= 2 and m in [2:N], got N = {n}, K = {k}, m = {m}"
        )));
    }
    if k == 2 {
        return Ok(jstar_k2(n, m));
    }
    let rhs = ExactRational::ratio(u64::from(m - 1) * u64::from(n - m), m);
    // The tail sum grows as j decreases, so scan downward from m.
    let mut tail = ExactRational::zero();
    let mut best = m;
    for j in (2..m).rev() {
        tail += ExactRational::ratio(n - j, j);
        if tail > rhs {
            break;
        }
        best = j;
    }
    Ok(best)
}

/// With `D = 4(N - m)(N + m - 1) + 1` the target is `ceil((2N + 1 - sqrt(D)) / 2)`,
/// i.e. the least integer `t` with `2N + 1 - 2t <= sqrt(D)`.
fn jstar_k2(n: u32, m: u32) -> u32 {
    let d = 4 * u64::from(n - m) * u64::from(n + m - 1) + 1;
    let top = 2 * i64::from(n) + 1;
    let t = (0..)
        .find(|t| {
            let gap = top - 2 * t;
            gap <= 0 || (gap * gap) as u64 <= d
        })
        .expect("gap eventually non-positive");
    (t as u32).max(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2_float(n: u32, m: u32) -> u32 {
        let r = f64::from((n - m) * (n + m - 1));
        let v = (f64::from(n) + 0.5 - (r + 0.25).sqrt()).ceil() as u32;
        v.max(2)
    }

    fn k3_brute(n: u32, m: u32) -> u32 {
        let rhs = ExactRational::ratio(u64::from(m - 1) * u64::from(n - m), m);
        (2..=m)
            .find(|&j| {
                let s: ExactRational =
                    (j + 1..=m).map(|i| ExactRational::ratio(n - i + 1, i - 1)).sum();
                s <= rhs
            })
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(jstar(3, 2, 2).unwrap(), 2);
        assert_eq!(jstar(5, 3, 4).unwrap(), 3);
        assert_eq!(jstar(7, 5, 7).unwrap(), 7);
        assert_eq!(jstar(7, 2, 7).unwrap(), 7);
    }

    #[test]
    fn k2_matches_float_away_from_ties() {
        for n in 3..=60 {
            for m in 2..n {
                assert_eq!(jstar(n, 2, m).unwrap(), k2_float(n, m), "N={n} m={m}");
            }
        }
    }

    #[test]
    fn k3_matches_forward_scan() {
        for n in 3..=20 {
            for m in 2..=n {
                let j = jstar(n, 4, m).unwrap();
                assert_eq!(j, k3_brute(n, m));
                assert!(j <= m);
            }
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(jstar(5, 1, 3).is_err());
        assert!(jstar(5, 3, 1).is_err());
        assert!(jstar(5, 3, 6).is_err());
    }
}
