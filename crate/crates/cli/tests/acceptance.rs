//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p pirtrade-cli --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use clap::Parser;
use num_bigint::BigInt;
use pirtrade_bounds::{
    check_feasible, dunderline_b, lower_bound_halfplanes, paper_coefficients, theorem3_bound, tilde_b,
};
use pirtrade_cli::{run, Cli};
use pirtrade_core::{
    beta0, cyclic_transform_point, gmds_points, lower_hull, mds_points, prop3_points, q,
    sun_jafar_point, two_approx_check, uncoded_points, ExactRational, SystemParams, TradeoffPoint,
};
use pirtrade_lp::{lp_bound, variable_census};
use pirtrade_protocols::{
    build_construction_a, build_construction_b, cyclic_compose, measure_costs,
    measure_costs_enumerated, verify_correctness, verify_privacy, PirProtocol, DEFAULT_BUDGET,
};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(n: u32, k: u32) -> SystemParams {
    SystemParams::new(n, k).unwrap()
}

fn find(points: &[TradeoffPoint], key: &[(&str, u64)]) -> TradeoffPoint {
    points
        .iter()
        .find(|p| key.iter().all(|(name, v)| p.label.param(name) == Some(*v)))
        .cloned()
        .unwrap_or_else(|| panic!("no point with {key:?}"))
}

fn int(v: u32) -> ExactRational {
    ExactRational::from(v)
}

/// `(1/n) sum_{i<k} r^i`, summed from scratch.
fn geometric_over(n: u32, k: u32, r: ExactRational) -> ExactRational {
    let mut term = ExactRational::one();
    let mut total = ExactRational::zero();
    for _ in 0..k {
        total += term.clone();
        term *= r.clone();
    }
    total / int(n)
}

/// `(2^t - 1) / 2^t`
fn fraction(t: u32) -> ExactRational {
    let p = BigInt::from(1u8) << t as usize;
    ExactRational::ratio(&p - 1, p)
}

fn costs(p: &PirProtocol) -> (ExactRational, ExactRational) {
    let r = measure_costs(p).unwrap();
    (r.alpha_bar, r.beta_bar)
}

fn c1_baseline() -> Check {
    let b = beta0(5, 3);
    ensure(b == q(31, 125) && b.to_decimal(3) == "0.248", || format!("beta0(5,3) = {b}"))
}

fn c2_construction_a() -> Check {
    let p = build_construction_a(3).unwrap();
    let got = costs(&p);
    let e = measure_costs_enumerated(&p, DEFAULT_BUDGET).unwrap();
    ensure(got == (q(5, 2), q(7, 8)), || format!("costs {got:?}"))?;
    ensure((e.alpha_bar, e.beta_bar) == got, || "enumerated costs differ".into())?;
    ensure(verify_correctness(&p, DEFAULT_BUDGET).unwrap(), || "correctness".into())?;
    ensure(verify_privacy(&p).unwrap(), || "privacy".into())
}

fn c3_construction_b() -> Check {
    let p = build_construction_b(3, 2).unwrap();
    let e = measure_costs_enumerated(&p, DEFAULT_BUDGET).unwrap();
    let got = (e.alpha_bar, e.beta_bar);
    ensure(got == (q(2, 1), q(3, 4)), || format!("costs {got:?}"))?;
    ensure(verify_correctness(&p, DEFAULT_BUDGET).unwrap(), || "correctness".into())?;
    ensure(verify_privacy(&p).unwrap(), || "privacy".into())?;
    // The MDS point quoted for comparison: (N, K) = (3, 4), T = 2.
    let mds = find(&mds_points(&params(3, 4)).unwrap(), &[("T", 2)]);
    ensure(mds.alpha == got.0 && mds.beta.to_decimal(3) == "0.802", || format!("mds point {mds:?}"))?;
    ensure(got.1 < mds.beta, || "B does not beat MDS".into())
}

fn c4_round_robin_scaling() -> Check {
    let mut bases: Vec<(PirProtocol, (ExactRational, ExactRational))> = Vec::new();
    for k in 1..=4 {
        // Two servers, alpha = K - 1/2, beta = (2^K - 1)/2^K.
        bases.push((build_construction_a(k).unwrap(), (int(k) - q(1, 2), fraction(k))));
    }
    for n in 2..=4 {
        for t in 1..=2 {
            bases.push((build_construction_b(n, t).unwrap(), (int(t), fraction(t))));
        }
    }
    let mut count = 0;
    for (base, expected) in &bases {
        ensure(costs(base) == *expected, || format!("{} base costs", base.name))?;
        for m in base.n..=7 {
            let c = cyclic_compose(base, m).unwrap();
            let scale = ExactRational::ratio(base.n, m);
            let want = (scale.clone() * expected.0.clone(), scale * expected.1.clone());
            ensure(costs(&c) == want, || format!("{} costs", c.name))?;
            if c.key_space_size().is_some_and(|s| s <= 1 << 12) {
                let e = measure_costs_enumerated(&c, DEFAULT_BUDGET).unwrap();
                ensure((e.alpha_bar, e.beta_bar) == want, || format!("{} enumerated", c.name))?;
            }
            ensure(verify_privacy(&c).unwrap(), || format!("{} privacy", c.name))?;
            count += 1;
        }
    }
    ensure(count > 40, || format!("only {count} compositions"))
}

fn c5_spread_identities() -> Check {
    for m in 2..=8u32 {
        for n in 1..=m {
            for k in 1..=8u32 {
                // Sun-Jafar on n servers spread over m: uncoded storage with T = n.
                let moved = cyclic_transform_point(&sun_jafar_point(&params(n, k)), n, m).unwrap();
                let want = (ExactRational::ratio(k * n, m), geometric_over(m, k, ExactRational::ratio(1, n)));
                ensure((moved.alpha.clone(), moved.beta.clone()) == want, || format!("app1 N={n} M={m} K={k}"))?;
                let unc = find(&uncoded_points(&params(m, k)).unwrap(), &[("T", n.into())]);
                ensure(moved.same_costs(&unc), || format!("app1 family N={n} M={m} K={k}"))?;
                if n < 2 {
                    continue;
                }
                // MDS with parameter t on n servers spread over m: generalized MDS (t, n).
                let mds = mds_points(&params(n, k)).unwrap();
                let gmds = gmds_points(&params(m, k)).unwrap();
                for t in 1..=n {
                    let moved = cyclic_transform_point(&mds[(t - 1) as usize], n, m).unwrap();
                    let want = (
                        ExactRational::ratio(k * n, m * t),
                        geometric_over(m, k, ExactRational::ratio(t, n)),
                    );
                    ensure((moved.alpha.clone(), moved.beta.clone()) == want, || {
                        format!("app2 N={n} M={m} K={k} T={t}")
                    })?;
                    let g = find(&gmds, &[("T1", t.into()), ("T2", n.into())]);
                    ensure(moved.same_costs(&g), || format!("app2 family N={n} M={m} K={k} T={t}"))?;
                }
            }
        }
    }
    Ok(())
}

fn c6_grouped_parity_point() -> Check {
    for n in 2..=10u32 {
        for k in 2..=10u32 {
            let p = params(n, k);
            let b = find(&prop3_points(&p).unwrap()[1..], &[("T", k.into())]);
            let g = find(&gmds_points(&p).unwrap(), &[("T1", 1), ("T2", 2)]);
            ensure(b.same_costs(&g), || format!("N={n} K={k}"))?;
            let want = (ExactRational::ratio(2 * k, n), geometric_over(n, k, q(1, 2)));
            ensure((b.alpha.clone(), b.beta.clone()) == want, || format!("closed form N={n} K={k}"))?;
        }
    }
    Ok(())
}

fn c7_relaxed_lp() -> Check {
    for n in 2..=6u32 {
        for k in 1..=4u32 {
            let c = variable_census(n, k).len() as u32;
            ensure(c == k * (n + 1) * (n + 2), || format!("census N={n} K={k}: {c}"))?;
        }
    }
    let v = lp_bound(5, 3, int(0), int(1)).map_err(|e| e.to_string())?;
    ensure(v == q(31, 125), || format!("lp_bound(5,3,0,1) = {v}"))
}

fn c8_boundaries() -> Check {
    for n in 2..=10u32 {
        for k in 1..=8u32 {
            let m1 = dunderline_b(n, k, 1).unwrap();
            let mn = dunderline_b(n, k, n).unwrap();
            ensure(m1 == int(k), || format!("B({n},{k},1) = {m1}"))?;
            ensure(mn == int(n) * beta0(n, k), || format!("B({n},{k},N) = {mn}"))?;
            if k < 2 {
                continue;
            }
            let t = theorem3_bound(n, k, 1).unwrap().value;
            let nk = ExactRational::from(BigInt::from(n).pow(k));
            let want = int(k) + int(n - 2) * (nk - ExactRational::one()) / int(n * (n - 1));
            ensure(t == want, || format!("theorem3({n},{k},1) = {t}, want {want}"))?;
        }
    }
    Ok(())
}

fn c9_reference_coefficients() -> Check {
    for k in 2..=3u32 {
        for n in 3..=8u32 {
            for m in 2..n {
                let c = paper_coefficients(n, k, m).unwrap();
                ensure(check_feasible(&c), || format!("infeasible N={n} K={k} m={m}"))?;
                let tilde = tilde_b(n, k, m, &c).unwrap().value;
                let dd = dunderline_b(n, k, m).unwrap();
                ensure(tilde == dd, || format!("N={n} K={k} m={m}: {tilde} != {dd}"))?;
            }
        }
    }
    Ok(())
}

fn all_family_points(n: u32, k: u32) -> Vec<TradeoffPoint> {
    let p = params(n, k);
    let mut out = Vec::new();
    out.extend(mds_points(&p).unwrap());
    out.extend(uncoded_points(&p).unwrap());
    out.extend(gmds_points(&p).unwrap());
    out.push(sun_jafar_point(&p));
    if k >= 2 {
        out.extend(prop3_points(&p).unwrap());
    }
    out
}

/// Family points for `(n, k)`, including every family spread from fewer servers.
fn achievable_points(n: u32, k: u32) -> Vec<TradeoffPoint> {
    let mut out = all_family_points(n, k);
    for n0 in 2..n {
        for pt in all_family_points(n0, k) {
            out.push(cyclic_transform_point(&pt, n0, n).unwrap());
        }
    }
    out
}

fn c10_dominance() -> Check {
    for (n, k) in [(2u32, 2u32), (3, 2), (3, 3)] {
        let points = achievable_points(n, k);
        ensure(lower_hull(&points).is_ok(), || "hull".into())?;
        for m in 1..=n {
            let (a0, b0) = (int(n - m), int(m));
            let best = points
                .iter()
                .map(|p| a0.clone() * p.alpha.clone() + b0.clone() * p.beta.clone())
                .min()
                .unwrap();
            let lp = lp_bound(n, k, a0, b0).map_err(|e| e.to_string())?;
            let explicit = dunderline_b(n, k, m).unwrap();
            ensure(best >= lp && lp >= explicit, || {
                format!("N={n} K={k} m={m}: hull {best}, lp {lp}, explicit {explicit}")
            })?;
        }
    }
    Ok(())
}

/// Simulated codes with `n` servers and `k` messages.
fn simulated(n: u32, k: u32) -> Vec<PirProtocol> {
    let spread = |p: PirProtocol| if p.n == n { p } else { cyclic_compose(&p, n).unwrap() };
    let mut out = vec![spread(build_construction_a(k).unwrap())];
    for n0 in 2..=n {
        if k.is_multiple_of(n0 - 1) {
            out.push(spread(build_construction_b(n0, k / (n0 - 1)).unwrap()));
        }
    }
    out
}

fn c11_soundness() -> Check {
    let mut checked = 0usize;
    for n in 2..=8u32 {
        for k in 2..=6u32 {
            let hps = lower_bound_halfplanes(n, k).unwrap();
            let mut pairs: Vec<(String, ExactRational, ExactRational)> = achievable_points(n, k)
                .into_iter()
                .map(|p| (p.label.to_string(), p.alpha, p.beta))
                .collect();
            for proto in simulated(n, k) {
                let (a, b) = costs(&proto);
                pairs.push((proto.name.clone(), a, b));
            }
            for (label, a, b) in &pairs {
                for h in &hps {
                    ensure(h.satisfied_by(a, b), || format!("N={n} K={k}: {label} violates {}", h.label))?;
                    checked += 1;
                }
            }
        }
    }
    ensure(checked > 10_000, || format!("only {checked} checks"))
}

fn cli(args: &[&str]) -> pirtrade_cli::Outcome {
    let mut full = vec!["pirtrade"];
    full.extend_from_slice(args);
    run(&Cli::try_parse_from(full).unwrap()).unwrap()
}

fn c12_two_approximation() -> Check {
    for n in 2..=12u32 {
        for k in 1..=12u32 {
            ensure(two_approx_check(&params(n, k)).unwrap().dominated_by_2x, || format!("N={n} K={k}"))?;
        }
    }
    for (n, k) in [("20", "8"), ("8", "20"), ("20", "20")] {
        let out = cli(&["curve", "--n", n, "--k", k, "--format", "csv"]);
        ensure(out.passed, || format!("ratio below 1 for ({n},{k})"))?;
        let mut rows = out.body.lines().skip(1);
        let ratios: Vec<ExactRational> = rows
            .by_ref()
            .map(|l| l.split(',').nth(7).unwrap().parse().unwrap())
            .collect();
        ensure(ratios.len() == 200, || format!("{} grid points", ratios.len()))?;
        let max = ratios.iter().max().unwrap();
        ensure(*max >= ExactRational::one() && max.to_f64().is_finite(), || format!("max ratio {max}"))?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    check: fn() -> Check,
}

fn main() {
    let s = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "baseline beta0(5,3) = 31/125", limit: s(1), check: c1_baseline },
        Criterion { id: 2, name: "construction A (K=3): (5/2, 7/8), correct and private", limit: s(1), check: c2_construction_a },
        Criterion { id: 3, name: "construction B (N=3,T=2): (2, 3/4) beats MDS (2, 0.802)", limit: s(1), check: c3_construction_b },
        Criterion { id: 4, name: "round-robin scaling of simulated codes, M <= 7", limit: s(30), check: c4_round_robin_scaling },
        Criterion { id: 5, name: "spread capacity code = uncoded, spread MDS = gmds, N <= M <= 8", limit: s(1), check: c5_spread_identities },
        Criterion { id: 6, name: "grouped-parity point at T=K equals gmds (1,2), N, K <= 10", limit: s(1), check: c6_grouped_parity_point },
        Criterion { id: 7, name: "relaxed LP (5,3,0,1) = 31/125; variable census", limit: s(600), check: c7_relaxed_lp },
        Criterion { id: 8, name: "closed-form boundaries and large-weight identity", limit: s(1), check: c8_boundaries },
        Criterion { id: 9, name: "reference coefficients feasible, tilde = dunderline", limit: s(10), check: c9_reference_coefficients },
        Criterion { id: 10, name: "dominance: hull >= LP >= explicit", limit: s(1800), check: c10_dominance },
        Criterion { id: 11, name: "soundness sweep of all halfplanes, N <= 8, K <= 6", limit: s(60), check: c11_soundness },
        Criterion { id: 12, name: "2-approximation and large ratio curves", limit: s(60), check: c12_two_approximation },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.check))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".to_string());
                Err(msg)
            });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= c.limit, || format!("took {elapsed:.2?}, limit {:?}", c.limit))
        });
        match &result {
            Ok(()) => println!("criterion {:>2}: PASS  {} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
