use std::process::{Command, Output};

fn pirtrade(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pirtrade"))
        .args(args)
        .env_remove("PIRTRADE_VERIFY_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn construction_costs_are_printed() {
    let o = pirtrade(&["simulate", "--construction", "A", "--k", "3", "--checks", "costs"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("costs: (5/2, 7/8)"));

    let o = pirtrade(&["simulate", "--construction", "B", "--n", "3", "--t", "2", "--checks", "correctness,privacy"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("correctness: pass") && s.contains("privacy: pass"));

    let o = pirtrade(&[
        "simulate", "--construction", "cyclic", "--base", "A", "--base-k", "2", "--m", "3", "--checks", "costs",
        "--format", "csv",
    ]);
    assert_eq!(stdout(&o), "quantity,status,exact,decimal\nalpha,measured,1,1.000000\nbeta,measured,1/2,0.500000\n");
}

#[test]
fn verification_budget_is_a_guard() {
    let o = Command::new(env!("CARGO_BIN_EXE_pirtrade"))
        .args(["simulate", "--construction", "A", "--k", "3", "--checks", "correctness"])
        .env("PIRTRADE_VERIFY_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(pirtrade(&["achievable", "--n", "5", "--k", "3", "--families", ""]).status.code(), Some(1));
    assert_eq!(pirtrade(&["achievable", "--n", "5", "--k", "3", "--families", "nope"]).status.code(), Some(1));
    assert_eq!(pirtrade(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(pirtrade(&["bounds", "--n", "3"]).status.code(), Some(1));
    assert_eq!(pirtrade(&["--help"]).status.code(), Some(0));
}

#[test]
fn large_lp_is_refused() {
    let o = pirtrade(&["lp", "--n", "10", "--k", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("O(K N^8)"));
}

#[test]
fn lp_reports_the_exact_optimum() {
    let o = pirtrade(&["lp", "--n", "2", "--k", "2", "--a0", "1", "--b0", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "optimal");
    assert_eq!(v["variables"]["census"], 24);
    // Weights (1, 1) = (N - m, m) at m = 1, where the explicit bound is K.
    assert_eq!(v["explicit"]["m"], 1);
    let value: pirtrade_core::ExactRational = v["value"]["exact"].as_str().unwrap().parse().unwrap();
    assert!(value >= pirtrade_core::ExactRational::from(2u32));
}

#[test]
fn lp_dump_is_written() {
    let dir = std::env::temp_dir().join(format!("pirtrade-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lp.txt");
    let o = pirtrade(&["lp", "--n", "2", "--k", "2", "--dump", path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("\\ relaxed entropic LP") && text.ends_with("End\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn achievable_and_bounds_tables() {
    let o = pirtrade(&["achievable", "--n", "5", "--k", "3", "--families", "mds"]);
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 6);
    assert!(s.starts_with("family,label,alpha,beta,alpha_exact,beta_exact,on_hull\n"));

    let o = pirtrade(&["achievable", "--n", "7", "--k", "4", "--families", "gmds,prop3,cyclic:<mds,3>"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("cyclic(baseN=3 M=7)<mds("));

    let s = stdout(&pirtrade(&["bounds", "--n", "5", "--k", "3"]));
    assert!(s.contains("dunderline,1,4,1,3.000000,3,dunderline(m=1)"));
    assert!(s.contains("dunderline,5,0,5,1.240000,31/25,dunderline(m=5)"));
    let s = stdout(&pirtrade(&["bounds", "--n", "3", "--k", "2"]));
    assert!(s.contains(",11/6,dunderline(m=2)"));
}

#[test]
fn curve_output_is_deterministic_and_writes_files() {
    let args = ["curve", "--n", "5", "--k", "3", "--grid", "20", "--format", "json"];
    let a = pirtrade(&args);
    let b = pirtrade(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 20);

    let path = std::env::temp_dir().join(format!("pirtrade-curve-{}.csv", std::process::id()));
    let o = pirtrade(&["curve", "--n", "5", "--k", "3", "--grid", "20", "--out", path.to_str().unwrap()]);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("max ratio"));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("alpha,beta_upper,beta_lower,ratio,"));
    assert_eq!(text.lines().count(), 21);
    std::fs::remove_file(&path).unwrap();
}
