mod common;

use common::{bin, rows, run, schema, stderr, stdout, validate};
use std::fs;

fn value_of(out: &std::process::Output, col: usize) -> f64 {
    assert!(out.status.success(), "stderr: {}", stderr(out));
    rows(&stdout(out))[0][col].parse().unwrap()
}

#[test]
fn evaluation_examples() {
    let k = run(&["kappa", "--gamma", "2", "--a", "1", "--lambda", "1", "--mu", "0"]);
    assert!((value_of(&k, 4) - 0.761_594_2).abs() < 1e-7);
    assert!(stdout(&k).contains("gamma,a,lambda,mu,value,err_bound"));
    let c = run(&["cgamma", "--gamma", "2"]);
    assert!((value_of(&c, 2) - 1.386_294_4).abs() < 1e-7);
    let g = run(&["gauge", "--kind", "f_brownian", "--r", "0.3678794"]);
    assert!((value_of(&g, 3) - (-2f64).exp()).abs() < 1e-7);
}

#[test]
fn lists_expand_to_a_product() {
    let o = run(&[
        "kappa", "--gamma", "1.5", "--a", "0.5,1", "--lambda", "0,2", "--mu", "0,inf",
    ]);
    assert!(o.status.success());
    let r = rows(&stdout(&o));
    assert_eq!(r.len(), 8);
    assert!(r.iter().all(|row| row.len() == 6 && row[0] == "1.5"));
}

#[test]
fn tails_rows_carry_bounds() {
    let o = run(&["tails", "--kind", "mstar-tail", "--y", "1"]);
    let r = rows(&stdout(&o));
    assert!((r[0][4].parse::<f64>().unwrap() - 0.407_960_212_328_632_3).abs() < 1e-14);
    assert!(r[0][5].parse::<f64>().unwrap() <= 1e-12);
    let o = run(&["tails", "--kind", "ball-cdf", "--c", "0,2", "--y", "0.5"]);
    assert_eq!(rows(&stdout(&o)).len(), 2);
    // asymptotic forms have no bound
    let o = run(&["tails", "--kind", "small-ball", "--y", "0.1"]);
    assert_eq!(rows(&stdout(&o))[0][5], "");
}

#[test]
fn subordinator_is_a_drift_at_gamma_two() {
    let o = run(&["subordinator", "--gamma", "2", "--grid", "0,1,2", "--seed", "5"]);
    let vals: Vec<String> = rows(&stdout(&o)).into_iter().map(|r| r[2].clone()).collect();
    assert_eq!(vals, ["0", "2", "4"]);
}

#[test]
fn samples_are_byte_identical_for_a_seed() {
    let dir = tempfile::tempdir().unwrap();
    let path = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let go = |name: &str, seed: &str, threads: &str| {
        let o = run(&[
            "--threads",
            threads,
            "mstar",
            "--gamma",
            "2",
            "-n",
            "20000",
            "--seed",
            seed,
            "--out",
            &path(name),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        fs::read(path(name)).unwrap()
    };
    let a = go("a.csv", "11", "1");
    assert_eq!(a, go("b.csv", "11", "1"));
    assert_eq!(a, go("c.csv", "11", "4"));
    assert_ne!(a, go("d.csv", "12", "1"));
    assert!(String::from_utf8(a)
        .unwrap()
        .starts_with("# dist=mstar seed=11 stream=0 counter=0 count=20000 gamma=2"));
}

#[test]
fn mstar_mean_is_one() {
    let o = run(&["mstar", "--gamma", "2", "-n", "100000", "--seed", "1"]);
    let x: Vec<f64> = rows(&stdout(&o)).iter().map(|r| r[1].parse().unwrap()).collect();
    let n = x.len() as f64;
    let m = x.iter().sum::<f64>() / n;
    let se = (x.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt();
    assert_eq!(x.len(), 100_000);
    assert!((m - 1.0).abs() <= 3.0 * se, "mean {m} se {se}");
}

#[test]
fn missing_table_asks_for_build_table() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = run(&["mstar", "--gamma", "1.5", "-n", "10", "--seed", "1", "--table-dir", d]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("build-table"));
    let b = run(&["build-table", "--gamma", "1.5", "--table-dir", d]);
    assert!(b.status.success(), "{}", stderr(&b));
    assert!(dir.path().join("mstar_gamma1.5.csv").exists());
    let o = run(&["mstar", "--gamma", "1.5", "-n", "10", "--seed", "1", "--table-dir", d]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(rows(&stdout(&o)).len(), 10);
    let s = run(&[
        "shells",
        "--gamma",
        "1.5",
        "-n",
        "5",
        "--seed",
        "2",
        "--table-dir",
        d,
        "--radii",
        "0.3,0.2,0.1",
    ]);
    assert!(s.status.success(), "{}", stderr(&s));
    let out = stdout(&s);
    assert_eq!(out.lines().filter(|l| l.starts_with("# dist=shell_mass")).count(), 2);
    assert_eq!(rows(&out).len(), 10);
    let o = run(&[
        "mstar",
        "--gamma",
        "1.5",
        "-n",
        "10",
        "--seed",
        "1",
        "--table",
        "/nonexistent/t.csv",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["kappa", "--gamma", "2", "--a", "1", "--lambda", "1"],
        vec!["kappa", "--gamma", "3", "--a", "1", "--lambda", "1", "--mu", "0"],
        vec!["kappa", "--gamma", "2", "--a", "x", "--lambda", "1", "--mu", "0"],
        vec!["mstar", "--gamma", "2", "-n", "10"],
        vec!["gauge", "--kind", "f_brownian", "--r", "2"],
        vec!["tails", "--kind", "mstar-tail", "--gamma", "1.5", "--y", "1"],
        vec!["frobnicate"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn numerical_failure_exits_three() {
    // N_1(m ≤ 1e-4) underflows to zero, so its logarithm is unavailable
    let o = run(&["tails", "--kind", "debruijn", "--y", "0.0001"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn configuration_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# sampling defaults\ngamma = 2\nseed = 2\nn = 3\n").unwrap();
    let c = cfg.to_str().unwrap();
    let seed_of = |o: std::process::Output| {
        assert!(o.status.success(), "{}", stderr(&o));
        let first = stdout(&o).lines().next().unwrap().to_string();
        first
            .split(' ')
            .find_map(|t| t.strip_prefix("seed="))
            .unwrap()
            .to_string()
    };
    let env_only = bin()
        .env("STABLETREE_SEED", "1")
        .env("STABLETREE_GAMMA", "2")
        .args(["mstar", "-n", "3"])
        .output()
        .unwrap();
    assert_eq!(seed_of(env_only), "1");
    let file = bin()
        .env("STABLETREE_SEED", "1")
        .args(["--config", c, "mstar"])
        .output()
        .unwrap();
    assert_eq!(seed_of(file), "2");
    let flag = bin()
        .env("STABLETREE_SEED", "1")
        .args(["--config", c, "mstar", "--seed", "3"])
        .output()
        .unwrap();
    assert_eq!(seed_of(flag), "3");

    fs::write(&cfg, "seed = 2\ncolour = blue\n").unwrap();
    let o = run(&["--config", c, "cgamma", "--gamma", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("colour"));
    let o = bin()
        .env("STABLETREE_COLOUR", "blue")
        .args(["cgamma", "--gamma", "2"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn injected_kappa_sign_bug_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = run(&[
        "verify",
        "--criteria",
        "1,2,3",
        "--inject-fault",
        "kappa-sign",
        "--report",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(
        err.contains("criterion  1 FAIL") && err.contains("criterion  3 PASS"),
        "{err}"
    );
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(report).unwrap()).unwrap();
    validate(&json, &schema(), "$").unwrap();
    assert_eq!(json["passed"], false);
    assert_eq!(json["faults"][0], "kappa-sign");
}

#[test]
fn smoke_verify_passes_quickly_with_a_valid_report() {
    let start = std::time::Instant::now();
    let o = run(&["verify", "--profile", "smoke"]);
    let took = start.elapsed();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(took.as_secs() < 60, "smoke profile took {took:?}");
    let json: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    validate(&json, &schema(), "$").unwrap();
    assert_eq!(json["criteria"].as_array().unwrap().len(), 11);
    assert_eq!(json["passed"], true);
    assert_eq!(json["profile"], "smoke");
}

#[test]
fn schema_validator_rejects_bad_reports() {
    let bad = serde_json::json!({"tool": "stabletree", "version": "0", "profile": "huge", "seed": 1,
        "faults": [], "criteria": [], "passed": true});
    assert!(validate(&bad, &schema(), "$").is_err());
    let extra = serde_json::json!({"tool": "stabletree", "version": "0", "profile": "desk", "seed": 1,
        "faults": [], "criteria": [], "passed": true, "elapsed": 3});
    assert!(validate(&extra, &schema(), "$").is_err());
}

#[test]
fn crt_commands_emit_csv() {
    let o = run(&[
        "crt-balls",
        "--cells",
        "1024",
        "--trees",
        "2",
        "--centers",
        "5",
        "--r",
        "0.1",
        "--seed",
        "3",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("# seed=3") && out.contains("tree_id,center,r,mass"));
    assert_eq!(rows(&out).len(), 10);
    let o = run(&[
        "crt-extremal",
        "--cells",
        "2048",
        "--replicas",
        "2",
        "--radii",
        "0.05,0.1",
        "--seed",
        "3",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(rows(&stdout(&o)).len(), 4);
    let o = run(&[
        "crt-extremal",
        "--cells",
        "1024",
        "--replicas",
        "1",
        "--radii",
        "0.001",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2), "radius below the grid resolution");
}
