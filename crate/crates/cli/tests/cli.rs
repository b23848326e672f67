use std::process::{Command, Output};

use serde_json::Value;

fn effopt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effopt")).args(args).env_remove("EFFOPT_PREC").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn d(v: &Value) -> (i64, i64) {
    (v["m"].as_str().unwrap().parse().unwrap(), v["e"].as_i64().unwrap())
}

#[test]
fn eval_f1_is_exact() {
    let o = effopt(&["eval", "f1", "--at", "2,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "7/2");
    let o = effopt(&["eval", "f1", "--at", "0,-2"]);
    assert_eq!(stdout(&o).trim(), "3");
}

#[test]
fn eval_gstar_vanishes_inside() {
    let o = effopt(&["eval", "gstar", "--xi-star", "1/2", "--at", "1/4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "0 (exact)");
}

#[test]
fn eval_f2_encloses_one() {
    let o = effopt(&["eval", "f2", "--at", "0,1", "--alpha", "0.1", "--prec", "40", "--json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let (lo, hi) = (d(&v["lo"]), d(&v["hi"]));
    let f = |(m, e): (i64, i64)| m as f64 * 2f64.powi(e as i32);
    assert!(f(lo) <= 1.0 && 1.0 <= f(hi));
}

#[test]
fn env_precision_is_read() {
    let o = Command::new(env!("CARGO_BIN_EXE_effopt"))
        .args(["eval", "f2", "--at", "1,1", "--json"])
        .env("EFFOPT_PREC", "20")
        .output()
        .unwrap();
    let narrow = effopt(&["eval", "f2", "--at", "1,1", "--json", "--prec", "80"]);
    let w = |o: &Output| {
        let v: Value = serde_json::from_str(&stdout(o)).unwrap();
        let (m, e) = d(&v["width"]);
        m as f64 * 2f64.powi(e as i32)
    };
    assert!(w(&o) > w(&narrow));
}

#[test]
fn inexact_literals_are_rejected() {
    for args in [&["eval", "f1", "--at", "0.1,1"][..], &["eval", "f1", "--at", "1/3,0"], &["eval", "f1", "--at", "1"]] {
        let o = effopt(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn validation_errors_exit_one() {
    assert_eq!(effopt(&["eval", "f2", "--at", "0,1", "--alpha", "-1"]).status.code(), Some(1));
    assert_eq!(effopt(&["optimize", "f1", "--policy", "fixed:2"]).status.code(), Some(1));
    assert_eq!(effopt(&["optimize", "f1", "--rect", "1,1;-1,1"]).status.code(), Some(1));
    assert_eq!(effopt(&["optimize", "f1", "--start", "3,0"]).status.code(), Some(1));
    assert_eq!(effopt(&["optimize", "gstar"]).status.code(), Some(1));
    assert_eq!(effopt(&["experiment", "nonsense"]).status.code(), Some(1));
    assert_eq!(effopt(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(effopt(&["--help"]).status.code(), Some(0));
}

#[test]
fn optimize_case_one_trace() {
    let o = effopt(&["optimize", "f1", "--start", "0.5,1.5", "--policy", "fixed:0"]);
    assert!(o.status.success());
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let it = t["iterates"].as_array().unwrap();
    assert_eq!(it.len(), 3);
    assert_eq!((d(&it[1][0]), d(&it[1][1])), ((-1, 0), (0, 0)));
    assert_eq!((d(&it[2][0]), d(&it[2][1])), ((0, 0), (0, 0)));
    assert_eq!(t["stop_reason"], "FixedPoint");
}

#[test]
fn optimize_case_three_ends_at_policy_value() {
    let o = effopt(&["optimize", "f1", "--start", "0.875,0", "--policy", "fixed:0.25"]);
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let last = t["iterates"].as_array().unwrap().last().unwrap().clone();
    assert_eq!((d(&last[0]), d(&last[1])), ((1, -2), (0, 0)));
}

#[test]
fn optimize_f2_values_do_not_increase() {
    let o = effopt(&["optimize", "f2", "--start", "1,1", "--max-sweeps", "10", "--prec", "60"]);
    assert!(o.status.success());
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(matches!(t["stop_reason"].as_str(), Some("MaxIter") | Some("FixedPoint")));
    let hi: Vec<f64> = t["values"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| {
            let (m, e) = if v.get("hi").is_some() {
                (v["hi"]["m"].clone(), v["hi"]["e"].clone())
            } else {
                (v["m"].clone(), v["e"].clone())
            };
            m.as_str().unwrap().parse::<f64>().unwrap() * 2f64.powi(e.as_i64().unwrap() as i32)
        })
        .collect();
    assert!(hi.windows(2).all(|w| w[1] <= w[0]), "{hi:?}");
}

#[test]
fn trace_round_trips_through_json() {
    let o = effopt(&["optimize", "f1", "--start", "-1.5,-0.25", "--policy", "left"]);
    let text = stdout(&o);
    let t: effopt::ExactTrace = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&t).unwrap(), text.trim_end());
}

#[test]
fn config_file_and_output_path() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    let out = dir.path().join("trace.json");
    std::fs::write(
        &cfg,
        serde_json::json!({
            "function": "f1",
            "policy": { "kind": "fixed", "value": { "m": "1", "e": -2 } },
            "start": [{ "m": "7", "e": -3 }, { "m": "0", "e": 0 }],
            "output": out,
        })
        .to_string(),
    )
    .unwrap();
    let o = effopt(&["optimize", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let last = t["iterates"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(d(&last[0]), (1, -2));
}

#[test]
fn target_stop_with_known_limit() {
    let o =
        effopt(&["optimize", "f1", "--start", "0.5,1.5", "--policy", "fixed:0", "--target", "10", "--limit", "0,0"]);
    assert!(o.status.success());
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["stop_reason"], "TargetMet");
}

#[test]
fn experiments_write_reports_and_echo_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = effopt(&["experiment", "f1-convergence", "--trials", "1000", "--seed", "7", "--out-dir", out]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("f1-convergence: pass"));
    assert!(dir.path().join("f1-convergence.json").exists());
    assert!(dir.path().join("f1-convergence.csv").exists());

    let o = effopt(&["experiment", "stopping-adversary", "--budget", "10", "--out-dir", out]);
    assert!(o.status.success());
    assert!(stdout(&o).contains(r#""10":"1/2048""#));

    let o = effopt(&["experiment", "approx-gap", "--L", "1,2,4", "--delta", "2^-4,2^-8", "--out-dir", out]);
    assert!(o.status.success());
    let rep: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("approx-gap.json")).unwrap()).unwrap();
    assert_eq!(rep["verdict"], "pass");
    assert_eq!(rep["summary"]["cells"], 6);
}

#[test]
fn reports_are_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for dir in [&a, &b] {
        let o = effopt(&[
            "experiment",
            "f1-convergence",
            "--trials",
            "50",
            "--seed",
            "3",
            "--out-dir",
            dir.path().to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let read = |d: &tempfile::TempDir| std::fs::read(d.path().join("f1-convergence.csv")).unwrap();
    assert_eq!(read(&a), read(&b));
}

#[test]
fn obstruction_exits_three_with_partial_trace() {
    let o = effopt(&["optimize", "f2", "--start", "1,2^-8", "--prec", "8", "--max-sweeps", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no certified derivative sign"));
    let t: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t["stop_reason"], "NoCertifiedSign");
    assert!(!t["iterates"].as_array().unwrap().is_empty());
}

#[test]
fn out_of_range_parameters_exit_one() {
    let o = effopt(&["experiment", "f2-reachability", "--xi-star", "2", "--k-max", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn schema_lists_stop_reasons() {
    let o = effopt(&["schema", "trace"]);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["properties"]["stop_reason"]["enum"].as_array().unwrap().len(), 4);
    let o = effopt(&["schema", "report"]);
    let s: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(s["properties"]["name"]["enum"].as_array().unwrap().len(), 4);
}
