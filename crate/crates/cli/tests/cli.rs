use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lab(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bernstein-lab"))
        .args(args)
        .env("BERNSTEIN_OUT_DIR", dir)
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn convert_echoes_exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["convert", "--s", "1", "--a", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("convert.json");
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), path.display().to_string());
    let r = json(&path);
    assert_eq!(r["schema"], "bernstein-lab/report/v1");
    assert_eq!(r["status"], "ok");
    assert_eq!(r["scalar"], "octuple");
    assert_eq!(r["input"]["a"], "0.5");
    assert_eq!(r["result"]["exact"]["b"], "5/3");
    assert_eq!(r["result"]["exact"]["b_minus_sqrt_b2_minus_1"], "1/3");
    assert!(r["result"]["b"].as_str().unwrap().starts_with("1.66666666666666666666666666666666666"));
}

#[test]
fn parameters_keep_their_digits() {
    let dir = tempfile::tempdir().unwrap();
    let a = "0.123456789012345678901234567890123456789";
    let out = lab(dir.path(), &["convert", "--s", "0.5", "--a", a, "-o", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let echoed = r["result"]["a"].as_str().unwrap();
    assert!(echoed.starts_with("1.23456789012345678901234567890123456789"), "{echoed}");
}

#[test]
fn solve_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--bits", "106", "solve", "--family", "absxp", "--p", "1.5", "--a", "0.5", "--m", "8"];
    let one = dir.path().join("one.json");
    let two = dir.path().join("two.json");
    for p in [&one, &two] {
        let mut a = args.to_vec();
        a.extend(["-o", p.to_str().unwrap()]);
        assert_eq!(lab(dir.path(), &a).status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&one).unwrap(), std::fs::read(&two).unwrap());
    let r = json(&one);
    assert_eq!(r["scalar"], "double-double");
    assert_eq!(r["mantissa_bits"], 106);
    let pts = r["result"]["alternation"].as_array().unwrap();
    assert_eq!(pts.len(), 10);
    let lev: f64 = r["result"]["levelling_ratio"].as_str().unwrap().parse().unwrap();
    assert!(lev > 1.0 - 1e-12);
}

#[test]
fn sweep_csv_has_one_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(
        dir.path(),
        &[
            "--bits",
            "106",
            "--format",
            "csv",
            "--jobs",
            "2",
            "sweep",
            "--family",
            "sgn-laurent",
            "--k",
            "1",
            "--a",
            "0.5",
            "--m",
            "5..7",
            "--predict",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "m,E,predicted,ratio,b_gap");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("5,"));
    for l in &lines[1..] {
        for f in l.split(',') {
            f.parse::<f64>().unwrap();
        }
    }
}

#[test]
fn verify_curve_reports_sign_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let out =
        lab(dir.path(), &["--bits", "106", "verify-curve", "--p", "1.5", "--a", "0.5", "--m", "3", "--points", "40"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&dir.path().join("verify-curve.json"));
    assert_eq!(r["result"]["sign_patterns_pass"], true);
    assert_eq!(r["result"]["sign_patterns"].as_array().unwrap().len(), 11);
    assert_eq!(r["result"]["sign_patterns"][0]["sign_changes"], 4);
    let res: f64 = r["result"]["max_relative_residual"].as_str().unwrap().parse().unwrap();
    assert!(res < 1e-6);
}

#[test]
fn invalid_input_exits_1_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["solve", "--family", "absxp", "--p", "2", "--a", "0.5", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("even integer"));
    assert!(!dir.path().join("solve.json").exists());

    let out = lab(dir.path(), &["solve", "--family", "absxp", "--a", "0.5", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--p"));

    let out = lab(dir.path(), &["--bits", "32", "convert", "--s", "1", "--a", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lab(dir.path(), &["convert", "--s", "1", "--a", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
    let out = lab(dir.path(), &["solve", "--family", "nope", "--m", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(lab(dir.path(), &["--help"]).status.code(), Some(0));
    assert_eq!(lab(dir.path(), &[]).status.code(), Some(1));
}

#[test]
fn precision_budget_suggests_more_bits() {
    let dir = tempfile::tempdir().unwrap();
    let out =
        lab(dir.path(), &["--bits", "106", "solve", "--family", "sgn-laurent", "--k", "1", "--a", "0.5", "--m", "40"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--bits"), "{err}");
}

#[test]
fn numerical_failure_exits_2_with_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(
        dir.path(),
        &["--bits", "106", "conjecture", "--l", "0.3", "--nodes", "65", "--x-max", "10", "--max-iter", "200"],
    );
    assert_eq!(out.status.code(), Some(2));
    let r = json(&dir.path().join("conjecture.json"));
    assert_eq!(r["status"], "error");
    assert!(r["error"].as_str().unwrap().contains("stopped after 200 iterations"));
    assert_eq!(r["result"]["converged"], false);
    assert_eq!(r["input"]["l"], "0.3");
}

#[test]
fn conjecture_converges_at_large_l() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(
        dir.path(),
        &["--bits", "106", "--format", "csv", "conjecture", "--l", "5", "--nodes", "257", "--x-max", "20"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("conjecture.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("iteration,residual,step,theta,clamped"));
    let last: f64 = text.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!(last < 1e-12);
}

#[test]
fn conformal_constants() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(dir.path(), &["--bits", "106", "conformal", "--map", "w", "--p", "1", "--points", "3", "-o", "-"]);
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    let one: f64 = r["result"]["exp_c_Lambda_abs_gamma"].as_str().unwrap().parse().unwrap();
    assert!((one - 1.0).abs() < 1e-25);
    assert_eq!(r["result"]["boundary"].as_array().unwrap().len(), 3);
}

#[test]
fn profiles_csv_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = lab(
        dir.path(),
        &[
            "--bits",
            "106",
            "--format",
            "csv",
            "profiles",
            "--family",
            "sgn-laurent",
            "--k",
            "1",
            "--a",
            "0.5",
            "--m",
            "10,20",
            "--points",
            "5",
        ],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("profiles.csv")).unwrap();
    assert_eq!(text.lines().next(), Some("lambda,profile,m10,m20"));
    assert_eq!(text.lines().count(), 6);
}
