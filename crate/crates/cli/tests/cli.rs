use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fivevertex")).args(args).output().unwrap()
}

fn run_env(args: &[&str], key: &str, val: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fivevertex")).args(args).env(key, val).output().unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn error_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fivevertex-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn ratio(s: &str) -> (i64, i64) {
    let (n, d) = s.split_once('/').unwrap();
    (n.parse().unwrap(), d.parse().unwrap())
}

#[test]
fn exact_value() {
    let o = run(&["exact", "--N", "1", "--M", "2", "--L", "3", "--x", "2/1", "--method", "pnew"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["value"], "5/4");
    for m in ["enum", "zhom1", "zhom2"] {
        let o = run(&["exact", "--N", "1", "--M", "2", "--L", "3", "--x", "2", "--method", m]);
        assert_eq!(json_out(&o)["value"], "5/4", "{m}");
    }
}

#[test]
fn exact_polynomial() {
    let o = run(&["exact", "--N", "1", "--M", "1", "--L", "2", "--method", "enum"]);
    assert_eq!(json_out(&o)["polynomial"], "1");
    let o = run(&["exact", "--N", "2", "--M", "4", "--L", "4"]);
    let v = json_out(&o);
    let e = json_out(&run(&["exact", "--N", "2", "--M", "4", "--L", "4", "--method", "enum"]));
    assert_eq!(v["coefficients"], e["coefficients"]);
    // Rational strings re-evaluate: P(u) at u = 1/2 from the coefficients.
    let (mut num, mut den) = (0i64, 1i64);
    for (k, c) in v["coefficients"].as_array().unwrap().iter().enumerate() {
        let (n, d) = ratio(c.as_str().unwrap());
        let d = d * (1i64 << k);
        num = num * d + n * den;
        den *= d;
    }
    let at = json_out(&run(&["exact", "--N", "2", "--M", "4", "--L", "4", "--x", "2"]));
    let (n, d) = ratio(at["value"].as_str().unwrap());
    assert_eq!(num * d, n * den);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["exact", "--N", "1", "--M", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["error"], "usage");
    let o = run(&["exact", "--N", "3", "--M", "2", "--L", "3", "--x", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(error_of(&o)["error"], "invalid_spec");
    let o = run(&["exact", "--N", "1", "--M", "2", "--L", "3", "--x", "abc"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["exact", "--N", "1", "--M", "2", "--L", "3", "--method", "zhom1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["thermo", "--geometry", "rect", "--r", "1", "--x", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn enumeration_cap_from_environment() {
    let o = run_env(&["exact", "--N", "3", "--M", "6", "--L", "6", "--method", "enum"], "FIVEVERTEX_MAX_CONFIGS", "5");
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["error"], "resource");
}

#[test]
fn sigma_check_exit_codes() {
    let o = run(&["sigma-check", "--N", "2", "--M", "4", "--L", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["pvi_residual_zero"], true);
    // Lines filling every column: the residual does not vanish.
    let o = run(&["sigma-check", "--N", "1", "--M", "3", "--L", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json_out(&o)["pvi_residual_zero"], false);
}

#[test]
fn oracle_sweep_small() {
    let o = run(&["oracle-sweep", "--max", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["pass"], true);
    assert!(v["comparisons"].as_u64().unwrap() > 100);
}

#[test]
fn thermo_boundary_record() {
    let o = run(&["thermo", "--geometry", "square", "--r", "1", "--eps", "1", "--x", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_out(&o);
    assert_eq!(v["boundary"], true);
    let e = v["expansions"].as_array().unwrap();
    assert_eq!(e.len(), 2);
    for t in e {
        assert!((t["f2"].as_f64().unwrap() - (9.0f64 / 8.0).ln()).abs() < 1e-14);
    }
    let o = run(&["thermo", "--geometry", "rect", "--N", "6", "--M", "18", "--L", "30", "--x", "0.1"]);
    assert_eq!(json_out(&o)["expansions"][0]["regime"], "II");
}

#[test]
fn converge_csv() {
    let path = tmp("square.csv");
    let o = run(&["converge", "--family", "square", "--ns", "2,4,6", "--x", "16", "--out", path.to_str().unwrap()]);
    assert!(o.status.code().is_some());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "N,M,L,x_num,x_den,logP_exact,prediction,residual,residual_times_N");
    assert_eq!(lines.count(), 3);
    let o = run(&["converge", "--family", "e0", "--ns", "6,8", "--x", "1/100"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 3);
}

#[test]
fn phase_outputs() {
    let o = run(&["phase", "--geometry", "rect", "--p", "1", "--q", "2", "--from", "0.5", "--to", "30", "--points", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("x,regime,f2,d1,d2,d3"));
    assert_eq!(text.lines().count(), 6);
    let o = run(&["phase", "--geometry", "rect", "--p", "1", "--q", "2", "--boundary", "upper"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json_out(&o)["third_order"], true);
    let o = run(&["phase", "--geometry", "rect", "--p", "1", "--q", "2", "--boundary", "lower"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sampling_is_deterministic() {
    let files: Vec<_> = (0..2).map(|k| (tmp(&format!("a{k}.jsonl")), tmp(&format!("i{k}.svg")), tmp(&format!("d{k}.ppm")))).collect();
    for (a, i, d) in &files {
        let o = run(&[
            "sample", "--N", "3", "--M", "6", "--L", "7", "--x", "0.5", "--samples", "4", "--seed", "9",
            "--archive", a.to_str().unwrap(), "--image", i.to_str().unwrap(), "--density", d.to_str().unwrap(),
            "--color-vertices",
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for k in 0..3 {
        let read = |f: &(PathBuf, PathBuf, PathBuf)| std::fs::read([&f.0, &f.1, &f.2][k]).unwrap();
        assert_eq!(read(&files[0]), read(&files[1]));
    }
    let text = std::fs::read_to_string(&files[0].0).unwrap();
    let recs: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(recs.len(), 4);
    assert_eq!(recs[0]["x"], "1/2");
    assert_eq!(recs[1]["seed"], 10);
    assert!(recs[0]["coalescence_T"].as_u64().unwrap() >= 2);
    let svg = std::fs::read_to_string(&files[0].1).unwrap();
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn sample_warns_above_one() {
    let o = run(&["sample", "--N", "1", "--M", "2", "--L", "3", "--x", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not monotone"));
    let o = run(&["sample", "--N", "3", "--M", "8", "--L", "8", "--x", "1", "--max-sweeps", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(error_of(&o)["error"], "resource");
}
