use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use setcross_cli::{run, EXIT_CAPACITY, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("setcross").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas").join(name);
    let text = std::fs::read_to_string(&path).unwrap();
    jsonschema::validator_for(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errors: Vec<String> = v.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{doc}: {errors:?}");
}

fn temp_config(name: &str, body: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("setcross-{}-{name}.toml", std::process::id()));
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn dist_small_polynomial() {
    let v = json(&["dist", "--n", "4", "--k", "2", "--method", "jr"]);
    assert_eq!(v["coeffs"], serde_json::json!(["6", "1"]));
    for m in ["ksz", "series", "brute"] {
        let w = json(&["dist", "--n", "4", "--k", "2", "--method", m]);
        assert_eq!(w["coeffs"], v["coeffs"], "{m}");
    }
    let g = json(&["dist", "--n", "4"]);
    assert!(g.get("k").is_none());
    assert_eq!(g["coeffs"], serde_json::json!(["14", "1"]));
}

#[test]
fn dist_csv() {
    let out = ok(&["dist", "--n", "5", "--k", "2", "--format", "csv"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,k,stat,method,x,count");
    assert_eq!(lines[1], "5,2,linear,jr,0,10");
    let total: u64 = lines[1..].iter().map(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(total, 15);
}

#[test]
fn circular_needs_enumeration() {
    let (code, _, err) = call(&["dist", "--n", "5", "--k", "2", "--stat", "circular", "--method", "jr"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    let v = json(&["dist", "--n", "5", "--k", "2", "--stat", "circular"]);
    assert_eq!(v["method"], "brute");
}

#[test]
fn hist_normalized_axis() {
    let out = ok(&["hist", "--n", "10", "--normalize"]);
    let rows: Vec<(f64, f64)> = out
        .lines()
        .skip(1)
        .map(|l| {
            let (x, p) = l.split_once(',').unwrap();
            (x.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    for (x, _) in &rows {
        let scaled = x * 12.0;
        assert!((scaled - scaled.round()).abs() < 1e-4, "{x}");
    }
    assert_eq!(rows.last().unwrap().0, 1.0);
    let total: f64 = rows.iter().map(|r| r.1).sum();
    assert!((total - 1.0).abs() < 1e-12);
    assert_eq!(call(&["hist", "--n", "3", "--normalize"]).0, EXIT_USAGE);
}

#[test]
fn exit_codes() {
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["dist", "--k", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["dist", "--n", "4", "--k", "7"]).0, EXIT_USAGE);
    assert_eq!(call(&["dist", "--n", "13", "--stat", "circular"]).0, EXIT_CAPACITY);
    assert_eq!(call(&["dist", "--n", "41", "--k", "3"]).0, EXIT_CAPACITY);
    assert_eq!(call(&["moments", "--n", "13", "--method", "brute"]).0, EXIT_CAPACITY);
    assert_eq!(call(&["approx", "--formula", "nonsense", "--grid", "5"]).0, EXIT_USAGE);
    assert_eq!(call(&["approx", "--formula", "mean-global", "--grid", "2"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
}

#[test]
fn config_overrides_limits() {
    let lower = temp_config("lower", "enumeration_limit = 5\n");
    let lower_s = lower.to_str().unwrap();
    assert_eq!(call(&["--config", lower_s, "dist", "--n", "6", "--stat", "circular"]).0, EXIT_CAPACITY);
    assert_eq!(call(&["--config", lower_s, "dist", "--n", "5", "--stat", "circular"]).0, EXIT_OK);

    let higher = temp_config("higher", "jr_limit = 45\n");
    let v = json(&["--config", higher.to_str().unwrap(), "dist", "--n", "42", "--k", "3"]);
    assert_eq!(v["n"], 42);

    let bad = temp_config("bad", "colour = \"blue\"\n");
    assert_eq!(call(&["--config", bad.to_str().unwrap(), "verify"]).0, EXIT_USAGE);
    assert_eq!(call(&["--config", "/nonexistent/setcross.toml", "verify"]).0, EXIT_USAGE);
    for p in [lower, higher, bad] {
        std::fs::remove_file(p).unwrap();
    }
}

#[test]
fn json_matches_schemas() {
    let dist = schema("dist.schema.json");
    for args in [
        vec!["dist", "--n", "6", "--k", "3"],
        vec!["dist", "--n", "6", "--stat", "circular"],
        vec!["dist", "--n", "7", "--k", "2", "--method", "series"],
    ] {
        assert_valid(&dist, &json(&args));
    }
    let moments = schema("moments.schema.json");
    for args in [
        vec!["moments", "--n", "8", "--k", "3"],
        vec!["moments", "--n", "8"],
        vec!["moments", "--n", "8", "--k", "3", "--stat", "circular"],
        vec!["moments", "--n", "7", "--stat", "circular", "--method", "brute"],
        vec!["moments", "--n", "9", "--k", "4", "--method", "poly"],
    ] {
        assert_valid(&moments, &json(&args));
    }
    let maxima = schema("maxima.schema.json");
    for args in [
        vec!["maxima", "--n", "12", "--k", "5", "--stat", "circular"],
        vec!["maxima", "--n", "12", "--k", "5"],
        vec!["maxima", "--n", "9"],
        vec!["maxima", "--n", "9", "--stat", "circular"],
    ] {
        assert_valid(&maxima, &json(&args));
    }
    let build = schema("extremal-build.schema.json");
    let v = json(&["extremal", "build", "--parts", "4,2,1"]);
    assert_valid(&build, &v);
    assert_eq!(v["partition"], "1 4 6 7/2 5/3");
}

#[test]
fn moments_worked_values() {
    let v = json(&["moments", "--n", "4", "--k", "2"]);
    assert_eq!(v["mean"], serde_json::json!({"num": "1", "den": "7"}));
    assert_eq!(v["variance"], serde_json::json!({"num": "6", "den": "49"}));
    let v = json(&["moments", "--n", "4"]);
    assert_eq!(v["variance"], serde_json::json!({"num": "14", "den": "225"}));
}

#[test]
fn maxima_witness() {
    let v = json(&["maxima", "--n", "10", "--k", "3"]);
    assert_eq!(v["maxValue"], 11);
    assert_eq!(v["maximizerCount"], "1");
    let v = json(&["maxima", "--n", "9"]);
    assert_eq!(v["maxValue"], 9);
    assert_eq!(v["maximizerCount"], "2");
}

#[test]
fn approx_csv() {
    let out = ok(&["approx", "--formula", "stirling", "--grid", "20,40,80", "--k", "3"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,k,stat,exact,approx,absErr,relErr,formulaTag");
    assert_eq!(lines.len(), 4);
    let rel: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(6).unwrap().parse().unwrap()).collect();
    assert!(rel[0] > rel[1] && rel[1] > rel[2]);
    let out = ok(&["approx", "--formula", "bell-ratio", "--grid", "50", "--t", "-1"]);
    assert!(out.lines().nth(1).unwrap().ends_with(",bell-ratio"));
}

#[test]
fn sample_is_reproducible() {
    let args = ["sample", "--n", "9", "--k", "4", "--count", "25", "--seed", "77"];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    assert_eq!(a.lines().count(), 25);
    for line in a.lines() {
        let p: setcross::SetPartition = line.parse().unwrap();
        assert_eq!((p.n(), p.k()), (9, 4));
    }
    let h = ok(&["sample", "--n", "9", "--count", "500", "--seed", "1", "--format", "hist"]);
    let total: u64 = h.lines().skip(1).map(|l| l.split_once(',').unwrap().1.parse::<u64>().unwrap()).sum();
    assert_eq!(total, 500);
    assert_eq!(call(&["sample", "--n", "4", "--count", "0", "--seed", "1"]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_setcross");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["verify", "--level", "quick"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS ")), "{text}");
    assert_eq!(status(&["dist", "--n", "13", "--stat", "circular"]).status.code(), Some(3));
    assert_eq!(status(&["dist"]).status.code(), Some(1));
    let a = status(&["approx", "--formula", "var-global", "--grid", "20,30"]).stdout;
    let b = status(&["approx", "--formula", "var-global", "--grid", "20,30"]).stdout;
    assert_eq!(a, b);
}
