use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn finfree(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finfree"))
        .args(args)
        .current_dir(dir)
        .env_remove("FINFREE_PREC_BITS")
        .output()
        .expect("binary runs")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) {
    fs::write(dir.join(name), body).unwrap();
}

#[test]
fn hyper_writes_literal_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = finfree(dir.path(), &["hyper", "--n", "3", "--a", "3,5/2", "--b", "1,7/3", "--out", "p.json"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let p = json(&dir.path().join("p.json"));
    assert_eq!(p["n"], 3);
    assert_eq!(p["e"].as_array().unwrap().len(), 4);
    let side = json(&dir.path().join("p.json.json"));
    assert_eq!(side["precision_bits"], 256);
    assert_eq!(side["command"][1], "hyper");
    assert!(side["git_describe"].is_string());
}

#[test]
fn conv_dilates_and_shifts() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p.json", r#"{"n": 2, "e": ["1", "3", "2"]}"#);
    write(dir.path(), "three.json", r#"{"n": 2, "e": ["1", "6", "9"]}"#);
    write(dir.path(), "one.json", r#"{"n": 2, "e": ["1", "2", "1"]}"#);
    let out = finfree(dir.path(), &["conv", "--op", "mult", "--n", "2", "--p", "p.json", "--q", "three.json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["e"], serde_json::json!(["1", "9", "18"]));
    let out = finfree(dir.path(), &["conv", "--op", "add", "--n", "2", "--p", "p.json", "--q", "one.json", "--out", "s.json"]);
    assert!(out.status.success());
    assert_eq!(json(&dir.path().join("s.json"))["e"], serde_json::json!(["1", "5", "6"]));
}

#[test]
fn roots_of_a_literal() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "p.json", r#"{"n": 2, "e": ["1", "3", "2"]}"#);
    let out = finfree(dir.path(), &["roots", "--p", "p.json", "--emit", "r.csv", "--histogram", "h.csv", "--bins", "2"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("index,re,im"));
    let re: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(re.len(), 2);
    assert!((re.iter().sum::<f64>() - 3.0).abs() < 1e-12);
    let hist = fs::read_to_string(dir.path().join("h.csv")).unwrap();
    assert!(hist.starts_with("bin_lo,bin_hi,count,density\n"));
    assert!(dir.path().join("h.csv.json").exists());
}

#[test]
fn mop_type_one_zeros_are_negative() {
    let dir = tempfile::tempdir().unwrap();
    let out = finfree(
        dir.path(),
        &["mop", "--family", "jp1-typeI", "--i", "1", "--n", "3,4", "--alpha", "0.45,0.2", "--beta", "1", "--emit", "roots.csv"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("degree: 2"));
    assert!(stdout.contains("all real: true"));
    let csv = fs::read_to_string(dir.path().join("roots.csv")).unwrap();
    for line in csv.lines().skip(1) {
        let re: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!(re < 0.0);
    }
    assert_eq!(json(&dir.path().join("roots.csv.json"))["family"], "jp1");
}

#[test]
fn density_on_the_predicted_support() {
    let dir = tempfile::tempdir().unwrap();
    let out = finfree(dir.path(), &["density", "--family", "jp1-r2", "--theta", "1/3", "--grid", "400", "--emit", "d.csv"]);
    assert!(out.status.success());
    let csv = fs::read_to_string(dir.path().join("d.csv")).unwrap();
    let rows: Vec<(f64, f64)> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let (x, d) = l.split_once(',').unwrap();
            (x.parse().unwrap(), d.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 400);
    assert!(rows.iter().all(|(x, d)| *x > -2.43 && *x < 0.0 && *d > 0.0));
    // integrable blow-up at the origin
    let last = rows.last().unwrap().1;
    assert!(rows.iter().all(|(_, d)| *d <= last));
    assert!(last > 10.0);
    assert_eq!(json(&dir.path().join("d.csv.json"))["c_star"], "243/100");
}

#[test]
fn limit_descriptor_and_density() {
    let dir = tempfile::tempdir().unwrap();
    let out = finfree(
        dir.path(),
        &["limit", "--family", "ml1-1", "--theta", "1", "--order", "4", "--out", "mp.json", "--density", "d.csv", "--range", "0,4", "--grid", "8"],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let desc = json(&dir.path().join("mp.json"));
    assert_eq!(desc["moments"], serde_json::json!(["1", "2", "5", "14"]));
    assert_eq!(desc["flags"], serde_json::json!([]));
    let csv = fs::read_to_string(dir.path().join("d.csv")).unwrap();
    let at_two = csv.lines().find(|l| l.starts_with("2.25,")).unwrap();
    let d: f64 = at_two.split(',').nth(1).unwrap().parse().unwrap();
    let exact = (2.25f64 * (4.0 - 2.25)).sqrt() / (2.0 * std::f64::consts::PI * 2.25);
    assert!((d - exact).abs() < 1e-8);
}

#[test]
fn degenerate_limit_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let out = finfree(dir.path(), &["limit", "--family", "jp1", "--theta", "1/2,1/2"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["moments_error"].is_string());
    assert!(!v["flags"].as_array().unwrap().is_empty());
}

#[test]
fn identities_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let out = finfree(dir.path(), &["verify", "--suite", "identities", "--n", "8"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("PASS identities"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["mop", "--family", "ml2-2", "--n", "3,2", "--alpha", "1/2", "--c", "1,2", "--emit", "a.csv"];
    assert!(finfree(dir.path(), &args).status.success());
    let first = fs::read(dir.path().join("a.csv")).unwrap();
    let first_side = fs::read(dir.path().join("a.csv.json")).unwrap();
    assert!(finfree(dir.path(), &args).status.success());
    assert_eq!(first, fs::read(dir.path().join("a.csv")).unwrap());
    assert_eq!(first_side, fs::read(dir.path().join("a.csv.json")).unwrap());
}

#[test]
fn precision_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_finfree"))
        .args(["mop", "--family", "jp2", "--n", "2,2", "--alpha", "1/2,3/7", "--beta", "1", "--emit", "r.csv"])
        .current_dir(dir.path())
        .env("FINFREE_PREC_BITS", "128")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&dir.path().join("r.csv.json"))["precision_bits"], 128);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| finfree(dir.path(), args).status.code();
    assert_eq!(code(&["bogus"]), Some(2));
    assert_eq!(code(&["hyper", "--n", "x"]), Some(2));
    assert_eq!(code(&["hyper", "--n", "3", "--a", "1/0"]), Some(2));
    assert_eq!(code(&["mop", "--family", "nope", "--n", "3", "--alpha", "1"]), Some(2));
    assert_eq!(code(&["mop", "--family", "jp1", "--i", "3", "--n", "3,3", "--alpha", "1/2,3/7"]), Some(2));
    assert_eq!(code(&["density", "--family", "jp1-r2", "--theta", "1/2"]), Some(2));
    // numeric failures
    assert_eq!(code(&["hyper", "--n", "3", "--b", "-1"]), Some(1));
    assert_eq!(code(&["mop", "--family", "jp2", "--n", "2,2", "--alpha", "1/2,3/2"]), Some(1));
}
