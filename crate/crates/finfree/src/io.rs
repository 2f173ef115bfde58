//! CSV writers and the JSON provenance sidecar that accompanies every numeric file.
//!
//! Floats are written with the shortest representation that round-trips, in
//! scientific notation outside `[1e-5, 1e16)`, so identical inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotics::{DensitySample, FamilyLimit, LimitParams, Scaling};
use crate::error::Result;
use crate::roots::HistBin;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Provenance {
    pub command: Vec<String>,
    pub precision_bits: u32,
    pub git_describe: String,
}

impl Provenance {
    pub fn new(command: Vec<String>, precision_bits: u32) -> Self {
        Provenance { command, precision_bits, git_describe: git_describe() }
    }
}

/// `git describe --always --dirty` of the working directory, or `"unknown"`.
pub fn git_describe() -> String {
    Command::new("git")
        .args(["describe", "--always", "--dirty", "--tags"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

/// `roots.csv` gets the sidecar `roots.csv.json`.
pub fn sidecar_path(data: &Path) -> PathBuf {
    let mut name = data.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".json");
    data.with_file_name(name)
}

/// Writes `contents` to `path` and the provenance sidecar next to it.
pub fn write_with_sidecar(path: &Path, contents: &str, prov: &Provenance, extra: Value) -> Result<PathBuf> {
    fs::write(path, contents)?;
    let mut meta = serde_json::to_value(prov)?;
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    let side = sidecar_path(path);
    fs::write(&side, serde_json::to_string_pretty(&meta)? + "\n")?;
    Ok(side)
}

/// Shortest round-trip form, scientific for very small or large magnitudes.
pub fn fmt_f64(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

pub fn roots_csv(roots: &[Complex64]) -> String {
    let mut s = String::from("index,re,im\n");
    for (k, z) in roots.iter().enumerate() {
        let _ = writeln!(s, "{k},{},{}", fmt_f64(z.re), fmt_f64(z.im));
    }
    s
}

pub fn histogram_csv(bins: &[HistBin]) -> String {
    let mut s = String::from("bin_lo,bin_hi,count,density\n");
    for b in bins {
        let _ = writeln!(s, "{},{},{},{}", fmt_f64(b.lo), fmt_f64(b.hi), b.count, fmt_f64(b.density));
    }
    s
}

pub fn curve_csv(us: &[f64], ys: &[Complex64]) -> String {
    let mut s = String::from("u,re_y,im_y\n");
    for (u, y) in us.iter().zip(ys) {
        let _ = writeln!(s, "{},{},{}", fmt_f64(*u), fmt_f64(y.re), fmt_f64(y.im));
    }
    s
}

pub fn density_csv(samples: &[(f64, f64)]) -> String {
    let mut s = String::from("x,density\n");
    for (x, d) in samples {
        let _ = writeln!(s, "{},{}", fmt_f64(*x), fmt_f64(*d));
    }
    s
}

pub fn density_samples_csv(samples: &[DensitySample]) -> String {
    density_csv(&samples.iter().map(|d| (d.x, d.density)).collect::<Vec<_>>())
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// `{family, params, flags}` plus the curve and scaling.
pub fn family_descriptor(lim: &FamilyLimit, params: &LimitParams) -> Value {
    let scaling = match lim.scaling {
        Scaling::None => "none",
        Scaling::Component => "component",
        Scaling::Total => "total",
    };
    json!({
        "family": lim.family.name(),
        "params": {
            "a": strings(&params.a),
            "beta": params.beta.to_string(),
            "theta": strings(&params.theta),
            "c": strings(&params.c),
            "i": params.i,
        },
        "flags": strings(&lim.flags),
        "curve": lim.curve.to_string(),
        "scaling": scaling,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_headers_and_rows() {
        let s = roots_csv(&[Complex64::new(-1.5, 0.0), Complex64::new(0.25, -2.0)]);
        assert_eq!(s, "index,re,im\n0,-1.5,0\n1,0.25,-2\n");
        assert_eq!(density_csv(&[(0.5, 0.1)]), "x,density\n0.5,0.1\n");
        assert_eq!(curve_csv(&[2.0], &[Complex64::new(1.0, 0.5)]), "u,re_y,im_y\n2,1,0.5\n");
        let bins = crate::roots::histogram(&[0.1, 0.2, 0.9], 2, 0.0, 1.0);
        assert_eq!(histogram_csv(&bins), "bin_lo,bin_hi,count,density\n0,0.5,2,1.3333333333333333\n0.5,1,1,0.6666666666666666\n");
    }

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(-8.1e-114), "-8.1e-114");
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(-2.25), "-2.25");
        assert_eq!(fmt_f64(3e20), "3e20");
    }

    #[test]
    fn sidecar_naming() {
        assert_eq!(sidecar_path(Path::new("out/roots.csv")), PathBuf::from("out/roots.csv.json"));
    }

    #[test]
    fn sidecar_merges_extra_fields() {
        let dir = std::env::temp_dir().join(format!("finfree-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let data = dir.join("d.csv");
        let prov = Provenance { command: vec!["density".into()], precision_bits: 256, git_describe: "x".into() };
        let side = write_with_sidecar(&data, "x,density\n", &prov, json!({"rows": 0})).unwrap();
        let v: Value = serde_json::from_str(&fs::read_to_string(side).unwrap()).unwrap();
        assert_eq!(v["precision_bits"], 256);
        assert_eq!(v["rows"], 0);
        fs::remove_dir_all(dir).unwrap();
    }
}
