use std::path::Path;
use std::process::{Command, Output};

fn hcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hcone")).args(args).output().expect("run hcone")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_value(out: &Output, key: &str) -> f64 {
    let text = String::from_utf8(out.stderr.clone()).unwrap();
    let line = text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no {key} in {text}"));
    line[key.len() + 1..].trim().parse().unwrap()
}

fn rows(text: &str) -> Vec<Vec<f64>> {
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

fn write_exp(path: &Path) {
    let mut s = String::from("x,value\n");
    for i in 0..1024 {
        let x = 1e-3 * 4e4f64.powf(i as f64 / 1023.0);
        s += &format!("{x:?},{:?}\n", (-x).exp());
    }
    std::fs::write(path, s).unwrap();
}

#[test]
fn transform_of_the_fixed_point() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("e.csv");
    write_exp(&input);
    let out = hcone(&["transform", "--input", input.to_str().unwrap(), "--grid-min", "0.1", "--grid-max", "8", "--grid-count", "32", "--grid-kind", "log", "--both-paths"]);
    assert!(out.status.success(), "{out:?}");
    assert!(stderr_value(&out, "path_discrepancy:") < 1e-5);
    let rows = rows(&stdout(&out));
    assert_eq!(rows.len(), 32);
    for r in rows {
        assert!((r[1] - (-r[0]).exp()).abs() < 1e-8, "{r:?}");
    }
}

#[test]
fn bad_input_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(hcone(&["transform", "--input", empty.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(hcone(&["transform", "--input", dir.path().join("missing.csv").to_str().unwrap()]).status.code(), Some(2));
    let e = dir.path().join("e.csv");
    write_exp(&e);
    assert_eq!(hcone(&["transform", "--input", e.to_str().unwrap(), "--tol", "-1"]).status.code(), Some(2));
    assert_eq!(hcone(&["transform", "--input", e.to_str().unwrap(), "--grid-count", "3"]).status.code(), Some(2));
    assert_eq!(hcone(&["verify", "--only", "42"]).status.code(), Some(2));
}

#[test]
fn scatter_matches_gamma_phases() {
    let out = hcone(&["scatter", "--gammas", "0.5,1,2"]);
    assert!(out.status.success());
    let rows = rows(&stdout(&out));
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[3] < 1e-3), "{rows:?}");
}

#[test]
fn expand_and_back() {
    let dir = tempfile::tempdir().unwrap();
    let (k, fg) = (dir.path().join("k.csv"), dir.path().join("fg.csv"));
    write_exp(&k);
    let out = hcone(&["expand", "--input", k.to_str().unwrap(), "--grid-min", "1e-3", "--grid-max", "60", "--grid-count", "400", "--output", fg.to_str().unwrap()]);
    assert!(out.status.success(), "{out:?}");
    assert!(stderr_value(&out, "isometry_defect:") < 1e-7);
    // k = e^{-v} expands to F = G = e^{-x}
    let text = std::fs::read_to_string(&fg).unwrap();
    assert!(text.starts_with("x,F,G"));
    for r in rows(&text).iter().filter(|r| r[0] < 20.0) {
        assert!((r[1] - (-r[0]).exp()).abs() < 1e-8 && (r[2] - (-r[0]).exp()).abs() < 1e-8, "{r:?}");
    }
    let back = hcone(&["expand", "--inverse", "--input", fg.to_str().unwrap(), "--grid-min", "0.1", "--grid-max", "10", "--grid-count", "20", "--grid-kind", "log"]);
    assert!(back.status.success(), "{back:?}");
    for r in rows(&stdout(&back)) {
        assert!((r[1] - (-r[0]).exp()).abs() < 1e-7, "{r:?}");
    }
}

#[test]
fn propagate_cauchy_data() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("cd.csv");
    let mut s = String::from("x,phi,phi_t\n");
    for i in 0..=800 {
        let x = -20.0 + 40.0 * i as f64 / 800.0;
        s += &format!("{x:?},{:?},0\n", (-x * x).exp());
    }
    std::fs::write(&input, s).unwrap();
    let out = hcone(&["propagate", "--input", input.to_str().unwrap(), "--times", "1", "--grid-min", "-1", "--grid-max", "1", "--grid-count", "17"]);
    assert!(out.status.success(), "{out:?}");
    let rows = rows(&stdout(&out));
    // mpmath: (1/2 sqrt(pi)) int e^{-k^2/4} cos(sqrt(1 + k^2)) cos(k x) dk
    let at = |x: f64| rows.iter().find(|r| (r[1] - x).abs() < 1e-12).unwrap()[2];
    assert!((at(0.0) - 0.028104852760744927).abs() < 1e-6);
    assert!((at(0.25) - 0.059903488769652651).abs() < 1e-6);
    assert!((at(-0.25) - at(0.25)).abs() < 1e-12);
}

#[test]
fn verify_selected_criteria() {
    let out = hcone(&["verify", "--only", "1,8"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.ends_with("PASS")));
}

#[test]
fn output_is_deterministic() {
    let a = hcone(&["scatter", "--gammas", "1.5", "--potential", "b-plus"]);
    let b = hcone(&["scatter", "--gammas", "1.5", "--potential", "b-plus", "--jobs", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
