use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn oscbridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oscbridge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn modes_prints_json() {
    let out = oscbridge(&["modes", "--m", "1", "--A", "5", "--C", "-3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["K"].as_f64(), Some(4.0));
    assert_eq!(v["omega"].as_f64(), Some(2.0));
    assert!((v["eta"].as_f64().unwrap() - 0.34657).abs() < 1e-5);
}

#[test]
fn exit_codes() {
    // domain violation
    assert_eq!(oscbridge(&["modes", "--A", "1", "--C", "1"]).status.code(), Some(1));
    // bad flags
    assert_eq!(oscbridge(&["modes", "--A", "one", "--C", "0"]).status.code(), Some(2));
    assert_eq!(oscbridge(&["entangle"]).status.code(), Some(2));
    assert_eq!(
        oscbridge(&["sweep", "--start", "2", "--stop", "0", "--steps", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn entangle_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("e.json");
    let csv = dir.path().join("e.csv");
    let out = oscbridge(&[
        "entangle",
        "--eta",
        "1",
        "--kmax",
        "8",
        "--omega",
        "2",
        "--out",
        path_str(&json),
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!((v["purity"].as_f64().unwrap() - 0.648054273663885).abs() < 1e-15);
    assert!((v["entropy"].as_f64().unwrap() - 0.65945).abs() < 1e-5);
    assert!((v["x"].as_f64().unwrap() - 1.543874).abs() < 1e-6);
    assert!((v["T"].as_f64().unwrap() - 2.0 / 1.5438736658106096).abs() < 1e-12);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 9);
    let rows = fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("k,p_k\n0,0.786447732965928\n"));
    assert_eq!(rows.lines().count(), 10);
}

#[test]
fn entangle_disentangled() {
    let out = oscbridge(&["entangle", "--eta", "0"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["purity"].as_f64(), Some(1.0));
    assert_eq!(v["entropy"].as_f64(), Some(0.0));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = oscbridge(&[
            "sweep",
            "--start",
            "0",
            "--stop",
            "2",
            "--steps",
            "5",
            "--out",
            path_str(p),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    let text = fs::read(&a).unwrap();
    assert_eq!(text, fs::read(&b).unwrap());
    let text = String::from_utf8(text).unwrap();
    let entropies: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(entropies.len(), 5);
    assert!(entropies.windows(2).all(|w| w[1] > w[0]));

    let single = oscbridge(&["sweep", "--start", "0", "--stop", "0", "--steps", "1"]);
    let text = String::from_utf8(single.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("0,1,0,0,"));
}

#[test]
fn boost_surface_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("boost.csv");
    let out = oscbridge(&[
        "boost",
        "--eta",
        "1",
        "--grid",
        "21",
        "--extent",
        "4",
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().next(), Some("z,t,psi,qz,q0,phi"));
    assert_eq!(text.lines().count(), 21 * 21 + 1);
}

#[test]
fn parton_with_overlay_and_rescale() {
    let dir = tempfile::tempdir().unwrap();
    let overlay = dir.path().join("data.csv");
    fs::write(&overlay, "x,value\n0.1,1\n0.5,2\n0.9,0.5\n").unwrap();
    let out_path = dir.path().join("pdf.csv");
    let out = oscbridge(&[
        "parton",
        "--eta",
        "2",
        "--var",
        "qz",
        "--n",
        "41",
        "--overlay",
        path_str(&overlay),
        "--rescale",
        "0.5,0.05",
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&out_path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("coordinate,model_density,overlay_value"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 41);
    assert!(rows.iter().all(|r| r.len() == 3));
    // centre row sits at the shift, inside the overlay range
    assert_eq!(rows[20][0], "0.5");
    assert_eq!(rows[20][2], "2");
    assert_eq!(rows[0][2], "");

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "x,value\n0.1,1\n0.2,abc\n").unwrap();
    let out = oscbridge(&[
        "parton",
        "--eta",
        "1",
        "--overlay",
        path_str(&bad),
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let out = oscbridge(&["parton", "--eta", "1", "--n", "1", "--out", path_str(&out_path)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn kernel_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("kernel.csv");
    let out = oscbridge(&[
        "kernel",
        "--eta",
        "1",
        "--grid",
        "11",
        "--extent",
        "5",
        "--out",
        path_str(&out_path),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&out_path).unwrap();
    assert_eq!(text.lines().count(), 122);
    assert_eq!(
        oscbridge(&["kernel", "--eta", "7", "--out", path_str(&out_path)])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = oscbridge(&["verify", "--out", path_str(&report)]);
    let v: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(checks.len() > 30);
    let failing: Vec<&str> = checks
        .iter()
        .filter(|c| c["passed"] == Value::Bool(false))
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    // the only check that cannot pass is the k_max = 40 reconstruction at eta = 2
    assert_eq!(failing, ["entanglement.schmidt_reconstruction_eta_2"]);
    assert_eq!(v["passed"], Value::Bool(false));
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("FAIL entanglement.schmidt_reconstruction_eta_2"));
}
