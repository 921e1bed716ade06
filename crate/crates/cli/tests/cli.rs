use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn resnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_resnet"))
        .args(args)
        .env("RESNET_THREADS", "1")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn close(v: &Value, expected: f64, tol: f64) -> bool {
    (v.as_f64().expect("number") - expected).abs() < tol
}

#[test]
fn analyze_star() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "star.txt", "n 5\n0 1 1\n0 2 1\n0 3 1\n0 4 1\n");
    let v = json(&resnet(&["analyze", "--input", &f]));
    assert!(close(&v["summary"]["A"], 1.6, 1e-12));
    let v = json(&resnet(&["analyze", "--input", &f, "--pair", "1", "3"]));
    assert!(close(&v["R"], 2.0, 1e-12));
    assert!(v.get("summary").is_none());
}

#[test]
fn analyze_rooted_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "tri.txt", "n 3\nroot 0\n0 1 1\n1 2 1\n0 2 1\n");
    let v = json(&resnet(&["analyze", "--input", &f]));
    assert!(close(&v["rooted"]["B"], 2.0 / 3.0, 1e-12));
}

#[test]
fn disconnected_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "d.txt", "n 4\n0 1 1\n2 3 1\n");
    let out = resnet(&["analyze", "--input", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infinite average resistance"));
    assert!(out.stdout.is_empty());
    let out = resnet(&["analyze", "--input", &f, "--pair", "0", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_error_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.txt", "n 3\n0 1 1\n1 q 1\n");
    let out = resnet(&["analyze", "--input", &f]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(resnet(&["analyze"]).status.code(), Some(1));
}

#[test]
fn construct_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("tri.txt");
    let v = json(&resnet(&[
        "construct",
        "--spec",
        "family=star_triangles_leaves n=100 m=130",
        "--analyze",
        "--output",
        out_path.to_str().unwrap(),
    ]));
    assert!(close(&v["analysis"]["B"], 0.8, 1e-9));
    let back = json(&resnet(&["analyze", "--input", out_path.to_str().unwrap()]));
    assert!(close(&back["rooted"]["B"], 0.8, 1e-9));

    let v = json(&resnet(&["construct", "--spec", "family=star n=50 k=1", "--analyze"]));
    assert!(close(&v["analysis"]["A"], 2.0 - 2.0 / 50.0, 1e-9));
}

#[test]
fn construct_without_report_prints_edges() {
    let out = resnet(&["construct", "--spec", "family=cycle_with_leaves n=6 cycle_len=4"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.trim() == "n 6"));
    let bad = resnet(&["construct", "--spec", "family=star n=0"]);
    assert_eq!(bad.status.code(), Some(1));
    let bad = resnet(&["construct", "--spec", "family=star n=5 bogus=1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, seed: &str| {
        let p = dir.path().join(name);
        let out = resnet(&[
            "construct",
            "--spec",
            "family=random_regular n=60 d=3 g_min=5",
            "--seed",
            seed,
            "--output",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        fs::read(p).unwrap()
    };
    assert_eq!(run("a.txt", "4"), run("b.txt", "4"));
    assert_ne!(run("c.txt", "4"), run("d.txt", "5"));
}

#[test]
fn local_rooting_certificate() {
    let v = json(&resnet(&[
        "construct",
        "--spec",
        "family=random_regular n=300 d=3 g_min=8",
        "--theorem64",
        "ℓ=3 eps=0.1 p=auto",
        "--analyze",
    ]));
    let r = &v["theorem64"];
    assert!(r["max_ratio"].as_f64().unwrap() <= 1.1 + 1e-9);
    assert!(close(&r["B"], v["analysis"]["B"].as_f64().unwrap(), 1e-9));
    let out = resnet(&["construct", "--spec", "family=star n=5", "--theorem64", "eps=0.1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn root_with_improvement() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "path.txt", "n 6\n0 1 1\n1 2 1\n2 3 1\n3 4 1\n4 5 1\n");
    let out_path = dir.path().join("rooted.txt");
    let v = json(&resnet(&[
        "root",
        "--input",
        &f,
        "--sinks",
        "2",
        "--trials",
        "50",
        "--improve",
        "20",
        "--output",
        out_path.to_str().unwrap(),
    ]));
    let s = &v["sinks"];
    assert!(s["best_B"].as_f64().unwrap() <= s["mean_B"].as_f64().unwrap() + 1e-12);
    let imp = &v["improvement"];
    assert!(imp["B"].as_f64().unwrap() <= imp["b_initial"].as_f64().unwrap() + 1e-12);
    let back = json(&resnet(&["analyze", "--input", out_path.to_str().unwrap()]));
    assert!(close(&back["rooted"]["B"], imp["B"].as_f64().unwrap(), 1e-9));
}

#[test]
fn bound_sweep_csv() {
    let out = resnet(&["bound-sweep", "--alpha-lo", "2", "--alpha-hi", "6", "--step", "0.01"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header = rdr.headers().unwrap().clone();
    let col = |name: &str| header.iter().position(|h| h == name).unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 401);
    for r in &rows {
        assert_eq!(&r[col("ordered")], "true");
        assert_eq!(&r[col("qb_strict")], "true");
    }
    let at = |alpha: f64| {
        rows.iter()
            .find(|r| (r[col("alpha")].parse::<f64>().unwrap() - alpha).abs() < 1e-9)
            .unwrap()
    };
    let env3: f64 = at(3.0)[col("upper_envelope")].parse().unwrap();
    assert!((env3 - 0.6454).abs() < 5e-5);
    let margin4: f64 = at(4.0)[col("qb_margin")].parse().unwrap();
    assert!((margin4 - 0.025).abs() < 1e-12);
}

#[test]
fn search_star_and_progress() {
    let out = resnet(&["search", "--objective", "A", "--n", "6", "--m", "5", "--progress"]);
    let v = json(&out);
    assert!(close(&v["best_value"], 2.0 - 2.0 / 6.0, 1e-9));
    assert!(String::from_utf8_lossy(&out.stderr).contains("classes"));
    let too_big = resnet(&["search", "--objective", "A", "--n", "9", "--m", "9"]);
    assert_eq!(too_big.status.code(), Some(1));
}

#[test]
fn verify_exit_codes() {
    let v = json(&resnet(&["verify", "--filter", "appendixB"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r["passed"] == Value::Bool(true)));

    let out = resnet(&["verify", "--filter", "small"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAILED small/cycle_crossover"));

    assert_eq!(resnet(&["verify", "--filter", "nonsense"]).status.code(), Some(1));
}

#[test]
fn text_and_csv_formats() {
    let out = resnet(&["verify", "--filter", "golden", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("detail,group,name,passed\n"));
    assert_eq!(text.lines().count(), 4);
    let out = resnet(&["construct", "--spec", "family=star n=5", "--analyze", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("analysis.A: 1.6\n"));
}
