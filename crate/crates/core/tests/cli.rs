use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn zebra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zebra"))
        .args(args)
        .output()
        .expect("run zebra")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

fn labeled(mated: &[f64], nonmated: &[f64]) -> String {
    let mut s = String::new();
    for m in mated {
        s.push_str(&format!("mated\t{m}\n"));
    }
    for n in nonmated {
        s.push_str(&format!("nonmated\t{n}\n"));
    }
    s
}

fn separated() -> String {
    let mated: Vec<f64> = (0..500).map(|i| 50.0 + i as f64 * 0.1).collect();
    let nonmated: Vec<f64> = (0..500).map(|i| -(i as f64) * 0.1).collect();
    labeled(&mated, &nonmated)
}

#[test]
fn evaluate_zero_evidence() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "zero.tsv", &labeled(&[1.0; 10], &[1.0; 7]));
    let out = zebra(&["evaluate", "--scores", &f]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "zero: (D_ECE=0.00, log10(l)=0.00, tag=0)\n");
}

#[test]
fn evaluate_json_separated() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "sep.tsv", &separated());
    let out = zebra(&["evaluate", "--scores", &f, "--json", "--baselines"]);
    assert_eq!(out.status.code(), Some(0));
    let report = zebra::io::parse_report_json(&stdout(&out)).unwrap();
    // Laplace-capped blocks {A, 500 B} and {500 A, B}: Z(500) per class.
    let z = zebra::metrics::z_kernel(500.0);
    assert!((report.d_ece - 2.0 * z / std::f64::consts::LN_2).abs() < 1e-12);
    assert!((report.d_ece - 0.7213).abs() < 0.01);
    assert_eq!(report.baselines.unwrap().eer, 0.0);
}

#[test]
fn evaluate_split_pair() {
    let dir = TempDir::new().unwrap();
    let m = write(dir.path(), "m.txt", "1.0\n2.0\n");
    let n = write(dir.path(), "n.txt", "# nonmated\n0.5\n");
    let out = zebra(&[
        "evaluate",
        "--format",
        "split-pair",
        "--scores",
        &m,
        "--nonmated",
        &n,
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let missing = zebra(&["evaluate", "--format", "split-pair", "--scores", &m]);
    assert_eq!(missing.status.code(), Some(2));
    let stray = zebra(&["evaluate", "--scores", &m, "--nonmated", &n]);
    assert_eq!(stray.status.code(), Some(2));
}

#[test]
fn missing_file_names_path() {
    let out = zebra(&["evaluate", "--scores", "/no/such/scores.tsv"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/no/such/scores.tsv"));
}

#[test]
fn malformed_input_is_user_error() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "bad.tsv", "target\t1.0\n");
    let out = zebra(&["evaluate", "--scores", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));
}

#[test]
fn profile_outputs() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "unprotected.tsv", &separated());
    let b = write(
        dir.path(),
        "b1.tsv",
        &labeled(&[1.0, 2.0, 3.0, 2.5], &[0.0, 1.5, 2.2]),
    );
    let c = write(dir.path(), "b2.tsv", &labeled(&[1.0; 3], &[1.0; 3]));
    let csv = dir.path().join("p.csv");
    let svg = dir.path().join("p.svg");

    let one = zebra(&["profile", "--scores", &a, "--csv", csv.to_str().unwrap()]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 202);

    let three = zebra(&[
        "profile",
        "--scores",
        &a,
        "--scores",
        &b,
        "--scores",
        &c,
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(three.status.code(), Some(0));
    let body = fs::read_to_string(&svg).unwrap();
    assert_eq!(body.matches("<polyline").count(), 4);
    assert!(body.contains("b2 (0.00, 0.00, 0)"));
    let header = fs::read_to_string(&csv)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    assert_eq!(header, "log10_odds,perfect_privacy_ece,unprotected,b1,b2");

    let custom = zebra(&[
        "profile",
        "--scores",
        &a,
        "--csv",
        csv.to_str().unwrap(),
        "--grid",
        "-2:2:5",
    ]);
    assert_eq!(custom.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 6);
}

#[test]
fn profile_rejects_bad_grid() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.tsv", &separated());
    let csv = dir.path().join("p.csv");
    let out = zebra(&[
        "profile",
        "--scores",
        &a,
        "--csv",
        csv.to_str().unwrap(),
        "--grid",
        "0:1:1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("invalid grid"));
    assert!(!csv.exists());
}

#[test]
fn compare_ranks_by_disclosure() {
    let dir = TempDir::new().unwrap();
    let strong = write(dir.path(), "strong.tsv", &separated());
    let weak = write(
        dir.path(),
        "weak.tsv",
        &labeled(&[1.0, 2.0, 3.0, 2.5, 0.5], &[0.0, 1.5, 2.2, 0.7]),
    );
    let out = zebra(&["compare", "--scores", &strong, "--scores", &weak]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "rank\tsource_id\td_ece\tlog10_l\ttag");
    assert!(rows[1].starts_with("1\tweak\t"));
    assert!(rows[2].starts_with("2\tstrong\t"));

    let single = zebra(&["compare", "--scores", &strong]);
    assert_eq!(single.status.code(), Some(2));
}

#[test]
fn simulate_writes_deterministic_files() {
    let dir = TempDir::new().unwrap();
    let out1 = dir.path().join("a.tsv");
    let out2 = dir.path().join("b.tsv");
    let args = |out: &str| {
        vec![
            "simulate".to_string(),
            "--mu-mated".into(),
            "2".into(),
            "--mu-nonmated".into(),
            "-1".into(),
            "--sigma".into(),
            "1".into(),
            "--n-mated".into(),
            "30".into(),
            "--n-nonmated".into(),
            "20".into(),
            "--seed".into(),
            "7".into(),
            "--out".into(),
            out.to_string(),
        ]
    };
    for out in [&out1, &out2] {
        let a = args(out.to_str().unwrap());
        let a: Vec<&str> = a.iter().map(String::as_str).collect();
        assert_eq!(zebra(&a).status.code(), Some(0));
    }
    let body = fs::read(&out1).unwrap();
    assert_eq!(body, fs::read(&out2).unwrap());
    assert_eq!(String::from_utf8(body).unwrap().lines().count(), 50);

    let mut bad = args(out1.to_str().unwrap());
    bad[6] = "0".into();
    let bad: Vec<&str> = bad.iter().map(String::as_str).collect();
    assert_eq!(zebra(&bad).status.code(), Some(2));
}

#[test]
fn unknown_flag_is_user_error() {
    assert_eq!(zebra(&["evaluate", "--bogus"]).status.code(), Some(2));
}
