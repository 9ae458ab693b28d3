use std::path::Path;
use std::process::{Command, Output};

fn qent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qent")).args(args).env_remove("QENT_PRIME").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn quiver_file(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

const A2: &str = r#"{"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]}"#;

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn entropy_nu_on_a2() {
    let dir = tempfile::tempdir().unwrap();
    let q = quiver_file(dir.path(), "a2.json", A2);
    let out = qent(&[
        "entropy", "--quiver", &q, "--functor", "nu", "--generator", "P1+P2", "--channels", "hom_A", "--tmin", "0",
        "--tmax", "1", "--tstep", "0.5", "--nmax", "24",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(text.lines().next().unwrap(), "t,channel,N_max,regression_slope,last_ratio,fekete_upper,truncated");
    let r = rows(&text);
    assert_eq!(r.len(), 3);
    for (row, expected) in r.iter().zip([0.0, 1.0 / 6.0, 1.0 / 3.0]) {
        assert_eq!(row[1], "hom_A");
        let slope: f64 = row[3].parse().unwrap();
        assert!((slope - expected).abs() < 0.02, "{row:?}");
    }
}

#[test]
fn entropy_shift_is_exact() {
    let out = qent(&["entropy", "--quiver", "a3", "--functor", "Sigma", "--generator", "P1+P2+P3", "--tmin", "-1", "--tmax", "1", "--nmax", "8"]);
    assert_eq!(out.status.code(), Some(0));
    for row in rows(&stdout(&out)) {
        assert_eq!(row[0], row[3], "{row:?}");
        assert_eq!(row[6], "false");
    }
}

#[test]
fn malformed_functor() {
    let out = qent(&["entropy", "--quiver", "a2", "--functor", "nu * (Sigma", "--generator", "P1+P2"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error at column 12"), "{err}");
}

#[test]
fn filtration_profiles() {
    let f = |obj: &str, kind: &str| stdout(&qent(&["filtration", "--quiver", "a2", "--object", obj, "--kind", kind]));
    assert_eq!(f("S1", "t").trim(), r#"{"kind":"t","entries":[[0,1]]}"#);
    assert_eq!(f("S1", "cot").trim(), r#"{"kind":"cot","entries":[[0,1],[1,1]]}"#);
    assert_eq!(f("P1[3]", "t").trim(), r#"{"kind":"t","entries":[[3,2]]}"#);
}

#[test]
fn delta_values() {
    let out = qent(&["delta", "--quiver", "a2", "--object", "P1+P2", "--t", "-0.25"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 3.0);
    let out = qent(&["delta", "--quiver", "a2", "--object", "P1+P2", "--t", "0.7", "--kind", "cot"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["value"], 2.0);
}

#[test]
fn check_command() {
    for q in ["a2", "kronecker"] {
        let out = qent(&["check", "--quiver", q, "--samples", "10"]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        assert!(stdout(&out).lines().all(|l| l.starts_with("PASS")));
    }
    let dir = tempfile::tempdir().unwrap();
    let cyc = quiver_file(
        dir.path(),
        "cycle.json",
        r#"{"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "1"}]}"#,
    );
    let out = qent(&["check", "--quiver", &cyc]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("cycle"));
}

#[test]
fn duality_command() {
    let out = qent(&["duality", "--quiver", "a2", "--functor", "nu", "--generator", "P1+P2", "--tmin", "-1", "--tmax", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(rows(&stdout(&out)).len(), 5);
    let out = qent(&["duality", "--quiver", "a2", "--functor", "T[S1]", "--generator", "P1+P2"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn channel_disagreement_warns() {
    // growth of T[S1] on the Kronecker quiver is far from converged at small N
    let out = qent(&["entropy", "--quiver", "kronecker", "--functor", "T[S1]", "--generator", "P1+P2", "--tmin", "1", "--tmax", "1", "--nmax", "3"]);
    let code = out.status.code().unwrap();
    assert!(code == 0 || code == 2);
    let gaps: Vec<f64> = rows(&stdout(&out)).iter().map(|r| r[3].parse().unwrap()).collect();
    let spread = gaps.iter().cloned().fold(f64::MIN, f64::max) - gaps.iter().cloned().fold(f64::MAX, f64::min);
    assert_eq!(code == 2, spread > 0.02);
}

#[test]
fn output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, format: &str| {
        let p = dir.path().join(name);
        let out = qent(&[
            "entropy", "--quiver", "a3", "--functor", "nu", "--generator", "P1+P2+P3", "--nmax", "30", "--output", format,
            "--seed", "7", "--out", p.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.csv", "csv"), run("b.csv", "csv"));
    let (j1, j2) = (run("a.json", "json"), run("b.json", "json"));
    assert_eq!(j1, j2);
    let v: serde_json::Value = serde_json::from_slice(&j1).unwrap();
    assert_eq!(v[0]["a"].as_array().unwrap().len(), 30);
}

#[test]
fn field_selection() {
    let dir = tempfile::tempdir().unwrap();
    let rational = quiver_file(
        dir.path(),
        "q.json",
        r#"{"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}], "rational": true}"#,
    );
    let args = ["entropy", "--quiver", &rational, "--functor", "nu", "--generator", "P1+P2", "--nmax", "9", "--channels", "hom_A"];
    let over_q = qent(&args);
    assert_eq!(over_q.status.code(), Some(0));
    let over_p = Command::new(env!("CARGO_BIN_EXE_qent"))
        .args(["entropy", "--quiver", "a2", "--functor", "nu", "--generator", "P1+P2", "--nmax", "9", "--channels", "hom_A"])
        .env("QENT_PRIME", "998244353")
        .output()
        .unwrap();
    assert_eq!(over_p.stdout, over_q.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_qent"))
        .args(["filtration", "--quiver", "a2", "--object", "S1"])
        .env("QENT_PRIME", "1000004")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn invalid_grid() {
    let out = qent(&["entropy", "--quiver", "a2", "--functor", "nu", "--generator", "P1+P2", "--tstep", "0"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qent(&["entropy", "--quiver", "a2", "--functor", "nu", "--generator", "P1+P2", "--nmax", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
