use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_circle-torsion"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn read_json(path: &std::path::Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn t2_at_half_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("half.json");
    let out = run(&[
        "t2",
        "--a",
        "0.5",
        "--alpha",
        "1",
        "--json",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&p);
    assert_eq!(v["values"]["t_alpha_im"].as_f64(), Some(0.0));
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"t2.vanishes"));
}

#[test]
fn t2_report_schema_and_alpha_law() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a1.json");
    let p2 = dir.path().join("a2.json");
    assert_eq!(
        run(&[
            "t2",
            "--a",
            "0.25",
            "--alpha",
            "1",
            "--json",
            p1.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    assert_eq!(
        run(&[
            "t2",
            "--a",
            "0.25",
            "--alpha",
            "2",
            "--json",
            p2.to_str().unwrap()
        ])
        .status
        .code(),
        Some(0)
    );
    let (v1, v2) = (read_json(&p1), read_json(&p2));
    for key in ["meta", "values", "certificates", "checks", "constants"] {
        assert!(v1.get(key).is_some(), "{key}");
    }
    for key in [
        "t_alpha_re",
        "t_alpha_im",
        "t_alpha_closed_form_im",
        "ratio",
        "T0",
        "T0_exact",
    ] {
        assert!(v1["values"][key].is_number(), "{key}");
    }
    for c in v1["checks"].as_array().unwrap() {
        for key in [
            "name",
            "anchor",
            "value",
            "reference",
            "provenance",
            "tolerance",
            "pass",
        ] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
    let t1 = v1["values"]["t_alpha_im"].as_f64().unwrap();
    let t2 = v2["values"]["t_alpha_im"].as_f64().unwrap();
    assert!((2.0 * t2 - t1).abs() <= 1e-8 * t1.abs());
    assert!((t1 + 0.556_840_309_066_16).abs() < 1e-12);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["t2", "--a", "1.5"]).status.code(), Some(2));
    assert_eq!(
        run(&["t2", "--a", "0.3", "--alpha", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["t2", "--a", "0.3", "--modes", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["t2", "--a", "0.3", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["sweep", "--from", "0.0", "--to", "0.5", "--steps", "3"])
            .status
            .code(),
        Some(2)
    );
    let out = run(&["t2", "--a", "0.3", "--quad-nodes", "17"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tolerance"));
    let out = bin()
        .args(["verify", "--suite", "grassmann"])
        .env("CIRCLE_TORSION_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn verify(suite: &str, seed: &str, threads: Option<&str>) -> (Option<i32>, Value, Vec<u8>) {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.json");
    let mut cmd = bin();
    cmd.args([
        "verify",
        "--suite",
        suite,
        "--seed",
        seed,
        "--json",
        p.to_str().unwrap(),
    ]);
    if let Some(n) = threads {
        cmd.env("CIRCLE_TORSION_THREADS", n);
    }
    let out = cmd.output().unwrap();
    let bytes = std::fs::read(&p).unwrap();
    (
        out.status.code(),
        serde_json::from_slice(&bytes).unwrap(),
        bytes,
    )
}

fn names(v: &Value) -> Vec<String> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn sl2_suite_contains_the_volume_check() {
    let (code, v, _) = verify("sl2", "7", None);
    assert_eq!(code, Some(0));
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "sl2.vol_a_n")
        .unwrap();
    assert_eq!(c["reference"].as_f64(), Some(-2.0));
    assert_eq!(c["pass"], Value::Bool(true));
    assert_eq!(v["meta"]["suite"], "sl2");
    assert!(v["constants"]["C_conv"].is_number());
    assert!(v["constants"]["gamma54"].is_number());
    assert!(v["constants"]["comparisons"]["class_over_gamma_cl_published"].is_number());
}

#[test]
fn torsion_suite_contains_t0_at_half() {
    let (code, v, _) = verify("torsion", "0", None);
    assert_eq!(code, Some(0));
    let c = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "torsion.t0[a=0.5]")
        .unwrap();
    assert!((c["reference"].as_f64().unwrap() + 4f64.ln()).abs() < 1e-15);
    assert!(names(&v).iter().all(|n| n.starts_with("torsion.")));
}

#[test]
fn reports_are_sorted_and_independent_of_thread_count() {
    let (_, v, one) = verify("grassmann", "11", Some("1"));
    let (_, _, four) = verify("grassmann", "11", Some("4"));
    assert_eq!(one, four);
    let text = String::from_utf8(one).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert_eq!(keys, ["checks", "constants", "meta"]);
    assert!(text.find("\"anchor\"").unwrap() < text.find("\"name\"").unwrap());
    for c in v["checks"].as_array().unwrap() {
        let p = c["provenance"].as_str().unwrap();
        assert!(["published", "trivial", "derived"].contains(&p));
    }
}

#[test]
fn sweep_table() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let json = dir.path().join("s.json");
    let out = run(&[
        "sweep",
        "--from",
        "0.05",
        "--to",
        "0.95",
        "--steps",
        "19",
        "--alpha",
        "1",
        "--csv",
        csv.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "a,t0,t_alpha_im,clausen,t_alpha_over_clausen,lambda,class_coefficient"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 19);
    let first = text.lines().nth(1).unwrap();
    assert!(first.split(',').all(|x| x.contains('e')));
    let ratio = rows[0][4];
    for i in 0..19 {
        let j = 18 - i;
        assert!(
            (rows[i][1] - rows[j][1]).abs() <= 1e-8,
            "T0 symmetry at {i}"
        );
        assert!(
            (rows[i][2] + rows[j][2]).abs() <= 1e-8,
            "t_1 antisymmetry at {i}"
        );
        if (rows[i][0] - 0.5).abs() > 1e-9 {
            assert!(
                (rows[i][4] - ratio).abs() <= 1e-8 * ratio.abs(),
                "ratio at {i}"
            );
            assert!((rows[i][5] - rows[i][6]).abs() <= 1e-8 * rows[i][5].abs());
        }
    }
    let v = read_json(&json);
    assert_eq!(v["rows"].as_array().unwrap().len(), 19);
}
