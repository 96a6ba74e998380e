use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bochner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bochner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok_json(args: &[&str]) -> Value {
    let out = bochner(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn floats(v: &Value) -> Vec<f64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bochner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn error_record(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(line.lines().last().unwrap()).unwrap()
}

#[test]
fn classify_space_form() {
    let r = ok_json(&["classify", "--h", "-2,2", "--t", "0,0", "--v", "-4"]);
    // (t+2)²(t-2)² = t⁴ - 8t² + 16
    assert_eq!(floats(&r["p_c"]), vec![1.0, 0.0, -8.0, 0.0, 16.0]);
    assert_eq!(r["m"], 0);
    assert_eq!(r["dims"]["cohomogeneity"], 0);
}

#[test]
fn cells_of_cubic() {
    let r = ok_json(&["cells", "--roots", "1,0,-1"]);
    let cells = r.as_array().unwrap();
    assert_eq!(cells.len(), 2);
    let bounded = cells
        .iter()
        .filter(|c| c["verdict"]["bounded"] == true)
        .count();
    assert_eq!(bounded, 1);
}

#[test]
fn verify_grho_is_bochner_flat() {
    let r = ok_json(&[
        "verify", "--family", "grho", "--rho", "1,2", "--points", "20",
    ]);
    assert_eq!(r["points"], 20);
    assert!(
        r["max_residual"].as_f64().unwrap() < 1e-4,
        "{}",
        r["max_residual"]
    );
}

#[test]
fn verify_other_families() {
    for args in [
        &[
            "verify", "--family", "rotsym", "--k", "-2", "--a", "1", "--points", "4",
        ][..],
        &[
            "verify", "--family", "rotsym", "--k", "-3", "--a", "1", "--branch", "two", "--points",
            "4",
        ],
        &[
            "verify", "--family", "wps", "--rho", "1,1,1", "--points", "4",
        ],
        &[
            "verify", "--family", "leaf", "--roots", "1,0,-1", "--cell", "1", "--points", "4",
        ],
        &[
            "verify",
            "--family",
            "reduction",
            "--weights",
            "1,1,1",
            "--points",
            "4",
        ],
    ] {
        let r = ok_json(args);
        assert!(
            r["max_residual"].as_f64().unwrap() < 1e-3,
            "{args:?}: {}",
            r["max_residual"]
        );
    }
}

#[test]
fn verify_flags_unequal_weights() {
    let r = ok_json(&[
        "verify",
        "--family",
        "reduction",
        "--weights",
        "1,1,2",
        "--points",
        "6",
        "--half-width",
        "0.3",
    ]);
    assert!(r["max_residual"].as_f64().unwrap() > 1e-3);
}

#[test]
fn classify_construct_round_trip() {
    let point = scratch("point.json");
    std::fs::write(
        &point,
        r#"{"n":3,"H_re":[[0.5,0.2,0.0],[0.2,-0.3,0.1],[0.0,0.1,0.9]],
            "H_im":[[0,0.1,-0.2],[-0.1,0,0.05],[0.2,-0.05,0]],
            "T_re":[0.3,-0.2,0.4],"T_im":[0.1,0.2,0.0],"V":-0.4}"#,
    )
    .unwrap();
    let report = scratch("classify.json");
    let out = bochner(&[
        "classify",
        "--input",
        point.to_str().unwrap(),
        "--output",
        report.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let cls: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let con = ok_json(&["construct", "--input", report.to_str().unwrap()]);
    for key in ["a", "b"] {
        let (x, y) = (floats(&cls["phi"][key]), floats(&con["phi"][key]));
        for (a, b) in x.iter().zip(&y) {
            assert!((a - b).abs() < 1e-8, "{key}: {x:?} vs {y:?}");
        }
    }
}

#[test]
fn construct_inline() {
    // p_D = (t-1)t(t+1), interior k of the bounded cell
    let r = ok_json(&[
        "construct",
        "--pc",
        "1,0,-1,0",
        "--pd",
        "1,0,-1,0",
        "--k",
        "-0.5",
    ]);
    assert_eq!(r["case"], "4-0");
    assert_eq!(r["point"]["n"], 1);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &[
            "verify", "--family", "wps", "--rho", "1,2,3", "--points", "3", "--format", "csv",
        ][..],
        &["cells", "--roots", "2,1,-0.5,-1.5", "--format", "svg"],
        &["cells", "--roots", "2,1,-0.5,-1.5", "--format", "csv"],
        &[
            "geodesic", "--h", "0.3,-0.2", "--t", "0.5,0.1", "--v", "0.2", "--w", "0.6,0",
            "--w-im", "0,0.8", "--length", "0.2",
        ],
    ] {
        let a = bochner(args);
        let b = bochner(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let a = bochner(&[
        "verify", "--family", "grho", "--rho", "1,2", "--points", "2", "--seed", "1",
    ]);
    let b = bochner(&[
        "verify", "--family", "grho", "--rho", "1,2", "--points", "2", "--seed", "2",
    ]);
    assert_ne!(a.stdout, b.stdout);
}

#[test]
fn cell_layouts_for_quartics() {
    let cells = |roots: &str| -> Vec<(String, bool)> {
        ok_json(&["cells", "--roots", roots])
            .as_array()
            .unwrap()
            .iter()
            .map(|c| {
                (
                    c["case"].as_str().unwrap().to_string(),
                    c["verdict"]["bounded"] == true,
                )
            })
            .collect()
    };
    // three cells, only the lowest is compact
    let c4 = cells("2,1,-0.5,-1.5");
    assert_eq!(c4.len(), 3);
    assert_eq!(
        c4.iter()
            .filter(|c| c.1)
            .map(|c| c.0.as_str())
            .collect::<Vec<_>>(),
        ["4-0"]
    );
    // a double root: two cells, a unbounded and b bounded
    let c3 = cells("1,1,0,-1");
    assert_eq!(
        c3,
        vec![("3-1a".to_string(), false), ("3-1b".to_string(), true)]
    );

    let csv =
        String::from_utf8(bochner(&["cells", "--roots", "1,1,0,-1", "--format", "csv"]).stdout)
            .unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("# bochner-cells v1"));
    assert_eq!(
        lines.next(),
        Some("kind,cell,case,seq,u1,u2,constant,coeff1,coeff2,style")
    );
    assert!(csv
        .lines()
        .any(|l| l.starts_with("boundary,1,3-1b") && l.ends_with(",open")));
    let svg = String::from_utf8(
        bochner(&["cells", "--roots", "2,1,-0.5,-1.5", "--format", "svg"]).stdout,
    )
    .unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains("4-0 (bounded)"));
    assert!(svg.contains("stroke-dasharray=\"6,4\""));
}

#[test]
fn case_one_quartic_has_one_unbounded_cell() {
    // (t² + 1)(t - 1)(t + 1): two simple real roots, m = 2
    let r = ok_json(&["cells", "--pd", "1,0,0,0,-1"]);
    let cells = r.as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["case"], "1");
    assert_eq!(cells[0]["verdict"]["bounded"], false);
    let svg = bochner(&["cells", "--pd", "1,0,0,0,-1", "--format", "svg"]);
    assert!(svg.status.success());
}

#[test]
fn geodesic_writes_path_and_report() {
    let out = bochner(&[
        "geodesic",
        "--h",
        "0.3,-0.2",
        "--t",
        "0.5,0.1",
        "--v",
        "0.2",
        "--w",
        "0.6,0",
        "--w-im",
        "0,0.8",
        "--length",
        "0.5",
        "--project",
    ]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        csv.lines().next(),
        Some("s,lambda1,lambda2,t_norm_sq,v,c2,c3,c4")
    );
    assert_eq!(csv.lines().count(), 502);
    let report: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(report["max_drift"].as_f64().unwrap() < 1e-8);
    assert_eq!(report["constant_factor"]["holds"], true);
}

#[test]
fn dim1_and_orbifold() {
    let r = ok_json(&["dim1", "--c2", "-3", "--c3", "1"]);
    assert_eq!(r["case"], "Case4");
    assert_eq!(r["components"].as_array().unwrap().len(), 2);
    let r = ok_json(&["orbifold", "--r", "1", "--p", "0,1,2", "--nu", "0,0,0"]);
    assert_eq!(floats(&r["roots"]), vec![3.0, 0.0, -3.0]);
    assert_eq!(floats(&r["p_d"]), vec![1.0, 0.0, -9.0, 0.0]);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["bogus"][..],
        &["classify", "--h", "1"],
        &["classify", "--input", "/nonexistent/point.json"],
        &["cells", "--roots", "1,0,-1", "--format", "svg"],
        &["orbifold", "--r", "-1", "--p", "0,1", "--nu", "0,0"],
        &["verify", "--family", "grho"],
    ] {
        let out = bochner(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let rec = error_record(&out);
        assert!(rec["error"]["kind"].is_string(), "{args:?}");
    }
}

#[test]
fn numerical_failure_exits_3() {
    let out = bochner(&[
        "geodesic", "--h", "3", "--t", "3", "--v", "0", "--w", "1", "--length", "20", "--step",
        "1e-2",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_record(&out)["error"]["kind"], "numerical");
}
