use std::f64::consts::PI;
use std::fs;
use std::process::{Command, Output};

use g1lab::io::{decomposition_from_json, matrix_from_json, polygon_from_json};
use g1lab::pseudospec::PseudospectrumField;
use serde_json::Value;

fn g1lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g1lab"))
        .args(args)
        .output()
        .expect("running the g1lab binary")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn exit_codes() {
    assert_eq!(g1lab(&["--help"]).status.code(), Some(0));
    assert_eq!(g1lab(&[]).status.code(), Some(1));
    assert_eq!(g1lab(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(g1lab(&["spectrum"]).status.code(), Some(1), "missing input");
    assert_eq!(g1lab(&["spectrum", "--recipe", "bogus"]).status.code(), Some(1));
    assert_eq!(g1lab(&["spectrum", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(g1lab(&["pseudo", "--recipe", "jordan", "--eps", "-1"]).status.code(), Some(1));
    assert_eq!(g1lab(&["demo", "no-such-demo"]).status.code(), Some(1));
    // two clusters too close to separate with a contour: numerical failure
    let o = g1lab(&["decompose", "--recipe", "diagonal", "--values", "0,5e-6"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn spectrum_json_reports_both_radii() {
    let o = g1lab(&["spectrum", "--recipe", "normal", "--values", "1,2i,-3", "--format", "json"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["clusters"].as_array().unwrap().len(), 3);
    assert!((v["spectral_radius"].as_f64().unwrap() - 3.0).abs() < 1e-12);
    assert!((v["spectral_radius_limit"].as_f64().unwrap() - 3.0).abs() < 0.1);
}

#[test]
fn matrix_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("a.json");
    fs::write(&json, r#"{"n": 2, "entries": [[[0, 0], [1, 0]], [[0, 0], [0, 0]]]}"#).unwrap();
    let mm = dir.path().join("a.mtx");
    fs::write(&mm, "%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 1.0\n").unwrap();
    let a = stdout(&g1lab(&["g1check", json.to_str().unwrap()]));
    let b = stdout(&g1lab(&["g1check", mm.to_str().unwrap()]));
    assert_eq!(a, b, "both formats describe the same matrix");
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["verdict"], "Not-G1");

    // funcalc output is itself a valid matrix file
    let out = dir.path().join("exp.json");
    let o = g1lab(&["funcalc", json.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let e = matrix_from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    // exp of the 2×2 Jordan block at 0 is [[1, 1], [0, 1]]
    for (i, j, want) in [(0, 0, 1.0), (0, 1, 1.0), (1, 0, 0.0), (1, 1, 1.0)] {
        assert!((e.get(i, j).re - want).abs() < 1e-9 && e.get(i, j).im.abs() < 1e-9);
    }
    assert!(g1lab(&["spectrum", out.to_str().unwrap()]).status.success());
}

#[test]
fn pseudo_csv_and_json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let json = dir.path().join("f.json");
    let base = ["pseudo", "--recipe", "diagonal", "--values", "0,1", "--grid", "31", "21"];
    let o = g1lab(&[&base[..], &["--out", csv.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let o = g1lab(&[&base[..], &["--format", "json", "--out", json.to_str().unwrap()]].concat());
    assert!(o.status.success());
    let from_csv = PseudospectrumField::from_csv(&fs::read_to_string(&csv).unwrap(), "2").unwrap();
    let from_json = PseudospectrumField::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(from_csv.values.len(), 31 * 21);
    for (x, y) in from_csv.values.iter().zip(&from_json.values) {
        assert!(x == y || (x - y).abs() <= 1e-12 * x.abs(), "{x} vs {y}");
    }
    // the grid has a node on the eigenvalue 0
    assert!(fs::read_to_string(&csv).unwrap().contains("inf"));
}

#[test]
fn pseudo_mask_area_matches_two_disks() {
    let o = g1lab(&["pseudo", "--recipe", "diagonal", "--values", "0,1", "--eps", "0.1", "--norm", "2"]);
    assert!(o.status.success());
    let note = String::from_utf8(o.stderr).unwrap();
    let area: f64 = note
        .split("area ")
        .nth(1)
        .and_then(|t| t.trim().parse().ok())
        .unwrap_or_else(|| panic!("no area in `{note}`"));
    // default grid over [-1, 2] × [-1, 1]; the boundary band of both circles
    // is at most one cell diagonal wide
    let cell = (3.0f64 / 200.0).hypot(2.0 / 200.0);
    let exact = 2.0 * PI * 0.01;
    assert!((area - exact).abs() <= 2.0 * 2.0 * PI * 0.1 * cell, "area {area}");
}

#[test]
fn pseudo_svg_needs_eps_and_is_deterministic() {
    let base = ["pseudo", "--recipe", "jordan", "--grid", "41", "41", "--format", "svg"];
    assert_eq!(g1lab(&base).status.code(), Some(1));
    let args = [&base[..], &["--eps", "0.1,0.3"]].concat();
    let a = g1lab(&args);
    let b = g1lab(&args);
    assert!(a.status.success());
    let svg = stdout(&a);
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
    assert!(svg.contains("<path") || svg.contains("<line") || svg.contains("<polyline"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_g1lab"))
            .args(["pseudo", "--recipe", "oblique", "--grid", "31", "17"])
            .env("G1LAB_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, run("3").stdout);
    assert_eq!(one.stdout, run("0").stdout);
    let bad = run("lots");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn numrange_polygon_for_jordan_block() {
    let o = g1lab(&["numrange", "--recipe", "jordan"]);
    assert!(o.status.success());
    let poly = polygon_from_json(&stdout(&o)).unwrap();
    // the field of values of J2(0) is the disk of radius 1/2
    for z in &poly {
        assert!((z.norm() - 0.5).abs() < 1e-6, "{z}");
    }
    let text = stdout(&g1lab(&["numrange", "--recipe", "jordan", "--format", "text"]));
    assert!(text.contains("verdict: Not-G1"), "{text}");
}

#[test]
fn decompose_json_round_trip() {
    let o = g1lab(&["decompose", "--recipe", "normal", "--values", "0,1,1,2i"]);
    assert!(o.status.success());
    let doc = decomposition_from_json(&stdout(&o)).unwrap();
    assert!(doc.passes);
    assert_eq!(doc.lambdas.len(), 3);
    let projections = doc.projection_matrices().unwrap();
    let trace: f64 = projections.iter().map(|p| (0..4).map(|i| p.get(i, i).re).sum::<f64>()).sum();
    assert!((trace - 4.0).abs() < 1e-9);
    let text = stdout(&g1lab(&["decompose", "--recipe", "jordan", "--format", "text"]));
    assert!(text.contains("result           FAIL"), "{text}");
}

#[test]
fn funcalc_polynomial_and_nilpotent_algebra() {
    let o = g1lab(&["funcalc", "--recipe", "nilpotent-algebra", "--values", "1,2"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    // exp(α + βn) = e^α (1 + βn)
    let e = std::f64::consts::E;
    assert!((v["alpha"][0].as_f64().unwrap() - e).abs() < 1e-9);
    assert!((v["beta"][0].as_f64().unwrap() - 2.0 * e).abs() < 1e-9);

    let o = g1lab(&["funcalc", "--recipe", "diagonal", "--values", "2,-1", "--function", "poly", "--coeffs", "1,0,1"]);
    let m = matrix_from_json(&stdout(&o)).unwrap();
    assert!((m.get(0, 0).re - 5.0).abs() < 1e-9 && (m.get(1, 1).re - 2.0).abs() < 1e-9);
    assert_eq!(g1lab(&["funcalc", "--recipe", "jordan", "--function", "poly"]).status.code(), Some(1));
}

#[test]
fn input_from_stdin_and_recipe_conflict() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_g1lab"))
        .args(["spectrum", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"n": 1, "entries": [[[4, 0]]]}"#)
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("4 + 0i"));
    assert_eq!(g1lab(&["spectrum", "x.json", "--recipe", "jordan"]).status.code(), Some(1));
}

#[test]
fn demo_scenarios_run_individually() {
    for name in ["nilpotent-algebra", "jordan-witness", "quadrature"] {
        let o = g1lab(&["demo", name]);
        assert!(o.status.success(), "{name}");
        let out = stdout(&o);
        assert!(out.contains("PASS") && !out.contains("FAIL"), "{out}");
    }
}
