use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

const T_GEN: &str = r#"{"vertices":[[0,0,0],[4,0,0],[1,3,0],[2,1,2]]}"#;
const T_SEMI: &str = r#"{"vertices":[[0,0,0],[4,0,0],[1,3,0],[1,2,2]]}"#;
const T_ORTH: &str = r#"{"vertices":[[0,0,0],[4,0,0],[1,3,0],[1,1,2]]}"#;
const T_TRI: &str = r#"{"vertices":[[0,0,0],[1,0,0],[0,1,0],[0,0,1]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_altitudes"))
        .args(args)
        .output()
        .unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn analyze_fixtures() {
    let dir = TempDir::new().unwrap();
    for (doc, class, kind) in [
        (T_GEN, "generic", "hyperboloid"),
        (T_SEMI, "semi_orthocentric", "plane_pair"),
        (T_ORTH, "orthocentric", "trivial"),
        (T_TRI, "orthocentric", "trivial"),
    ] {
        let out = run(&["analyze", &write(&dir, "t.json", doc)]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let v = json(&out);
        assert_eq!(v["class"], class);
        assert_eq!(v["quadric_kind"], kind);
        assert_eq!(v["invariants_ok"], true);
        for (_, r) in v["residuals"].as_object().unwrap() {
            let r = r.as_f64().unwrap();
            assert!((0.0..=1e-9).contains(&r));
        }
    }
}

#[test]
fn bad_input_exits_with_2() {
    let dir = TempDir::new().unwrap();
    let flat = write(
        &dir,
        "flat.json",
        r#"{"vertices":[[0,0,0],[1,0,0],[2,0,0],[0,0,1]]}"#,
    );
    let junk = write(&dir, "junk.json", "not json");
    for args in [
        vec!["analyze", flat.as_str()],
        vec!["classify", junk.as_str()],
        vec!["analyze", "/nonexistent/file.json"],
        vec![
            "porism",
            "--form",
            "1,1,1,0,0,0",
            "--rho",
            "1",
            "--svg",
            "/dev/null",
        ],
        vec![
            "porism",
            "--form",
            "1,1,-2",
            "--rho",
            "1",
            "--svg",
            "/dev/null",
        ],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    let gen = write(&dir, "gen.json", T_GEN);
    let semi = write(&dir, "semi.json", T_SEMI);
    let obj = dir.path().join("m.obj");
    let obj = obj.to_str().unwrap();
    assert_eq!(
        run(&["quadric", &gen, "--obj", obj, "--res", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["quadric", &semi, "--obj", obj]).status.code(),
        Some(2)
    );
}

#[test]
fn classify_reports_the_pair() {
    let dir = TempDir::new().unwrap();
    let out = run(&["classify", &write(&dir, "s.json", T_SEMI)]);
    let v = json(&out);
    assert_eq!(v["class"], "semi_orthocentric");
    assert_eq!(v["orthogonal_pair"], "01-23");
    let out = run(&["classify", "--pretty", &write(&dir, "g.json", T_GEN)]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "generic");
}

#[test]
fn quadric_writes_obj() {
    let dir = TempDir::new().unwrap();
    let obj = dir.path().join("gen.obj");
    let out = run(&[
        "quadric",
        &write(&dir, "g.json", T_GEN),
        "--obj",
        obj.to_str().unwrap(),
        "--res",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(&obj).unwrap();
    let v = text.lines().filter(|l| l.starts_with("v ")).count();
    let f: Vec<_> = text.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(v, 13 * 12);
    assert_eq!(f.len(), 2 * 12 * 12);
    for line in f {
        for idx in line.split_whitespace().skip(1) {
            let i: usize = idx.parse().unwrap();
            assert!(i >= 1 && i <= v);
        }
    }
    assert!(json(&out)["max_relative_residual"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn porism_writes_svg() {
    let dir = TempDir::new().unwrap();
    let svg = dir.path().join("p.svg");
    let out = run(&[
        "porism",
        "--form",
        "2,1,-3,0,0,0",
        "--rho",
        "1",
        "--count",
        "8",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["count"], 8);
    assert_eq!(v["center"], serde_json::json!([0.0, 0.0, 1.0]));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<polygon").count(), 8);
    assert_eq!(text.matches("<ellipse").count(), 1);
}

#[test]
fn random_is_reproducible_and_pipes_into_classify() {
    let dir = TempDir::new().unwrap();
    for (class, expected) in [
        ("generic", "generic"),
        ("semi", "semi_orthocentric"),
        ("ortho", "orthocentric"),
    ] {
        let a = run(&["random", "--class", class, "--seed", "42"]);
        let b = run(&["random", "--class", class, "--seed", "42"]);
        assert_eq!(a.stdout, b.stdout);
        let path = write(&dir, "r.json", std::str::from_utf8(&a.stdout).unwrap());
        assert!(Path::new(&path).exists());
        assert_eq!(json(&run(&["classify", &path]))["class"], expected);
    }
}
