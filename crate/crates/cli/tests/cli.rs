use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn depthlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_depthlab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_out(args: &[&str]) -> Value {
    let out = depthlab(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("depthlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn point(v: &Value) -> (f64, f64) {
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn depth_of_cross_centre() {
    let r = json_out(&["depth", "--scene", "cross-2.10", "--point", "0,0"]);
    assert_eq!(r["depth"], 2.0);
    assert_eq!(r["depth_open"], 1.0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["region", "--scene", "cross-2.10", "--alpha", "0"][..],
        &["region", "--scene", "cross-2.10", "--alpha", "-1"],
        &["depth", "--scene", "cross-2.10", "--point", "nan,0"],
        &["depth", "--scene", "no-such-scene", "--point", "0,0"],
        &["verify", "no-such-example"],
        &[
            "region",
            "--scene",
            "disc-atoms-3.3",
            "--alpha",
            "0.1",
            "--method",
            "exact",
        ],
    ] {
        assert_eq!(depthlab(args).status.code(), Some(2), "{args:?}");
    }
    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"components":[{"kind":"atom","point":[0,0],"mass":-1}]}"#).unwrap();
    let out = depthlab(&["depth", "--scene", bad.to_str().unwrap(), "--point", "0,0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn four_atoms_region_is_a_segment() {
    let r = json_out(&["region", "--scene", "four-atoms-2.7", "--alpha", "2"]);
    let s = &r["regions"][0]["shape"];
    assert_eq!(s["kind"], "segment");
    let mut ends = [point(&s["a"]), point(&s["b"])];
    ends.sort_by(|p, q| p.0.total_cmp(&q.0));
    assert_eq!(ends, [(0.0, 0.0), (1.0, -1.0)]);
}

#[test]
fn double_triangle_median_set_and_covering_median() {
    let r = json_out(&["region", "--scene", "double-triangle-4.1", "--alpha", "star"]);
    assert_eq!(r["regions"][0]["alpha"], 2.0);
    let s = &r["regions"][0]["shape"];
    assert_eq!(s["kind"], "polygon");
    let mut v: Vec<_> = s["vertices"].as_array().unwrap().iter().map(point).collect();
    v.sort_by(|p, q| p.partial_cmp(q).unwrap());
    assert_eq!(v, [(-1.0, 1.0), (-1.0, 3.0), (1.0, 3.0)]);

    let c = json_out(&["covering-median", "--scene", "double-triangle-4.1"]);
    assert_eq!(c["covers"], true);
    let (x, y) = point(&c["point"]);
    // inside the triangle (-11/19, 51/19), (-5/7, 15/7), (-1/5, 12/5),
    // boundary included; (-1/3, 7/3) lies on its lower edge
    let tri = [(-11.0 / 19.0, 51.0 / 19.0), (-5.0 / 7.0, 15.0 / 7.0), (-0.2, 2.4)];
    let side = |a: (f64, f64), b: (f64, f64)| (b.0 - a.0) * (y - a.1) - (b.1 - a.1) * (x - a.0);
    let s: Vec<f64> = (0..3).map(|i| side(tri[i], tri[(i + 1) % 3])).collect();
    assert!(
        s.iter().all(|&v| v >= -1e-9) || s.iter().all(|&v| v <= 1e-9),
        "{x}, {y}"
    );
}

#[test]
fn verify_examples_pass() {
    for name in [
        "cross-2.10",
        "triangle-gap-2.11",
        "disc-atoms-3.3",
        "double-triangle-4.1",
        "four-atoms-2.7",
        "inclusion-chain",
        "grunbaum",
    ] {
        let out = depthlab(&["verify", name]);
        let text = String::from_utf8_lossy(&out.stdout);
        assert_eq!(out.status.code(), Some(0), "{name}: {text}");
        assert!(text.lines().all(|l| l.contains(": PASS")), "{text}");
    }
}

#[test]
fn scene_file_round_trip() {
    let path = scratch("scene.json");
    std::fs::write(
        &path,
        r#"{"components":[
            {"kind":"atom","point":[1,0],"mass":1},
            {"kind":"atom","point":[-1,0],"mass":1},
            {"kind":"atom","point":[0,1],"mass":1},
            {"kind":"atom","point":[0,-1],"mass":1}
        ]}"#,
    )
    .unwrap();
    let file = json_out(&["depth", "--scene", path.to_str().unwrap(), "--point", "0,0"]);
    assert_eq!(file["depth"], 2.0);
    let norm = json_out(&[
        "depth",
        "--scene",
        path.to_str().unwrap(),
        "--normalize",
        "--point",
        "0,0",
    ]);
    assert_eq!(norm["depth"], 0.5);
    assert_eq!(norm["total_mass"], 1.0);
}

#[test]
fn json_and_svg_files() {
    let (js, sv) = (scratch("sweep.json"), scratch("sweep.svg"));
    let out = depthlab(&[
        "region",
        "--scene",
        "triangle-gap-2.11",
        "--alpha",
        "0.5,1,1.5",
        "--K",
        "128",
        "--json",
        js.to_str().unwrap(),
        "--svg",
        sv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&js).unwrap()).unwrap();
    let areas: Vec<f64> = r["regions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["area"].as_f64().unwrap())
        .collect();
    assert_eq!(areas.len(), 3);
    assert!(areas.windows(2).all(|w| w[1] < w[0]), "{areas:?}");
    let svg = std::fs::read_to_string(&sv).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"fill="none""#).count(), 3);
}

#[test]
fn consistency_prints_csv() {
    let out = depthlab(&[
        "consistency",
        "--scene",
        "uniform-square",
        "--alpha",
        "0.25",
        "--ns",
        "50,100",
        "--reps",
        "2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 1 + 2 * 2, "{text}");
    let cols = rows[0].split(',').count();
    assert!(rows.iter().all(|r| r.split(',').count() == cols));
}

#[test]
fn numbers_carry_twelve_digits() {
    let out = depthlab(&["covering-median", "--scene", "double-triangle-4.1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("-0.333333333333,"), "{text}");
}
