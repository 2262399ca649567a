//! Bundled example checks behind `depthlab verify`.

use std::path::Path;

use depthlab::covering::{covering_median_search, covering_test, covering_test_with, uniqueness_test, MassVariant};
use depthlab::depth::{depth, minimizing_halfspaces};
use depthlab::experiments::{
    grunbaum_check, strict_monotonicity_check, triangle_gap_area_formulas, triangle_gap_f, TriangleGapScene,
};
use depthlab::geometry2d::{hausdorff, ConvexPolygon};
use depthlab::regions::{
    alpha_star, inclusion_chain_check, region_atomic_exact, region_directional, Method, RegionKind, DEFAULT_K,
};
use depthlab::scenes::{self, SCENE_NAMES};
use depthlab::{Point, Shape};
use serde::Serialize;
use serde_json::json;

use crate::report::{emit_json, stdout, CliError};

pub const NAMES: [&str; 7] = [
    "cross-2.10",
    "triangle-gap-2.11",
    "disc-atoms-3.3",
    "double-triangle-4.1",
    "four-atoms-2.7",
    "inclusion-chain",
    "grunbaum",
];

const EXACT_TOL: f64 = 1e-9;
const DEPTH_REL_TOL: f64 = 1e-6;
const GRUNBAUM_SEED: u64 = 4100;
const AREA_SEED: u64 = 2011;

#[derive(Serialize)]
struct Check {
    check: String,
    passed: bool,
    detail: String,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn add(&mut self, check: &str, passed: bool, detail: String) {
        self.0.push(Check {
            check: check.to_string(),
            passed,
            detail,
        });
    }

    fn close(&mut self, check: &str, got: f64, want: f64, tol: f64) {
        self.add(
            check,
            (got - want).abs() <= tol,
            format!("{got} (want {want} +- {tol:e})"),
        );
    }
}

pub fn run(name: &str, seed: Option<u64>, json_path: Option<&Path>) -> Result<(), CliError> {
    let mut c = Checks::default();
    match name {
        "cross-2.10" => cross(&mut c),
        "triangle-gap-2.11" => triangle_gap(&mut c, seed.unwrap_or(AREA_SEED)),
        "disc-atoms-3.3" => disc_atoms(&mut c),
        "double-triangle-4.1" => double_triangle(&mut c),
        "four-atoms-2.7" => four_atoms(&mut c),
        "inclusion-chain" => inclusion_chain(&mut c),
        "grunbaum" => grunbaum(&mut c, seed.unwrap_or(GRUNBAUM_SEED)),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown example `{name}`; valid names: {}",
                NAMES.join(", ")
            )))
        }
    }
    for k in &c.0 {
        let status = if k.passed { "PASS" } else { "FAIL" };
        stdout(&format!("{name} {}: {status} {}\n", k.check, k.detail))?;
    }
    let passed = c.0.iter().all(|k| k.passed);
    if let Some(p) = json_path {
        emit_json(&json!({"name": name, "passed": passed, "checks": c.0}), Some(p))?;
    }
    if passed {
        Ok(())
    } else {
        let n = c.0.iter().filter(|k| !k.passed).count();
        Err(CliError::Failed(format!("{name}: {n} check(s) failed")))
    }
}

fn cross(c: &mut Checks) {
    let m = scenes::cross();
    let o = Point::ORIGIN;
    let d = depth(&m, o);
    c.add("depth(o) = 2", d == 2.0, format!("{d}"));
    let a = alpha_star(&m, Method::auto(&m)).map(|a| a.value).unwrap_or(f64::NAN);
    c.close("alpha* = 2", a, 2.0, EXACT_TOL);
    let closed = covering_test_with(&m, o, 2.0, MassVariant::Closed);
    c.add(
        "closed halfplanes do not cover",
        !closed.covers,
        format!("witness {:?}", closed.witness),
    );
    c.add("open halfplanes cover", covering_test(&m, o, 2.0).covers, String::new());
}

fn triangle_gap(c: &mut Checks, seed: u64) {
    use rand::{Rng, SeedableRng};
    let x = 0.2;
    let s = match TriangleGapScene::at_root(x) {
        Ok(s) => s,
        Err(e) => return c.add("root", false, e.to_string()),
    };
    let m = s.measure();
    let f = triangle_gap_f(x, s.y).abs();
    c.add("|f(x, y)| < 1e-12", f < 1e-12, format!("y = {}, |f| = {f:e}", s.y));
    let target = (2.0f64 - x).powi(2) / 3f64.sqrt();
    let dy = depth(&m, s.y_c());
    c.close("depth(y_c)", dy, target, DEPTH_REL_TOL * target);
    let clusters = minimizing_halfspaces(&m, s.y_c(), m.eps_mass()).clusters.len();
    c.add("three minimizing clusters at y_c", clusters == 3, format!("{clusters}"));
    c.add("y_c covers", covering_test(&m, s.y_c(), target).covers, String::new());
    for delta in [1e-3, 1e-2] {
        let z = s.z_c(delta);
        c.add(
            &format!("z_c (delta {delta}) does not cover"),
            !covering_test(&m, z, target).covers,
            format!("{z:?}"),
        );
        c.close(&format!("depth(z_c) (delta {delta})"), depth(&m, z), dy, 1e-6);
    }
    let u = uniqueness_test(&m, s.y_c(), target);
    c.add("uniqueness at y_c", u.unique_sufficient, u.reasons.join("; "));
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (t1, t2) = (s.theta1(), s.theta2());
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let a = triangle_gap_area_formulas(&s, rng.gen_range(0.0..t1));
        worst = worst.max((a.case_i.unwrap_or(f64::NAN) - a.direct).abs());
        let b = triangle_gap_area_formulas(&s, rng.gen_range(t1..t2));
        worst = worst.max((b.case_ii.unwrap_or(f64::NAN) - b.direct).abs());
    }
    c.add("closed-form areas", worst <= 1e-9, format!("max error {worst:e}"));
}

fn disc_atoms(c: &mut Checks) {
    let m = scenes::disc_atoms();
    c.close("depth(o)", depth(&m, Point::new(0.0, 0.0)), 0.125, EXACT_TOL);
    c.close("depth(z)", depth(&m, Point::new(0.0, 0.5)), 0.375, EXACT_TOL);
    c.close("depth(m)", depth(&m, Point::new(0.0, 1.0)), 0.5, EXACT_TOL);
    let seg = Shape::Segment {
        a: Point::new(0.0, 0.0),
        b: Point::new(0.0, 1.0),
    };
    let h = region_directional(&m, 0.125, RegionKind::Depth, 1440)
        .ok()
        .and_then(|r| hausdorff(&r.shape, &seg).ok())
        .unwrap_or(f64::INFINITY);
    c.add("D_1/8 is the segment [o, m]", h <= 5e-3, format!("hausdorff {h:e}"));
    let gap = strict_monotonicity_check(&m, &[0.125], Method::Directional { k: 1440 })
        .ok()
        .and_then(|r| r.entries[0].gap)
        .unwrap_or(f64::NAN);
    c.close("monotonicity gap at 1/8", gap, 0.5, 2e-2);
}

fn double_triangle(c: &mut Checks) {
    let m = scenes::double_triangle();
    let a = alpha_star(&m, Method::AtomicExact).map(|a| a.value).unwrap_or(f64::NAN);
    c.close("alpha* = 2", a, 2.0, EXACT_TOL);
    let want = [Point::new(1.0, 3.0), Point::new(-1.0, 3.0), Point::new(-1.0, 1.0)];
    let pts = region_atomic_exact(&m, a, RegionKind::Depth)
        .map(|r| r.shape.points())
        .unwrap_or_default();
    let ok = pts.len() == 3 && want.iter().all(|w| pts.iter().any(|p| p.dist(*w) <= EXACT_TOL));
    c.add("median set is the triangle d, e, f", ok, format!("{pts:?}"));
    let inner = ConvexPolygon::new(vec![
        Point::new(-11.0 / 19.0, 51.0 / 19.0),
        Point::new(-5.0 / 7.0, 15.0 / 7.0),
        Point::new(-1.0 / 5.0, 12.0 / 5.0),
    ])
    .expect("inner triangle");
    match covering_median_search(&m, Method::AtomicExact, None) {
        Ok(r) => c.add(
            "covering median inside the inner triangle",
            r.covers && inner.contains(r.point, m.eps()),
            format!("{:?}", r.point),
        ),
        Err(e) => c.add("covering median inside the inner triangle", false, e.to_string()),
    }
}

fn four_atoms(c: &mut Checks) {
    let r = region_atomic_exact(&scenes::four_atoms(), 2.0, RegionKind::Depth);
    let ok = match r.as_ref().map(|r| &r.shape) {
        Ok(Shape::Segment { a, b }) => {
            let (p, q) = (Point::new(0.0, 0.0), Point::new(1.0, -1.0));
            (a.dist(p) <= EXACT_TOL && b.dist(q) <= EXACT_TOL) || (a.dist(q) <= EXACT_TOL && b.dist(p) <= EXACT_TOL)
        }
        _ => false,
    };
    c.add(
        "D_2 is the segment (0,0)-(1,-1)",
        ok,
        format!("{:?}", r.map(|r| r.shape)),
    );
}

fn inclusion_chain(c: &mut Checks) {
    for name in SCENE_NAMES {
        let m = scenes::builtin(name).expect("built-in scene");
        let a = alpha_star(&m, Method::auto(&m)).map(|a| a.value).unwrap_or(f64::NAN);
        for f in [0.1, 0.3, 0.5, 0.7, 0.9] {
            match inclusion_chain_check(&m, f * a, DEFAULT_K) {
                Ok(r) => c.add(
                    &format!("{name} at {f} alpha*"),
                    r.holds,
                    format!("contained {:?}", r.contained),
                ),
                Err(e) => c.add(&format!("{name} at {f} alpha*"), false, e.to_string()),
            }
        }
    }
}

fn grunbaum(c: &mut Checks, seed: u64) {
    let cases = grunbaum_check(100, seed);
    let passed = cases.iter().filter(|k| k.passed).count();
    let min = cases.iter().map(|k| k.relative_depth).fold(f64::INFINITY, f64::min);
    c.add(
        "barycentre depth above 1/e",
        passed == cases.len(),
        format!("{passed}/{} polygons, smallest {min:.6}", cases.len()),
    );
}
