//! Reference computations: the triangle-with-a-gap scene, a strict
//! monotonicity probe and the sample consistency simulation.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry2d::{hausdorff, ConvexPolygon, HalfPlane, Point, Shape};
use crate::measure::{Component, MixtureMeasure};
use crate::regions::{region, region_directional, AtomicArrangement, Method, RegionKind, DEFAULT_K};
use crate::{Error, Result};

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Left-hand side `f(x, y)` whose root in `y` balances the horizontal cut
/// through `y_c` against the cheapest tilted cut.
pub fn triangle_gap_f(x: f64, y: f64) -> f64 {
    -2.0 - 3.0 * y - 2.0 * y * y + 2.0 * x - x * x - x * y + (2.0 + y) * ((1.0 - y).powi(2) + (x + y).powi(2)).sqrt()
}

/// Root `y` of `f(x, .)` on `(0, 1/5)` by bisection, `|f| < 1e-12`.
pub fn triangle_gap_root(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 0.25) {
        return Err(Error::RootBracket(format!("x = {x} outside (0, 1/4)")));
    }
    let (mut lo, mut hi) = (0.0, 0.2);
    let (flo, fhi) = (triangle_gap_f(x, lo), triangle_gap_f(x, hi));
    if !(flo > 0.0 && fhi < 0.0) {
        return Err(Error::RootBracket(format!("f({x}, 0) = {flo}, f({x}, 0.2) = {fhi}")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let v = triangle_gap_f(x, mid);
        if v.abs() < 1e-12 || hi - lo < 1e-300 {
            return Ok(mid);
        }
        if v > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mid = 0.5 * (lo + hi);
    if triangle_gap_f(x, mid).abs() < 1e-12 {
        Ok(mid)
    } else {
        Err(Error::RootBracket(format!("no convergence for x = {x}")))
    }
}

/// Equilateral triangle `a = (0,2)`, `b = (-√3,-1)`, `c = (√3,-1)` with the
/// horizontal strip between heights `-y` and `x` removed. Mass equals area.
///
/// Cut angles `theta` are measured against the vertical axis through the
/// cut point; see [`TriangleGapScene::normal_angle`] for the conversion to
/// inner-normal angles used everywhere else.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleGapScene {
    pub x: f64,
    pub y: f64,
}

impl TriangleGapScene {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x > 0.0 && x < 0.25) || !(y > 0.0 && y < 0.2) {
            return Err(Error::InvalidArgument(format!(
                "triangle gap needs x in (0, 1/4) and y in (0, 1/5), got ({x}, {y})"
            )));
        }
        Ok(TriangleGapScene { x, y })
    }

    /// Scene with `y` at the root of [`triangle_gap_f`].
    pub fn at_root(x: f64) -> Result<Self> {
        Self::new(x, triangle_gap_root(x)?)
    }

    pub fn a(&self) -> Point {
        Point::new(0.0, 2.0)
    }
    pub fn b(&self) -> Point {
        Point::new(-SQRT3, -1.0)
    }
    pub fn c(&self) -> Point {
        Point::new(SQRT3, -1.0)
    }
    pub fn x_c(&self) -> Point {
        Point::new(0.0, self.x)
    }
    pub fn y_c(&self) -> Point {
        Point::new(0.0, -self.y)
    }
    pub fn x_l(&self) -> Point {
        Point::new(-(2.0 - self.x) / SQRT3, self.x)
    }
    pub fn x_r(&self) -> Point {
        Point::new((2.0 - self.x) / SQRT3, self.x)
    }
    pub fn y_l(&self) -> Point {
        Point::new(-(2.0 + self.y) / SQRT3, -self.y)
    }
    pub fn y_r(&self) -> Point {
        Point::new((2.0 + self.y) / SQRT3, -self.y)
    }

    /// Point `(0, -y + delta)` inside the gap above `y_c`.
    pub fn z_c(&self, delta: f64) -> Point {
        Point::new(0.0, -self.y + delta)
    }

    pub fn top(&self) -> ConvexPolygon {
        ConvexPolygon::new(vec![self.a(), self.x_l(), self.x_r()]).expect("top triangle")
    }

    pub fn bottom(&self) -> ConvexPolygon {
        ConvexPolygon::new(vec![self.y_l(), self.b(), self.c(), self.y_r()]).expect("bottom trapezoid")
    }

    pub fn measure(&self) -> MixtureMeasure {
        let top = self.top();
        let bottom = self.bottom();
        let (ta, ba) = (top.area(), bottom.area());
        MixtureMeasure::new(vec![Component::polygon(top, ta), Component::polygon(bottom, ba)])
            .expect("valid triangle gap scene")
    }

    pub fn area(&self) -> f64 {
        self.top().area() + self.bottom().area()
    }

    /// Maximal depth at the root: the area of the top triangle.
    pub fn alpha_star_formula(&self) -> f64 {
        (2.0 - self.x).powi(2) / SQRT3
    }

    /// Cut through `y_c` meeting the vertex `c`.
    pub fn theta1(&self) -> f64 {
        (SQRT3 / (1.0 - self.y)).atan()
    }

    /// Cut through `y_c` meeting `x_l`.
    pub fn theta2(&self) -> f64 {
        ((2.0 - self.x) / (SQRT3 * (self.x + self.y))).atan()
    }

    /// Minimizer of the area below a cut through `y_c`.
    pub fn theta_min(&self) -> f64 {
        let (x, y) = (self.x, self.y);
        let tm = (2.0 + y) / (3.0 * ((1.0 - y).powi(2) + (x + y).powi(2))).sqrt();
        (tm - 1.0 / SQRT3).atan()
    }

    /// Minimal area below a cut through `y_c`.
    pub fn min_area(&self) -> f64 {
        let (x, y) = (self.x, self.y);
        (2.0 + y) * (1.0 - x - 2.0 * y) / SQRT3 + (2.0 + y) * ((1.0 - y).powi(2) + (x + y).powi(2)).sqrt() / SQRT3
    }

    /// Inner-normal angle of the closed halfplane bounded by the cut at
    /// vertical angle `theta`. `plus` selects the side containing
    /// `(0, -1)`, the other side otherwise. For `theta >= 0` the plus side
    /// has normal angle `theta + π`, for `theta < 0` it has `theta`.
    pub fn normal_angle(theta: f64, plus: bool) -> f64 {
        let p = if theta >= 0.0 { theta + PI } else { theta };
        let phi = if plus { p } else { p + PI };
        phi.rem_euclid(TAU)
    }

    /// Closed halfplane through `z` cut at vertical angle `theta`.
    pub fn cut(z: Point, theta: f64, plus: bool) -> HalfPlane {
        HalfPlane::at_angle(z, Self::normal_angle(theta, plus))
    }

    /// Closed form of the area on the `(0,-1)` side of the cut through
    /// `y_c`, valid for `0 <= theta <= theta1`.
    pub fn area_case_i(&self, theta: f64) -> f64 {
        let (x, y) = (self.x, self.y);
        let t = 1.0 / SQRT3 + theta.tan();
        let f1 = (2.0 + y).powi(2) / (6.0 * t) + ((1.0 - y).powi(2) + (x + y).powi(2)) * t / 2.0;
        (2.0 + y) * (1.0 - x - 2.0 * y) / SQRT3 + f1
    }

    /// Closed form for `theta1 <= theta <= theta2`.
    pub fn area_case_ii(&self, theta: f64) -> f64 {
        let (x, y) = (self.x, self.y);
        let t = 1.0 / SQRT3 + theta.tan();
        let f2 = (x + y).powi(2) * t / 2.0 + (2.0 + y).powi(2) / 6.0 * (1.0 / t - 1.0 / (t - 2.0 / SQRT3));
        (5.0 - 6.0 * y - 2.0 * y * y - 2.0 * x - x * y) / SQRT3 + f2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaCheck {
    pub theta: f64,
    pub case_i: Option<f64>,
    pub case_ii: Option<f64>,
    /// Mass of the halfplane computed by clipping.
    pub direct: f64,
    /// Largest deviation of an applicable closed form from `direct`.
    pub difference: Option<f64>,
}

/// Closed-form areas at `theta` next to the clipped mass of the same cut.
pub fn triangle_gap_area_formulas(scene: &TriangleGapScene, theta: f64) -> AreaCheck {
    let m = scene.measure();
    let direct = m.mass_closed(&TriangleGapScene::cut(scene.y_c(), theta, true));
    let (t1, t2) = (scene.theta1(), scene.theta2());
    let case_i = (0.0..=t1).contains(&theta).then(|| scene.area_case_i(theta));
    let case_ii = (t1..=t2).contains(&theta).then(|| scene.area_case_ii(theta));
    let difference = [case_i, case_ii]
        .iter()
        .flatten()
        .map(|v| (v - direct).abs())
        .reduce(f64::max);
    AreaCheck {
        theta,
        case_i,
        case_ii,
        direct,
        difference,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonotonicityEntry {
    pub alpha: f64,
    /// Hausdorff distance between the regions at `alpha` and
    /// `alpha + eps_level`; `None` if one of them is empty.
    pub gap: Option<f64>,
    /// Gap expected from the neighbouring levels.
    pub expected: f64,
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub eps_level: f64,
    pub entries: Vec<MonotonicityEntry>,
    pub strictly_monotone: bool,
}

/// Compares `D_alpha` with `D_{alpha + eps}`, a stand-in for the closure
/// of the strict region, at every level of `alphas`.
pub fn strict_monotonicity_check(m: &MixtureMeasure, alphas: &[f64], method: Method) -> Result<MonotonicityReport> {
    let eps_level = 1e-6 * m.total_mass();
    let mut levels = alphas.to_vec();
    levels.sort_by(f64::total_cmp);
    let regions: Vec<Shape> = levels
        .iter()
        .map(|&a| Ok(region(m, a, RegionKind::Depth, method)?.shape))
        .collect::<Result<_>>()?;
    let floor = 1e-6 * m.scale();
    let mut entries = Vec::new();
    for (i, &a) in levels.iter().enumerate() {
        let up = region(m, a + eps_level, RegionKind::Depth, method)?.shape;
        let gap = hausdorff(&regions[i], &up).ok();
        // Lipschitz rate of the region map from the neighbouring levels
        let mut rate: f64 = 0.0;
        for j in [i.wrapping_sub(1), i + 1] {
            if j < levels.len() && j != i {
                if let Ok(h) = hausdorff(&regions[i], &regions[j]) {
                    rate = rate.max(h / (levels[j] - a).abs());
                }
            }
        }
        let expected = (rate * eps_level).max(floor);
        let flagged = gap.is_some_and(|g| g > 10.0 * expected);
        entries.push(MonotonicityEntry {
            alpha: a,
            gap,
            expected,
            flagged,
        });
    }
    Ok(MonotonicityReport {
        eps_level,
        strictly_monotone: entries.iter().all(|e| !e.flagged),
        entries,
    })
}

/// Probe for a support that no zero-mass slab separates: the component
/// projections must form one interval on 180 directions and on the normals
/// of all key-point pairs (up to 64 points).
pub fn contiguous_support_probe(m: &MixtureMeasure) -> bool {
    let mut dirs: Vec<Point> = (0..180).map(|i| Point::from_angle(PI * i as f64 / 180.0)).collect();
    let keys = m.key_points();
    if keys.len() <= 64 {
        for i in 0..keys.len() {
            for j in i + 1..keys.len() {
                let d = keys[j] - keys[i];
                if d.norm() > m.eps() {
                    dirs.push(d.perp() * (1.0 / d.norm()));
                }
            }
        }
    }
    let eps = m.eps();
    dirs.iter().all(|&u| {
        let mut iv: Vec<(f64, f64)> = m
            .components()
            .iter()
            .map(|c| match c {
                Component::Atom { point, .. } => (point.dot(u), point.dot(u)),
                Component::Segment { a, b, .. } => {
                    let (p, q) = (a.dot(u), b.dot(u));
                    (p.min(q), p.max(q))
                }
                Component::Polygon { vertices, .. } => Shape::Polygon {
                    vertices: vertices.clone(),
                }
                .support(u)
                .unwrap(),
                Component::Disc { center, radius, .. } => (center.dot(u) - radius, center.dot(u) + radius),
            })
            .collect();
        iv.sort_by(|p, q| p.0.total_cmp(&q.0));
        let mut reach = iv[0].1;
        for &(lo, hi) in &iv[1..] {
            if lo > reach + eps {
                return false;
            }
            reach = reach.max(hi);
        }
        true
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRow {
    pub n: usize,
    pub replication: usize,
    pub sup_hausdorff: f64,
    /// Some empirical region was empty; its distance fell back to the
    /// last non-empty one.
    pub flagged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConsistencySummary {
    pub n: usize,
    pub median: f64,
    pub p90: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConsistencyTable {
    pub rows: Vec<ConsistencyRow>,
    pub summary: Vec<ConsistencySummary>,
    pub warnings: Vec<String>,
}

impl ConsistencyTable {
    /// Medians strictly decrease along the `ns` ladder.
    pub fn strictly_decreasing(&self) -> bool {
        self.summary.windows(2).all(|w| w[1].median < w[0].median)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,replication,sup_hausdorff\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{:.12e}\n", r.n, r.replication, r.sup_hausdorff));
        }
        s
    }
}

/// Nearest-rank quantile of a non-empty sample.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let rank = ((q * v.len() as f64).ceil() as usize).clamp(1, v.len());
    v[rank - 1]
}

/// For every `n` and replication: draws `n` points, builds the unit-mass
/// empirical measure and records the largest Hausdorff distance over
/// `alphas` between its exact region at level `n * alpha / total` and the
/// directional population region at `alpha`. Replication `r` of the `i`-th
/// sample size uses seed `seed + i * replications + r`.
pub fn consistency_experiment(
    m: &MixtureMeasure,
    alphas: &[f64],
    ns: &[usize],
    replications: usize,
    seed: u64,
) -> Result<ConsistencyTable> {
    let mut warnings = Vec::new();
    if !m.is_absolutely_continuous() {
        warnings.push("measure is not smooth; distances need not shrink".to_string());
    }
    if !contiguous_support_probe(m) {
        warnings.push("support is not contiguous; distances need not shrink".to_string());
    }
    let total = m.total_mass();
    let mut levels = alphas.to_vec();
    levels.sort_by(f64::total_cmp);
    let population: Vec<Shape> = levels
        .iter()
        .map(|&a| Ok(region_directional(m, a, RegionKind::Depth, DEFAULT_K)?.shape))
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        for r in 0..replications {
            let s = seed.wrapping_add((i * replications + r) as u64);
            let pts = m.sample(n, s);
            let emp = MixtureMeasure::from_atoms(&pts, 1.0)?;
            let arr = AtomicArrangement::new(&emp)?;
            let mut sup: f64 = 0.0;
            let mut flagged = false;
            let mut last: Option<Shape> = None;
            for (k, &a) in levels.iter().enumerate() {
                let reg = arr.region(n as f64 * a / total, RegionKind::Depth)?.shape;
                let shape = if reg.is_empty() {
                    flagged = true;
                    match &last {
                        Some(l) => l.clone(),
                        None => {
                            sup = f64::INFINITY;
                            continue;
                        }
                    }
                } else {
                    last = Some(reg.clone());
                    reg
                };
                if let Ok(h) = hausdorff(&shape, &population[k]) {
                    sup = sup.max(h);
                }
            }
            rows.push(ConsistencyRow {
                n,
                replication: r,
                sup_hausdorff: sup,
                flagged,
            });
        }
    }
    let summary = ns
        .iter()
        .map(|&n| {
            let d: Vec<f64> = rows.iter().filter(|r| r.n == n).map(|r| r.sup_hausdorff).collect();
            ConsistencySummary {
                n,
                median: quantile(&d, 0.5),
                p90: quantile(&d, 0.9),
            }
        })
        .collect();
    Ok(ConsistencyTable {
        rows,
        summary,
        warnings,
    })
}

/// Lower bound on the interior mass of halfplanes through the barycentre
/// of a uniform convex body, relative to its total mass.
pub const GRUNBAUM_BOUND: f64 = 0.367_879_441_171_442_33;

/// Random convex polygon: hull of 3 to 20 uniform points in the unit
/// square, retried until non-degenerate.
pub fn random_convex_polygon(seed: u64) -> ConvexPolygon {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    loop {
        let k = rng.gen_range(3..=20);
        let pts: Vec<Point> = (0..k).map(|_| Point::new(rng.gen(), rng.gen())).collect();
        if let Shape::Polygon { vertices } = crate::geometry2d::convex_hull(&pts) {
            if vertices.area() > 1e-3 {
                return vertices;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrunbaumCase {
    pub seed: u64,
    pub vertices: usize,
    /// Depth of the barycentre over the total mass.
    pub relative_depth: f64,
    pub passed: bool,
}

/// Barycentre depth of uniform random convex polygons against `1/e`.
pub fn grunbaum_check(count: usize, seed: u64) -> Vec<GrunbaumCase> {
    (0..count as u64)
        .map(|i| {
            let s = seed.wrapping_add(i);
            let poly = random_convex_polygon(s);
            let nv = poly.vertices().len();
            let g = poly.centroid();
            let m = MixtureMeasure::new(vec![Component::polygon(poly, 1.0)]).expect("valid polygon");
            let d = crate::depth::depth(&m, g);
            GrunbaumCase {
                seed: s,
                vertices: nv,
                relative_depth: d,
                passed: d > GRUNBAUM_BOUND,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{depth, minimizing_halfspaces};

    const X: f64 = 0.2;
    // independent oracle, see the decisions log
    const Y_ROOT: f64 = 0.103_072_479_759_778_25;

    #[test]
    fn root_matches_oracle() {
        let y = triangle_gap_root(X).unwrap();
        assert!(triangle_gap_f(X, y).abs() < 1e-12);
        assert!((y - Y_ROOT).abs() < 1e-11, "{y}");
        assert!(triangle_gap_root(0.3).is_err());
    }

    #[test]
    fn scene_invariants() {
        let s = TriangleGapScene::at_root(X).unwrap();
        assert!((s.x_c().dist(s.x_r()) - (2.0 - X) / SQRT3).abs() < 1e-15);
        assert!((s.y_c().dist(s.y_r()) - (2.0 + s.y) / SQRT3).abs() < 1e-15);
        assert!((s.area() - 4.513_196_790_023_263).abs() < 1e-12);
        assert!((s.theta_min() - 0.614_177_377_487_740_1).abs() < 1e-12);
        assert!((s.theta1() - 1.092_977_728_831_24).abs() < 1e-12);
        assert!((s.theta2() - 1.287_034_508_030_916_6).abs() < 1e-12);
    }

    #[test]
    fn minimum_area_identity() {
        let s = TriangleGapScene::at_root(X).unwrap();
        assert!((s.min_area() - s.alpha_star_formula()).abs() < 1e-9);
        assert!((s.area_case_i(s.theta_min()) - s.min_area()).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_clipping() {
        let s = TriangleGapScene::at_root(X).unwrap();
        let at1 = triangle_gap_area_formulas(&s, s.theta1());
        assert!((at1.case_i.unwrap() - at1.case_ii.unwrap()).abs() < 1e-12);
        for theta in [0.0, 0.3, s.theta_min(), 1.0, s.theta1(), 1.2, 1.28] {
            let c = triangle_gap_area_formulas(&s, theta);
            assert!(c.difference.unwrap() < 1e-9, "{c:?}");
        }
        assert!(triangle_gap_area_formulas(&s, 1.4).difference.is_none());
    }

    #[test]
    fn normal_angle_shim() {
        // theta = 0 cuts along the vertical axis
        let h = TriangleGapScene::cut(Point::ORIGIN, 0.3, true);
        assert!(h.contains(Point::new(0.0, -1.0), 0.0));
        let h = TriangleGapScene::cut(Point::ORIGIN, -0.3, true);
        assert!(h.contains(Point::new(0.0, -1.0), 0.0));
        let h = TriangleGapScene::cut(Point::ORIGIN, 0.3, false);
        assert!(!h.contains(Point::new(0.0, -1.0), 0.0));
        // boundary direction (sin theta, -cos theta)
        let d = Point::new(0.3f64.sin(), -0.3f64.cos());
        assert!(h.value(d).abs() < 1e-15);
    }

    #[test]
    fn depth_at_y_c_and_z_c() {
        let s = TriangleGapScene::at_root(X).unwrap();
        let m = s.measure();
        let a = s.alpha_star_formula();
        let dy = depth(&m, s.y_c());
        assert!((dy - a).abs() / a < 1e-6, "{dy} vs {a}");
        for delta in [1e-3, 1e-2] {
            assert!((depth(&m, s.z_c(delta)) - dy).abs() < 1e-6);
        }
        let set = minimizing_halfspaces(&m, s.y_c(), 1e-9 * m.total_mass());
        assert_eq!(set.clusters.len(), 3, "{:?}", set.clusters);
    }

    #[test]
    fn monotonicity_examples() {
        let dirac = MixtureMeasure::from_atoms(&[Point::ORIGIN], 1.0).unwrap();
        let r = strict_monotonicity_check(&dirac, &[0.5], Method::AtomicExact).unwrap();
        assert_eq!(r.entries[0].gap, Some(0.0));
        assert!(r.strictly_monotone);
    }

    #[test]
    fn quantiles() {
        let v = [5.0, 1.0, 4.0, 2.0, 3.0];
        assert_eq!(quantile(&v, 0.5), 3.0);
        assert_eq!(quantile(&v, 0.9), 5.0);
    }

    #[test]
    fn contiguity_probe() {
        let s = TriangleGapScene::at_root(X).unwrap();
        assert!(!contiguous_support_probe(&s.measure()));
        let sq = MixtureMeasure::new(vec![Component::polygon(
            ConvexPolygon::rectangle(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap(),
            1.0,
        )])
        .unwrap();
        assert!(contiguous_support_probe(&sq));
    }

    #[test]
    fn atomic_self_consistency() {
        // the population itself as the sample: identical regions
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.2),
            Point::new(0.4, 1.1),
            Point::new(-0.3, 0.6),
            Point::new(0.5, 0.4),
        ];
        let m = MixtureMeasure::from_atoms(&pts, 1.0).unwrap();
        let arr = AtomicArrangement::new(&m).unwrap();
        for k in [1.0, 2.0] {
            let a = arr.region(k, RegionKind::Depth).unwrap().shape;
            let b = region(&m, k, RegionKind::Depth, Method::AtomicExact).unwrap().shape;
            assert_eq!(hausdorff(&a, &b).unwrap(), 0.0);
        }
    }

    #[test]
    fn grunbaum_small() {
        assert!(grunbaum_check(5, 7).iter().all(|c| c.passed));
    }
}
