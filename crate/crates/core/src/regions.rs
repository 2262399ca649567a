//! Depth-trimmed regions `D_alpha`, floating bodies, the open-interior
//! region, the maximal depth `alpha*`, the level `gamma*` and the median
//! set.
//!
//! Two constructions are offered. For atomic measures the exact region is
//! cut out by halfplanes bounded by lines through pairs of atoms. For any
//! measure the directional method intersects one quantile halfplane per
//! direction, an outer approximation.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::depth::depth;
use crate::geometry2d::{
    barycentre, contained_in, hausdorff, intersect_halfplanes_within, normalize_angle, BoundingBox, HalfPlane, Point,
    RegionResult, Shape,
};
use crate::measure::MixtureMeasure;
use crate::{Error, Result};

pub const DEFAULT_K: usize = 720;
/// Offset of the extra directions placed next to atom-pair normals.
pub const DELTA_PROBE: f64 = 1e-7;
pub const OFFSET_BISECTION_STEPS: usize = 60;
pub const ALPHA_BISECTION_STEPS: usize = 50;
/// Above this many atoms or segment endpoints no pair-normal directions
/// are added to the directional method.
pub const EVENT_POINT_CAP: usize = 64;
/// Levels below the bisection result, relative to the total mass, whose
/// regions also supply snapping candidates.
const SNAP_LEVELS: [f64; 3] = [1e-6, 1e-5, 1e-4];

/// Relative mass tolerance used in region membership inequalities.
pub const MASS_REL_TOL: f64 = 1e-12;

/// Which family of halfplanes is intersected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    /// `D_alpha`: complements with mass `< alpha`.
    Depth,
    /// Floating body: complements with mass `<= alpha`.
    FloatingBody,
    /// Intersection of the interiors of the floating-body halfplanes,
    /// reported through its closure.
    OpenInterior,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum Method {
    AtomicExact,
    Directional { k: usize },
}

impl Method {
    /// Exact for atomic measures, directional with `DEFAULT_K` otherwise.
    pub fn auto(m: &MixtureMeasure) -> Method {
        if m.is_atomic() {
            Method::AtomicExact
        } else {
            Method::Directional { k: DEFAULT_K }
        }
    }
}

fn admits(kind: RegionKind, complement_mass: f64, alpha: f64, tol: f64) -> bool {
    match kind {
        RegionKind::Depth => complement_mass < alpha - tol,
        RegionKind::FloatingBody | RegionKind::OpenInterior => complement_mass <= alpha + tol,
    }
}

/// Scene box used for intersections: support plus a margin.
fn scene_box(m: &MixtureMeasure) -> BoundingBox {
    m.bbox()
}

fn eps_area(m: &MixtureMeasure) -> f64 {
    let b = m.bbox();
    let a = b.width() * b.height();
    let s = m.scale();
    1e-9 * if a > 0.0 { a } else { s * s }
}

pub fn region(m: &MixtureMeasure, alpha: f64, kind: RegionKind, method: Method) -> Result<RegionResult> {
    match method {
        Method::AtomicExact => region_atomic_exact(m, alpha, kind),
        Method::Directional { k } => region_directional(m, alpha, kind, k),
    }
}

/// Oriented line through two distinct atom locations with the masses on
/// its open sides.
#[derive(Clone, Copy, Debug)]
struct PairLine {
    i: u32,
    j: u32,
    /// Open side to the left of `p_i -> p_j`.
    left: f64,
    /// Open side to the right.
    right: f64,
}

/// Side masses of all lines through pairs of atoms, reusable across
/// levels.
#[derive(Clone, Debug)]
pub struct AtomicArrangement {
    points: Vec<Point>,
    masses: Vec<f64>,
    lines: Vec<PairLine>,
    collinear: bool,
    total: f64,
    bbox: BoundingBox,
    eps: f64,
}

impl AtomicArrangement {
    pub fn new(m: &MixtureMeasure) -> Result<Self> {
        if !m.is_atomic() {
            return Err(Error::InvalidArgument(
                "exact regions need a purely atomic measure".into(),
            ));
        }
        let eps = m.eps();
        let mut atoms = m.atoms();
        atoms.sort_by(|a, b| a.0.x.total_cmp(&b.0.x).then(a.0.y.total_cmp(&b.0.y)));
        let mut points: Vec<Point> = Vec::new();
        let mut masses: Vec<f64> = Vec::new();
        for (p, w) in atoms {
            if let Some(k) = points.iter().rposition(|q| q.dist(p) <= eps) {
                masses[k] += w;
            } else {
                points.push(p);
                masses.push(w);
            }
        }
        let n = points.len();
        let total: f64 = m.total_mass();
        let collinear = n < 3 || {
            let a = points[0];
            let (far, _) = points
                .iter()
                .enumerate()
                .map(|(k, q)| (k, q.dist(a)))
                .fold((0, 0.0), |acc, v| if v.1 > acc.1 { v } else { acc });
            let d = points[far] - a;
            let dn = d.norm();
            points.iter().all(|q| (d.cross(*q - a) / dn).abs() <= eps)
        };
        let tau = 1e-12;
        let mut lines = Vec::new();
        for i in 0..n {
            let mut ang: Vec<(f64, f64, usize)> = (0..n)
                .filter(|&k| k != i)
                .map(|k| ((points[k] - points[i]).angle(), masses[k], k))
                .collect();
            ang.sort_by(|a, b| a.0.total_cmp(&b.0));
            let len = ang.len();
            let mut keys = Vec::with_capacity(2 * len);
            let mut prefix = Vec::with_capacity(2 * len + 1);
            prefix.push(0.0);
            for r in 0..2 * len {
                let (a, w, _) = ang[r % len];
                keys.push(if r < len { a } else { a + TAU });
                prefix.push(prefix[r] + w);
            }
            // mass with angle strictly inside (lo, hi), lo in [0, 2π)
            let range = |lo: f64, hi: f64| -> f64 {
                let a = keys.partition_point(|&k| k <= lo);
                let b = keys.partition_point(|&k| k < hi);
                if b > a {
                    prefix[b] - prefix[a]
                } else {
                    0.0
                }
            };
            for &(theta, _, j) in &ang {
                if j <= i {
                    continue;
                }
                let left = range(theta + tau, theta + PI - tau);
                let right = range(theta + PI + tau, theta + TAU - tau);
                lines.push(PairLine {
                    i: i as u32,
                    j: j as u32,
                    left,
                    right,
                });
            }
        }
        Ok(AtomicArrangement {
            points,
            masses,
            lines,
            collinear,
            total,
            bbox: m.bbox(),
            eps,
        })
    }

    fn line_normal(&self, l: &PairLine) -> (Point, Point) {
        let a = self.points[l.i as usize];
        let b = self.points[l.j as usize];
        let d = b - a;
        let v = d * (1.0 / d.norm());
        (a, v)
    }

    /// Halfplanes through single atoms, used when all atoms are collinear.
    fn single_atom_halfplanes(&self, alpha: f64, kind: RegionKind, tol: f64) -> Vec<HalfPlane> {
        let normals: Vec<Point> = if self.points.len() >= 2 {
            let d = self.points[self.points.len() - 1] - self.points[0];
            vec![d, -d]
        } else {
            (0..3).map(|k| Point::from_angle(k as f64 * TAU / 3.0)).collect()
        };
        let mut out = Vec::new();
        for &p in &self.points {
            for &n in &normals {
                let h = HalfPlane::through(p, n);
                let comp: f64 = self
                    .points
                    .iter()
                    .zip(&self.masses)
                    .filter(|(q, _)| h.value(**q) < -self.eps)
                    .map(|(_, w)| *w)
                    .sum();
                if admits(kind, comp, alpha, tol) {
                    out.push(h);
                }
            }
        }
        out
    }

    /// Exact region at level `alpha`.
    pub fn region(&self, alpha: f64, kind: RegionKind) -> Result<RegionResult> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
        }
        if kind == RegionKind::OpenInterior {
            let fb = self.region(alpha, RegionKind::FloatingBody)?;
            return Ok(if matches!(fb.shape, Shape::Polygon { .. }) {
                fb
            } else {
                RegionResult::empty().with_alpha(alpha)
            });
        }
        let tol = MASS_REL_TOL * self.total;
        let empty_level = match kind {
            RegionKind::Depth => alpha > self.total + tol,
            _ => alpha >= self.total - tol,
        };
        if empty_level {
            return Ok(RegionResult::empty().with_alpha(alpha));
        }
        let mut hs = Vec::new();
        let mut both = Vec::new();
        for (k, l) in self.lines.iter().enumerate() {
            let (a, v) = self.line_normal(l);
            let n_left = v.perp();
            let inc_left = admits(kind, l.right, alpha, tol);
            let inc_right = admits(kind, l.left, alpha, tol);
            if inc_left {
                hs.push(HalfPlane::through(a, n_left));
            }
            if inc_right {
                hs.push(HalfPlane::through(a, -n_left));
            }
            if inc_left && inc_right {
                both.push(k);
            }
        }
        if self.collinear {
            hs.extend(self.single_atom_halfplanes(alpha, kind, tol));
        }
        let mut res = intersect_halfplanes_within(&hs, &self.bbox);
        res.alpha = Some(alpha);
        if !matches!(res.shape, Shape::Polygon { .. }) {
            let candidates: Vec<usize> = if self.points.len() <= 64 {
                (0..self.lines.len()).collect()
            } else {
                both
            };
            if let Some(shape) = self.degenerate_search(&hs, &candidates) {
                res.shape = shape;
                res.degenerate_search = true;
            }
        }
        res.prune_constraints(self.eps);
        Ok(res)
    }

    /// Largest 1D region on a pair line under the included halfplanes.
    fn degenerate_search(&self, hs: &[HalfPlane], candidates: &[usize]) -> Option<Shape> {
        let tol = self.eps;
        let mut best: Option<(f64, Point, Point)> = None;
        for &k in candidates {
            let (a, v) = self.line_normal(&self.lines[k]);
            let mut lo = f64::NEG_INFINITY;
            let mut hi = f64::INFINITY;
            let mut ok = true;
            for h in hs {
                let s = v.dot(h.normal);
                let b = h.offset - a.dot(h.normal);
                if s.abs() <= 1e-12 {
                    if b > tol {
                        ok = false;
                        break;
                    }
                } else if s > 0.0 {
                    lo = lo.max(b / s);
                } else {
                    hi = hi.min(b / s);
                }
                if lo > hi + tol {
                    ok = false;
                    break;
                }
            }
            if !ok || !lo.is_finite() || !hi.is_finite() {
                continue;
            }
            let hi = hi.max(lo);
            let len = hi - lo;
            if best.is_none_or(|b| len > b.0 + tol) {
                best = Some((len, a + v * lo, a + v * hi));
            }
        }
        best.map(|(len, p, q)| {
            if len <= tol {
                Shape::Point { p: p.lerp(q, 0.5) }
            } else {
                Shape::Segment { a: p, b: q }
            }
        })
    }
}

/// Exact region of an atomic measure.
pub fn region_atomic_exact(m: &MixtureMeasure, alpha: f64, kind: RegionKind) -> Result<RegionResult> {
    AtomicArrangement::new(m)?.region(alpha, kind)
}

/// Directions used by the directional method: `k` even directions plus,
/// for scenes with few discrete points, directions at and next to the
/// normals of lines through pairs of them.
pub fn directions(m: &MixtureMeasure, k: usize) -> Vec<f64> {
    let mut d: Vec<f64> = (0..k).map(|i| TAU * i as f64 / k as f64).collect();
    let pts = m.discrete_points();
    if pts.len() <= EVENT_POINT_CAP {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let psi = (pts[j] - pts[i]).angle() + 0.5 * PI;
                for base in [psi, psi + PI] {
                    for off in [-DELTA_PROBE, 0.0, DELTA_PROBE] {
                        d.push(normalize_angle(base + off));
                    }
                }
            }
        }
    }
    d.sort_by(f64::total_cmp);
    d.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
    d
}

/// Critical offset in direction `u`: the largest `c` such that the open
/// complement `{<y,u> < c}` satisfies the level inequality. `None` when
/// every offset qualifies (the region is empty).
pub fn critical_offset(m: &MixtureMeasure, u: Point, alpha: f64, kind: RegionKind) -> Option<f64> {
    let tol = MASS_REL_TOL * m.total_mass();
    let b = m.bbox();
    let corners = [b.min, b.max, Point::new(b.min.x, b.max.y), Point::new(b.max.x, b.min.y)];
    let (mut lo, mut hi) = corners.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |acc, c| {
        let v = c.dot(u);
        (acc.0.min(v), acc.1.max(v))
    });
    lo -= m.scale();
    hi += m.scale();
    let pred = |c: f64| {
        let below = m.mass_open(&HalfPlane { normal: -u, offset: -c });
        admits(kind, below, alpha, tol)
    };
    if pred(hi) {
        return None;
    }
    for _ in 0..OFFSET_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Atoms only enter the open complement once they clear it by eps, so the
    // raw offset sits eps inside; pull it back onto the atoms.
    Some(lo - m.eps())
}

/// Outer approximation by one quantile halfplane per direction.
pub fn region_directional(m: &MixtureMeasure, alpha: f64, kind: RegionKind, k: usize) -> Result<RegionResult> {
    if k < 16 {
        return Err(Error::InvalidArgument(format!("K must be at least 16, got {k}")));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha must be positive, got {alpha}")));
    }
    let base_kind = if kind == RegionKind::OpenInterior {
        RegionKind::FloatingBody
    } else {
        kind
    };
    let mut hs = Vec::new();
    for phi in directions(m, k) {
        let u = Point::from_angle(phi);
        match critical_offset(m, u, alpha, base_kind) {
            Some(c) => hs.push(HalfPlane { normal: u, offset: c }),
            None => return Ok(RegionResult::empty().with_alpha(alpha)),
        }
    }
    let mut res = intersect_halfplanes_within(&hs, &scene_box(m));
    res.alpha = Some(alpha);
    if kind == RegionKind::OpenInterior && res.area() <= eps_area(m) {
        return Ok(RegionResult::empty().with_alpha(alpha));
    }
    res.prune_constraints(m.eps());
    Ok(res)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaStar {
    /// Reported maximal depth.
    pub value: f64,
    /// Last level with a non-empty region in the bisection.
    pub bisection: f64,
    /// A point of depth within `1e-4 * total_mass` of the bisection level
    /// was found.
    pub certified: bool,
}

/// Maximal depth by bisection on region non-emptiness, then snapped to the
/// best depth found among points of the last non-empty region.
pub fn alpha_star(m: &MixtureMeasure, method: Method) -> Result<AlphaStar> {
    let total = m.total_mass();
    let arrangement = match method {
        Method::AtomicExact => Some(AtomicArrangement::new(m)?),
        _ => None,
    };
    let reg = |a: f64| -> Result<RegionResult> {
        match (&arrangement, method) {
            (Some(arr), _) => arr.region(a, RegionKind::Depth),
            (None, Method::Directional { k }) => region_directional(m, a, RegionKind::Depth, k),
            _ => unreachable!(),
        }
    };
    let mut lo = 0.0;
    let mut hi = total;
    let mut last = reg(total)?;
    if last.is_empty() {
        last = RegionResult::empty();
        for _ in 0..ALPHA_BISECTION_STEPS {
            let mid = 0.5 * (lo + hi);
            let r = reg(mid)?;
            if r.is_empty() {
                hi = mid;
            } else {
                lo = mid;
                last = r;
            }
        }
    } else {
        lo = total;
    }
    if last.is_empty() {
        last = reg(lo.max(1e-12 * total))?;
    }
    let mut best = f64::NEG_INFINITY;
    for p in candidate_points(m, &last.shape) {
        best = best.max(depth(m, p));
    }
    // an outer approximation can stay non-empty just above alpha*, away
    // from the deepest points
    if arrangement.is_none() {
        for f in SNAP_LEVELS {
            let a = lo - f * total;
            if a <= 0.0 {
                break;
            }
            for p in candidate_points(m, &reg(a)?.shape) {
                best = best.max(depth(m, p));
            }
        }
    }
    let certified = best.is_finite() && (best - lo).abs() <= 1e-4 * total;
    Ok(AlphaStar {
        value: if certified { best } else { lo },
        bisection: lo,
        certified,
    })
}

/// Points tried when snapping `alpha*`: barycentre, up to 16 vertices and
/// key points of the measure close to the region.
fn candidate_points(m: &MixtureMeasure, shape: &Shape) -> Vec<Point> {
    let mut out = Vec::new();
    if let Ok(b) = barycentre(shape) {
        out.push(b);
    }
    let v = shape.points();
    let step = (v.len() / 16).max(1);
    out.extend(v.iter().step_by(step).copied());
    let near = 1e-3 * m.scale();
    for p in m.key_points() {
        if shape.distance_to(p) <= near {
            out.push(p);
        }
    }
    out
}

/// Relative width above which a region counts as having interior.
pub const INTERIOR_WIDTH: f64 = 1e-7;

/// Whether a computed region is two-dimensional at the scale of `m`.
pub fn has_interior(m: &MixtureMeasure, shape: &Shape) -> bool {
    shape.width() > INTERIOR_WIDTH * m.scale()
}

/// Supremum of levels whose region has interior, see [`has_interior`].
pub fn gamma_star(m: &MixtureMeasure, method: Method) -> Result<f64> {
    let astar = alpha_star(m, method)?;
    gamma_star_with(m, method, astar.value)
}

pub fn gamma_star_with(m: &MixtureMeasure, method: Method, alpha_star: f64) -> Result<f64> {
    let arrangement = match method {
        Method::AtomicExact => Some(AtomicArrangement::new(m)?),
        _ => None,
    };
    let full = |a: f64| -> Result<bool> {
        let r = match (&arrangement, method) {
            (Some(arr), _) => arr.region(a, RegionKind::Depth)?,
            (None, Method::Directional { k }) => region_directional(m, a, RegionKind::Depth, k)?,
            _ => unreachable!(),
        };
        Ok(has_interior(m, &r.shape))
    };
    let top = match method {
        Method::AtomicExact => alpha_star,
        _ => alpha_star - 1e-6 * m.total_mass(),
    };
    if top > 0.0 && full(top)? {
        return Ok(alpha_star);
    }
    let mut lo = 0.0;
    let mut hi = top.max(0.0);
    for _ in 0..ALPHA_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= 0.0 {
            break;
        }
        if full(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MedianSet {
    pub region: RegionResult,
    pub alpha_star: AlphaStar,
    /// Directional region at `alpha* - 1e-6 * total_mass`, containing the
    /// median set.
    pub outer_approximation: bool,
}

pub fn median_set(m: &MixtureMeasure, method: Method) -> Result<MedianSet> {
    let astar = alpha_star(m, method)?;
    median_set_at(m, method, astar)
}

pub fn median_set_at(m: &MixtureMeasure, method: Method, astar: AlphaStar) -> Result<MedianSet> {
    let (region, outer) = match method {
        Method::AtomicExact => (region_atomic_exact(m, astar.value, RegionKind::Depth)?, false),
        Method::Directional { k } => {
            let level = astar.value - 1e-6 * m.total_mass();
            (region_directional(m, level, RegionKind::Depth, k)?, true)
        }
    };
    if region.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(MedianSet {
        region,
        alpha_star: astar,
        outer_approximation: outer,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InclusionReport {
    pub alpha: f64,
    /// Open-interior region (through its closure).
    pub open_interior: Shape,
    /// Closure of the strict region, via `D` at `alpha + 1e-6 * mass`.
    pub strict_closure: Shape,
    pub floating_body: Shape,
    pub depth_region: Shape,
    /// `open ⊆ strict`, `strict ⊆ fb`, `fb ⊆ depth`.
    pub contained: [bool; 3],
    /// Hausdorff distances of the same consecutive pairs, when both sides
    /// are non-empty.
    pub gaps: [Option<f64>; 3],
    pub holds: bool,
}

/// Computes the four nested sets with a shared direction set and checks
/// the chain `open ⊆ strict closure ⊆ floating body ⊆ D_alpha`.
pub fn inclusion_chain_check(m: &MixtureMeasure, alpha: f64, k: usize) -> Result<InclusionReport> {
    let eps_level = 1e-6 * m.total_mass();
    let d = region_directional(m, alpha, RegionKind::Depth, k)?.shape;
    let fb = region_directional(m, alpha, RegionKind::FloatingBody, k)?.shape;
    let u = region_directional(m, alpha + eps_level, RegionKind::Depth, k)?.shape;
    let uo = region_directional(m, alpha + eps_level, RegionKind::OpenInterior, k)?.shape;
    let slack = m.eps();
    let chain = [(&uo, &u), (&u, &fb), (&fb, &d)];
    let contained = chain.map(|(a, b)| contained_in(a, b, slack));
    let gaps = chain.map(|(a, b)| hausdorff(a, b).ok());
    Ok(InclusionReport {
        alpha,
        holds: contained.iter().all(|&c| c),
        open_interior: uo,
        strict_closure: u,
        floating_body: fb,
        depth_region: d,
        contained,
        gaps,
    })
}
