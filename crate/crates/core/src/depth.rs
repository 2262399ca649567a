//! Point depth, open depth, angular mass profiles and (generalized)
//! minimizing halfplanes.
//!
//! Angles parametrize halfplanes through a fixed point `x` by their inner
//! normal: `H_{x,phi} = {y : <y - x, (cos phi, sin phi)> >= 0}`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::geometry2d::{normalize_angle, HalfPlane, Point};
use crate::measure::{BoundaryRule, Component, MixtureMeasure};

/// Seed samples per smooth arc before golden-section refinement.
pub const ARC_SAMPLES: usize = 33;
/// Arcs shorter than this are only evaluated at their midpoint.
pub const SHORT_ARC: f64 = 1e-6;
/// Angular distance below which minimizing clusters merge.
pub const CLUSTER_MERGE: f64 = 1e-6;
/// Critical angles closer than this are treated as one.
pub const ANGLE_DEDUP: f64 = 1e-12;

const GOLDEN_TOL: f64 = 1e-13;

/// Side of a critical angle for one-sided limits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Before,
    After,
}

/// Angles where the boundary line through `x` meets an atom, a segment
/// endpoint or a polygon vertex, or is tangent to a disc. Both orientations
/// of each line are listed. Sorted in `[0, 2π)`.
pub fn critical_angles(m: &MixtureMeasure, x: Point) -> Vec<f64> {
    let eps = m.eps();
    let mut out = Vec::new();
    let mut through = |p: Point| {
        let d = p - x;
        if d.norm() > eps {
            let psi = d.angle();
            out.push(normalize_angle(psi + 0.5 * PI));
            out.push(normalize_angle(psi - 0.5 * PI));
        }
    };
    for c in m.components() {
        match c {
            Component::Atom { point, .. } => through(*point),
            Component::Segment { a, b, .. } => {
                through(*a);
                through(*b);
            }
            Component::Polygon { vertices, .. } => {
                for &v in vertices.vertices() {
                    through(v);
                }
            }
            Component::Disc { .. } => {}
        }
    }
    for c in m.components() {
        if let Component::Disc { center, radius, .. } = c {
            let d = *center - x;
            let rho = d.norm();
            let psi = d.angle();
            if (rho - radius).abs() <= eps {
                out.push(psi);
                out.push(normalize_angle(psi + PI));
            } else if rho > *radius {
                let w = (radius / rho).acos();
                for base in [psi, psi + PI] {
                    out.push(normalize_angle(base + w));
                    out.push(normalize_angle(base - w));
                }
            }
        }
    }
    dedup_angles(out)
}

fn dedup_angles(mut a: Vec<f64>) -> Vec<f64> {
    a.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(a.len());
    for v in a {
        if out.last().is_none_or(|&l| v - l > ANGLE_DEDUP) {
            out.push(v);
        }
    }
    if out.len() > 1 && out[0] + TAU - out[out.len() - 1] <= ANGLE_DEDUP {
        out.pop();
    }
    out
}

/// Closed and open masses of `H_{x,phi}` as functions of `phi`.
#[derive(Clone, Debug)]
pub struct DepthProfile<'a> {
    measure: &'a MixtureMeasure,
    center: Point,
    angles: Vec<f64>,
}

impl<'a> DepthProfile<'a> {
    pub fn new(measure: &'a MixtureMeasure, center: Point) -> Self {
        DepthProfile {
            measure,
            center,
            angles: critical_angles(measure, center),
        }
    }

    pub fn measure(&self) -> &'a MixtureMeasure {
        self.measure
    }

    pub fn center(&self) -> Point {
        self.center
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn halfplane(&self, phi: f64) -> HalfPlane {
        HalfPlane::at_angle(self.center, phi)
    }

    pub fn closed(&self, phi: f64) -> f64 {
        self.measure.mass_closed(&self.halfplane(phi))
    }

    pub fn open(&self, phi: f64) -> f64 {
        self.measure.mass_open(&self.halfplane(phi))
    }

    /// Exact one-sided limit of the closed mass at `phi`.
    pub fn limit(&self, phi: f64, side: Side) -> f64 {
        let u_perp = Point::from_angle(phi + 0.5 * PI);
        let tie = match side {
            Side::After => u_perp,
            Side::Before => -u_perp,
        };
        self.measure.mass(
            &self.halfplane(phi),
            BoundaryRule::Tilted {
                pivot: self.center,
                tie,
            },
        )
    }

    /// Smooth arcs between consecutive critical angles as `(start, end)`
    /// with `end` possibly beyond 2π. One full turn if there are none.
    pub fn arcs(&self) -> Vec<(f64, f64)> {
        let a = &self.angles;
        if a.is_empty() {
            return vec![(0.0, TAU)];
        }
        (0..a.len())
            .map(|i| {
                let s = a[i];
                let e = if i + 1 < a.len() { a[i + 1] } else { a[0] + TAU };
                (s, e)
            })
            .collect()
    }
}

/// One evaluated angle of a profile scan.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub angle: f64,
    pub closed: f64,
    pub open: f64,
    pub critical: bool,
}

/// All evaluations made while minimizing a profile.
#[derive(Clone, Debug)]
pub struct ProfileScan {
    /// Sorted by angle in `[0, 2π)`.
    pub samples: Vec<ProfileSample>,
    /// Infimum of the closed mass, including one-sided limits.
    pub min_closed: f64,
    /// Infimum of the open mass.
    pub min_open: f64,
}

pub(crate) fn golden_min(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut best = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    let mut it = 0;
    while hi - lo > GOLDEN_TOL && it < 200 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
        it += 1;
    }
    best
}

/// Scans the profile: critical angles, exact one-sided limits, seed samples
/// on every smooth arc and golden-section refinement of local minima.
pub fn scan_profile(prof: &DepthProfile) -> ProfileScan {
    let atomic = prof.measure.is_atomic();
    let closed = |phi: f64| prof.closed(phi);
    let mut samples = Vec::new();
    let mut min_closed = f64::INFINITY;
    for &phi in prof.angles() {
        let c = prof.closed(phi);
        samples.push(ProfileSample {
            angle: phi,
            closed: c,
            open: prof.open(phi),
            critical: true,
        });
        min_closed = min_closed.min(c);
        min_closed = min_closed.min(prof.limit(phi, Side::Before));
        min_closed = min_closed.min(prof.limit(phi, Side::After));
    }
    let has_ends = !prof.angles().is_empty();
    for (a, b) in prof.arcs() {
        let len = b - a;
        let mut pts: Vec<f64> = Vec::new();
        if atomic || len < SHORT_ARC {
            pts.push(a + 0.5 * len);
        } else {
            let k = ARC_SAMPLES + 1;
            let mut pos = Vec::with_capacity(k + 1);
            let mut val = Vec::with_capacity(k + 1);
            if has_ends {
                pos.push(a);
                val.push(prof.limit(a, Side::After));
            }
            for i in 1..k {
                let t = a + len * i as f64 / k as f64;
                pos.push(t);
                val.push(closed(t));
                pts.push(t);
            }
            if has_ends {
                pos.push(b);
                val.push(prof.limit(normalize_angle(b), Side::Before));
            }
            let n = pos.len();
            for i in 0..n {
                let left = if i > 0 {
                    val[i - 1]
                } else if has_ends {
                    f64::INFINITY
                } else {
                    val[n - 1]
                };
                let right = if i + 1 < n {
                    val[i + 1]
                } else if has_ends {
                    f64::INFINITY
                } else {
                    val[0]
                };
                if val[i] <= left && val[i] <= right {
                    let step = len / k as f64;
                    let lo = if i > 0 {
                        pos[i - 1]
                    } else if has_ends {
                        pos[0]
                    } else {
                        pos[0] - step
                    };
                    let hi = if i + 1 < n {
                        pos[i + 1]
                    } else if has_ends {
                        pos[i]
                    } else {
                        pos[i] + step
                    };
                    let (t, _) = golden_min(&closed, lo, hi);
                    pts.push(t);
                }
            }
        }
        for t in pts {
            let phi = normalize_angle(t);
            let c = closed(phi);
            min_closed = min_closed.min(c);
            samples.push(ProfileSample {
                angle: phi,
                closed: c,
                open: prof.open(phi),
                critical: false,
            });
        }
    }
    samples.sort_by(|p, q| p.angle.total_cmp(&q.angle));
    let min_open = samples.iter().map(|s| s.open).fold(f64::INFINITY, f64::min);
    ProfileScan {
        samples,
        min_closed,
        min_open,
    }
}

/// Exact depth for purely atomic measures: each atom `p != x` lies in
/// `H_{x,phi}` for `phi` in a closed half-turn around its direction; the
/// depth is the smallest coverage over the gaps between arc endpoints.
/// Atoms at `x` always count.
pub fn atomic_depth(m: &MixtureMeasure, x: Point) -> f64 {
    let eps = m.eps();
    let mut base = 0.0;
    let mut dirs: Vec<(f64, f64)> = Vec::new();
    for (p, w) in m.atoms() {
        let d = p - x;
        if d.norm() <= eps {
            base += w;
        } else {
            dirs.push((d.angle(), w));
        }
    }
    if dirs.is_empty() {
        return base;
    }
    let mut events: Vec<(f64, f64)> = Vec::with_capacity(2 * dirs.len());
    for &(psi, w) in &dirs {
        events.push((normalize_angle(psi - 0.5 * PI), w));
        events.push((normalize_angle(psi + 0.5 * PI), -w));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0));
    // group angles that coincide up to rounding
    let mut groups: Vec<(f64, f64)> = Vec::new();
    for (a, w) in events {
        match groups.last_mut() {
            Some(g) if a - g.0 <= ANGLE_DEDUP => g.1 += w,
            _ => groups.push((a, w)),
        }
    }
    if groups.len() > 1 && groups[0].0 + TAU - groups[groups.len() - 1].0 <= ANGLE_DEDUP {
        let last = groups.pop().unwrap();
        groups[0].1 += last.1;
    }
    // coverage in the gap that ends at the first group
    let g0 = if groups.len() == 1 {
        normalize_angle(groups[0].0 + PI)
    } else {
        normalize_angle(0.5 * (groups[groups.len() - 1].0 + groups[0].0 + TAU))
    };
    let mut v = base;
    for &(psi, w) in &dirs {
        let diff = normalize_angle(g0 - psi);
        if !(0.5 * PI..=1.5 * PI).contains(&diff) {
            v += w;
        }
    }
    let mut best = v;
    for &(_, w) in &groups {
        v += w;
        best = best.min(v);
    }
    best.max(0.0).min(m.total_mass())
}

/// `D(x; m)`: infimum of the mass of closed halfplanes containing `x`.
pub fn depth(m: &MixtureMeasure, x: Point) -> f64 {
    if m.is_atomic() {
        return atomic_depth(m, x);
    }
    scan_profile(&DepthProfile::new(m, x)).min_closed
}

/// Infimum of the mass of open halfplanes whose closure contains `x`.
pub fn depth_open(m: &MixtureMeasure, x: Point) -> f64 {
    scan_profile(&DepthProfile::new(m, x)).min_open
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinimizerKind {
    /// `mass_closed == depth`.
    Exact,
    /// Only `mass_open <= depth`.
    Generalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimizingHalfspace {
    pub halfplane: HalfPlane,
    pub angle: f64,
    pub kind: MinimizerKind,
    pub mass_closed: f64,
    pub mass_open: f64,
    /// Angular extent of the cluster this entry represents.
    pub cluster_start: f64,
    pub cluster_end: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinimizerSet {
    pub depth: f64,
    pub clusters: Vec<MinimizingHalfspace>,
    /// Every scanned angle qualified.
    pub full_circle: bool,
}

/// Clusters of angles with `mass_closed <= depth + slack` (exact) or
/// `mass_open <= depth + slack` (generalized). Exact minimizers are also
/// generalized ones; every returned entry satisfies the generalized bound.
pub fn minimizing_halfspaces(m: &MixtureMeasure, x: Point, slack: f64) -> MinimizerSet {
    let prof = DepthProfile::new(m, x);
    let scan = scan_profile(&prof);
    let d = if m.is_atomic() {
        atomic_depth(m, x)
    } else {
        scan.min_closed
    };
    let s = &scan.samples;
    let qual: Vec<bool> = s.iter().map(|p| p.closed <= d + slack || p.open <= d + slack).collect();
    let n = s.len();
    if n > 0 && qual.iter().all(|&q| q) {
        let best = pick(s, 0..n, d, slack);
        let mut e = entry(&prof, s, best, d, slack);
        e.cluster_start = 0.0;
        e.cluster_end = TAU;
        return MinimizerSet {
            depth: d,
            clusters: vec![e],
            full_circle: true,
        };
    }
    // rotate so that the scan starts at a non-qualifying sample
    let start = qual.iter().position(|&q| !q).unwrap_or(0);
    let mut runs: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    for k in 0..n {
        let i = (start + k) % n;
        if qual[i] {
            cur.push(i);
        } else if !cur.is_empty() {
            runs.push(std::mem::take(&mut cur));
        }
    }
    if !cur.is_empty() {
        runs.push(cur);
    }
    // merge runs separated by less than CLUSTER_MERGE
    let mut merged: Vec<Vec<usize>> = Vec::new();
    for r in runs {
        if let Some(last) = merged.last_mut() {
            let gap = normalize_angle(s[r[0]].angle - s[*last.last().unwrap()].angle);
            if gap <= CLUSTER_MERGE {
                last.extend(r);
                continue;
            }
        }
        merged.push(r);
    }
    if merged.len() > 1 {
        let first = &merged[0];
        let last = &merged[merged.len() - 1];
        let gap = normalize_angle(s[first[0]].angle - s[*last.last().unwrap()].angle);
        if gap <= CLUSTER_MERGE {
            let l = merged.pop().unwrap();
            let mut joined = l;
            joined.extend(merged[0].iter().copied());
            merged[0] = joined;
        }
    }
    let mut clusters: Vec<MinimizingHalfspace> = merged
        .iter()
        .map(|r| {
            let best = pick(s, r.iter().copied(), d, slack);
            let mut e = entry(&prof, s, best, d, slack);
            e.cluster_start = s[r[0]].angle;
            e.cluster_end = s[*r.last().unwrap()].angle;
            e
        })
        .collect();
    if clusters.is_empty() {
        // a critical angle always carries open mass at most the depth
        let best = (0..n)
            .min_by(|&i, &j| s[i].open.total_cmp(&s[j].open))
            .expect("profile scan is never empty");
        let mut e = entry(&prof, s, best, d, slack);
        e.cluster_start = s[best].angle;
        e.cluster_end = s[best].angle;
        clusters.push(e);
    }
    clusters.sort_by(|a, b| a.angle.total_cmp(&b.angle));
    MinimizerSet {
        depth: d,
        clusters,
        full_circle: false,
    }
}

fn pick(s: &[ProfileSample], idx: impl Iterator<Item = usize>, d: f64, slack: f64) -> usize {
    let idx: Vec<usize> = idx.collect();
    let exact: Vec<usize> = idx.iter().copied().filter(|&i| s[i].closed <= d + slack).collect();
    if !exact.is_empty() {
        *exact
            .iter()
            .min_by(|&&i, &&j| s[i].closed.total_cmp(&s[j].closed))
            .unwrap()
    } else {
        *idx.iter().min_by(|&&i, &&j| s[i].open.total_cmp(&s[j].open)).unwrap()
    }
}

fn entry(prof: &DepthProfile, s: &[ProfileSample], i: usize, d: f64, slack: f64) -> MinimizingHalfspace {
    let p = s[i];
    MinimizingHalfspace {
        halfplane: prof.halfplane(p.angle),
        angle: p.angle,
        kind: if p.closed <= d + slack {
            MinimizerKind::Exact
        } else {
            MinimizerKind::Generalized
        },
        mass_closed: p.closed,
        mass_open: p.open,
        cluster_start: p.angle,
        cluster_end: p.angle,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry2d::ConvexPolygon;
    use crate::measure::Component;

    fn disc_atoms() -> MixtureMeasure {
        MixtureMeasure::new(vec![
            Component::disc(Point::ORIGIN, 1.0, 0.25),
            Component::atom(Point::new(0.0, 1.0), 0.5),
            Component::atom(Point::new(0.0, 0.5), 0.25),
        ])
        .unwrap()
    }

    fn cross() -> MixtureMeasure {
        let o = Point::ORIGIN;
        MixtureMeasure::new(vec![
            Component::segment(o, Point::new(-1.0, 0.0), 1.0),
            Component::segment(o, Point::new(1.0, 0.0), 1.0),
            Component::segment(o, Point::new(0.0, -1.0), 1.0),
            Component::segment(o, Point::new(0.0, 1.0), 2.0),
        ])
        .unwrap()
    }

    fn four_atoms() -> MixtureMeasure {
        MixtureMeasure::new(vec![
            Component::atom(Point::new(-1.0, -1.0), 1.0),
            Component::atom(Point::new(-1.0, 1.0), 1.0),
            Component::atom(Point::new(1.0, 1.0), 1.0),
            Component::atom(Point::new(1.0, -1.0), 2.0),
        ])
        .unwrap()
    }

    #[test]
    fn four_atom_critical_angles() {
        let a = critical_angles(&four_atoms(), Point::ORIGIN);
        // the two diagonals give four distinct normals
        assert_eq!(a.len(), 4);
        for w in a.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn disc_centre_has_no_critical_angles() {
        let d = MixtureMeasure::new(vec![Component::disc(Point::new(1.0, 2.0), 1.0, 1.0)]).unwrap();
        assert!(critical_angles(&d, Point::new(1.0, 2.0)).is_empty());
    }

    #[test]
    fn cross_depths() {
        let m = cross();
        assert_eq!(depth(&m, Point::ORIGIN), 2.0);
        assert!((depth_open(&m, Point::ORIGIN) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn disc_atom_depths() {
        let m = disc_atoms();
        assert!((depth(&m, Point::ORIGIN) - 0.125).abs() < 1e-12);
        assert!((depth(&m, Point::new(0.0, 0.5)) - 0.375).abs() < 1e-12);
        assert!((depth(&m, Point::new(0.0, 1.0)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn dirac_open_depth_is_zero() {
        let m = MixtureMeasure::new(vec![Component::atom(Point::ORIGIN, 1.0)]).unwrap();
        assert_eq!(depth(&m, Point::ORIGIN), 1.0);
        assert_eq!(depth_open(&m, Point::ORIGIN), 0.0);
    }

    #[test]
    fn smooth_open_equals_closed() {
        let sq = MixtureMeasure::new(vec![Component::polygon(
            ConvexPolygon::rectangle(Point::ORIGIN, Point::new(1.0, 1.0)).unwrap(),
            1.0,
        )])
        .unwrap();
        for p in [Point::new(0.5, 0.5), Point::new(0.2, 0.7), Point::new(0.9, 0.1)] {
            assert!((depth(&sq, p) - depth_open(&sq, p)).abs() < 1e-12);
        }
        assert!((depth(&sq, Point::new(0.5, 0.5)) - 0.5).abs() < 1e-12);
        assert_eq!(depth(&sq, Point::new(3.0, 3.0)), 0.0);
    }

    #[test]
    fn four_atom_generalized_minimizers() {
        let m = four_atoms();
        let x = Point::new(1.0, -1.0);
        let set = minimizing_halfspaces(&m, x, 1e-9);
        assert_eq!(set.depth, 2.0);
        assert!(!set.clusters.is_empty());
        for c in &set.clusters {
            assert!(c.mass_open <= 2.0 + 1e-9);
        }
    }

    #[test]
    fn uniform_disc_full_circle() {
        let d = MixtureMeasure::new(vec![Component::disc(Point::ORIGIN, 1.0, 1.0)]).unwrap();
        let set = minimizing_halfspaces(&d, Point::ORIGIN, 1e-9);
        assert!(set.full_circle);
        assert!((set.depth - 0.5).abs() < 1e-12);
    }

    #[test]
    fn profile_antipodal_identity() {
        let m = disc_atoms();
        let prof = DepthProfile::new(&m, Point::new(0.1, 0.3));
        for k in 0..360 {
            let phi = k as f64 * TAU / 360.0;
            let s = prof.closed(phi) + prof.open(phi + PI);
            assert!((s - m.total_mass()).abs() < 1e-9 * m.total_mass());
        }
    }
}
