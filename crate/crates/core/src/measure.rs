//! Finite measures in the plane as mixtures of atoms and uniform
//! distributions on segments, convex polygons and discs.
//!
//! Component masses are total masses, not densities.

use std::f64::consts::PI;

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry2d::{eps_geom, Affine, BoundingBox, ConvexPolygon, HalfPlane, Point};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Component {
    Atom { point: Point, mass: f64 },
    Segment { a: Point, b: Point, mass: f64 },
    Polygon { vertices: ConvexPolygon, mass: f64 },
    Disc { center: Point, radius: f64, mass: f64 },
}

impl Component {
    pub fn atom(point: Point, mass: f64) -> Self {
        Component::Atom { point, mass }
    }

    pub fn segment(a: Point, b: Point, mass: f64) -> Self {
        Component::Segment { a, b, mass }
    }

    pub fn polygon(vertices: ConvexPolygon, mass: f64) -> Self {
        Component::Polygon { vertices, mass }
    }

    pub fn disc(center: Point, radius: f64, mass: f64) -> Self {
        Component::Disc { center, radius, mass }
    }

    pub fn mass(&self) -> f64 {
        match *self {
            Component::Atom { mass, .. }
            | Component::Segment { mass, .. }
            | Component::Polygon { mass, .. }
            | Component::Disc { mass, .. } => mass,
        }
    }

    fn with_mass(&self, m: f64) -> Component {
        let mut c = self.clone();
        match &mut c {
            Component::Atom { mass, .. }
            | Component::Segment { mass, .. }
            | Component::Polygon { mass, .. }
            | Component::Disc { mass, .. } => *mass = m,
        }
        c
    }

    fn validate(&self) -> Result<()> {
        let m = self.mass();
        if !(m.is_finite() && m > 0.0) {
            return Err(Error::InvalidComponent(format!("mass must be positive, got {m}")));
        }
        match self {
            Component::Atom { point, .. } if !point.is_finite() => {
                Err(Error::InvalidComponent("non-finite atom".into()))
            }
            Component::Segment { a, b, .. } => {
                if !a.is_finite() || !b.is_finite() {
                    Err(Error::InvalidComponent("non-finite segment".into()))
                } else if a == b {
                    Err(Error::InvalidComponent("segment endpoints coincide".into()))
                } else {
                    Ok(())
                }
            }
            Component::Disc { center, radius, .. } => {
                if !center.is_finite() || !(radius.is_finite() && *radius > 0.0) {
                    Err(Error::InvalidComponent(
                        "disc needs a finite centre and positive radius".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    fn extent(&self) -> Vec<Point> {
        match self {
            Component::Atom { point, .. } => vec![*point],
            Component::Segment { a, b, .. } => vec![*a, *b],
            Component::Polygon { vertices, .. } => vertices.vertices().to_vec(),
            Component::Disc { center, radius, .. } => vec![
                *center + Point::new(-radius, -radius),
                *center + Point::new(*radius, *radius),
            ],
        }
    }
}

/// How points on the boundary line of a halfplane are counted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryRule {
    /// Closed halfplane.
    Closed,
    /// Open halfplane (interior).
    Open,
    /// The boundary line only.
    Boundary,
    /// Interior plus the part of the boundary line on the positive side of
    /// `tie` from `pivot` (and `pivot` itself). This is the limit of the
    /// closed mass as the halfplane is rotated about `pivot`.
    Tilted { pivot: Point, tie: Point },
}

#[derive(Serialize, Deserialize)]
struct SceneRepr {
    components: Vec<Component>,
}

impl TryFrom<SceneRepr> for MixtureMeasure {
    type Error = Error;
    fn try_from(s: SceneRepr) -> Result<Self> {
        MixtureMeasure::new(s.components)
    }
}

impl From<MixtureMeasure> for SceneRepr {
    fn from(m: MixtureMeasure) -> Self {
        SceneRepr {
            components: m.components,
        }
    }
}

/// Immutable finite measure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SceneRepr", into = "SceneRepr")]
pub struct MixtureMeasure {
    components: Vec<Component>,
    total_mass: f64,
    bbox: BoundingBox,
}

/// Fan triangles of a polygon with area weights, for sampling.
type Fan = (Vec<[Point; 3]>, WeightedIndex<f64>);

impl MixtureMeasure {
    pub fn new(components: Vec<Component>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidComponent("measure has no components".into()));
        }
        for c in &components {
            c.validate()?;
        }
        let total_mass = components.iter().map(Component::mass).sum();
        let bbox =
            BoundingBox::from_points(components.iter().flat_map(Component::extent)).expect("at least one component");
        Ok(MixtureMeasure {
            components,
            total_mass,
            bbox,
        })
    }

    /// Equal-mass atoms at the given points (empirical measure).
    pub fn from_atoms(points: &[Point], mass_each: f64) -> Result<Self> {
        MixtureMeasure::new(points.iter().map(|&p| Component::atom(p, mass_each)).collect())
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn bbox(&self) -> BoundingBox {
        self.bbox
    }

    /// Length scale for tolerances: bounding-box diameter, or 1.
    pub fn scale(&self) -> f64 {
        self.bbox.scale()
    }

    /// Absolute geometric tolerance for this scene.
    pub fn eps(&self) -> f64 {
        eps_geom() * self.scale()
    }

    /// Mass tolerance, relative to the total mass.
    pub fn eps_mass(&self) -> f64 {
        1e-9 * self.total_mass
    }

    pub fn is_atomic(&self) -> bool {
        self.components.iter().all(|c| matches!(c, Component::Atom { .. }))
    }

    /// Only polygon and disc components: every line has zero mass.
    pub fn is_absolutely_continuous(&self) -> bool {
        self.components
            .iter()
            .all(|c| matches!(c, Component::Polygon { .. } | Component::Disc { .. }))
    }

    pub fn atoms(&self) -> Vec<(Point, f64)> {
        self.components
            .iter()
            .filter_map(|c| match c {
                Component::Atom { point, mass } => Some((*point, *mass)),
                _ => None,
            })
            .collect()
    }

    /// Atoms and segment endpoints: points where lines may carry mass.
    pub fn discrete_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for c in &self.components {
            match c {
                Component::Atom { point, .. } => out.push(*point),
                Component::Segment { a, b, .. } => {
                    out.push(*a);
                    out.push(*b);
                }
                _ => {}
            }
        }
        dedup_points(out, self.eps())
    }

    /// Atoms, segment endpoints, polygon vertices and disc centres.
    pub fn key_points(&self) -> Vec<Point> {
        let mut out = Vec::new();
        for c in &self.components {
            match c {
                Component::Atom { point, .. } => out.push(*point),
                Component::Segment { a, b, .. } => {
                    out.push(*a);
                    out.push(*b);
                }
                Component::Polygon { vertices, .. } => out.extend_from_slice(vertices.vertices()),
                Component::Disc { center, .. } => out.push(*center),
            }
        }
        dedup_points(out, self.eps())
    }

    pub fn mass(&self, h: &HalfPlane, rule: BoundaryRule) -> f64 {
        let eps = self.eps();
        self.components
            .iter()
            .map(|c| c.mass() * fraction(c, h, rule, eps))
            .sum()
    }

    pub fn mass_closed(&self, h: &HalfPlane) -> f64 {
        self.mass(h, BoundaryRule::Closed)
    }

    pub fn mass_open(&self, h: &HalfPlane) -> f64 {
        self.mass(h, BoundaryRule::Open)
    }

    /// Mass on the boundary line, from incidence tests.
    pub fn mass_boundary(&self, h: &HalfPlane) -> f64 {
        self.mass(h, BoundaryRule::Boundary)
    }

    /// Image under an affine map. Discs only survive similarities.
    pub fn transform(&self, a: &Affine) -> Result<Self> {
        if a.inverse().is_none() {
            return Err(Error::UnsupportedTransform("singular map".into()));
        }
        let mut out = Vec::with_capacity(self.components.len());
        for c in &self.components {
            out.push(match c {
                Component::Atom { point, mass } => Component::atom(a.apply(*point), *mass),
                Component::Segment { a: p, b: q, mass } => Component::segment(a.apply(*p), a.apply(*q), *mass),
                Component::Polygon { vertices, mass } => Component::polygon(vertices.map(|p| a.apply(p))?, *mass),
                Component::Disc { center, radius, mass } => {
                    let s = a
                        .similarity_scale()
                        .ok_or_else(|| Error::UnsupportedTransform("disc under a non-similarity map".into()))?;
                    Component::disc(a.apply(*center), radius * s, *mass)
                }
            });
        }
        MixtureMeasure::new(out)
    }

    /// Same geometry with masses multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        MixtureMeasure::new(self.components.iter().map(|c| c.with_mass(c.mass() * factor)).collect())
    }

    /// Probability version.
    pub fn normalized(&self) -> Self {
        self.scaled(1.0 / self.total_mass)
            .expect("positive total mass keeps components valid")
    }

    /// `n` i.i.d. draws from the normalized measure, reproducible from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Vec<Point> {
        if n == 0 {
            return Vec::new();
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pick = WeightedIndex::new(self.components.iter().map(Component::mass)).expect("positive masses");
        let fans: Vec<Option<Fan>> = self
            .components
            .iter()
            .map(|c| match c {
                Component::Polygon { vertices, .. } => {
                    let tris: Vec<[Point; 3]> = vertices.fan().collect();
                    let w = WeightedIndex::new(tris.iter().map(|t| 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).abs()))
                        .expect("positive triangle areas");
                    Some((tris, w))
                }
                _ => None,
            })
            .collect();
        (0..n)
            .map(|_| {
                let i = pick.sample(&mut rng);
                match &self.components[i] {
                    Component::Atom { point, .. } => *point,
                    Component::Segment { a, b, .. } => a.lerp(*b, rng.gen::<f64>()),
                    Component::Polygon { .. } => {
                        let (tris, w) = fans[i].as_ref().expect("fan for polygon");
                        let t = tris[w.sample(&mut rng)];
                        let (mut r1, mut r2) = (rng.gen::<f64>(), rng.gen::<f64>());
                        if r1 + r2 > 1.0 {
                            r1 = 1.0 - r1;
                            r2 = 1.0 - r2;
                        }
                        t[0] + (t[1] - t[0]) * r1 + (t[2] - t[0]) * r2
                    }
                    Component::Disc { center, radius, .. } => {
                        let r = radius * rng.gen::<f64>().sqrt();
                        let phi = 2.0 * PI * rng.gen::<f64>();
                        *center + Point::from_angle(phi) * r
                    }
                }
            })
            .collect()
    }
}

fn dedup_points(mut pts: Vec<Point>, eps: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    for p in pts {
        if !out.iter().rev().take(8).any(|q| q.dist(p) <= eps) {
            out.push(p);
        }
    }
    out
}

/// Share of the positive part of a segment parametrized by signed values
/// `s` and `t` at its endpoints.
fn positive_share(s: f64, t: f64) -> f64 {
    if s >= 0.0 && t >= 0.0 {
        1.0
    } else if s <= 0.0 && t <= 0.0 {
        0.0
    } else if s > 0.0 {
        s / (s - t)
    } else {
        t / (t - s)
    }
}

fn snap(v: f64, eps: f64) -> f64 {
    if v.abs() <= eps {
        0.0
    } else {
        v
    }
}

/// Fraction of a component's mass counted by `rule` for halfplane `h`.
pub(crate) fn fraction(c: &Component, h: &HalfPlane, rule: BoundaryRule, eps: f64) -> f64 {
    match c {
        Component::Atom { point, .. } => {
            let v = h.value(*point);
            let on = v.abs() <= eps;
            let hit = match rule {
                BoundaryRule::Closed => v >= -eps,
                BoundaryRule::Open => v > eps,
                BoundaryRule::Boundary => on,
                BoundaryRule::Tilted { pivot, tie } => {
                    if on {
                        point.dist(pivot) <= eps || (*point - pivot).dot(tie) > 0.0
                    } else {
                        v > 0.0
                    }
                }
            };
            if hit {
                1.0
            } else {
                0.0
            }
        }
        Component::Segment { a, b, .. } => {
            let sa = snap(h.value(*a), eps);
            let sb = snap(h.value(*b), eps);
            let on_line = sa == 0.0 && sb == 0.0;
            match rule {
                BoundaryRule::Boundary => {
                    if on_line {
                        1.0
                    } else {
                        0.0
                    }
                }
                BoundaryRule::Closed if on_line => 1.0,
                BoundaryRule::Open if on_line => 0.0,
                BoundaryRule::Tilted { pivot, tie } if on_line => {
                    positive_share((*a - pivot).dot(tie), (*b - pivot).dot(tie))
                }
                _ => positive_share(sa, sb),
            }
        }
        Component::Polygon { vertices, .. } => match rule {
            BoundaryRule::Boundary => 0.0,
            _ => vertices.clipped_area(h) / vertices.area(),
        },
        Component::Disc { center, radius, .. } => match rule {
            BoundaryRule::Boundary => 0.0,
            _ => {
                let t = ((h.offset - center.dot(h.normal)) / radius).clamp(-1.0, 1.0);
                (t.acos() - t * (1.0 - t * t).max(0.0).sqrt()) / PI
            }
        },
    }
}
