//! Planar primitives: points, closed halfplanes, convex polygons, clipping,
//! halfplane intersection, hulls and Hausdorff distance.
//!
//! All "on the boundary" decisions use one absolute tolerance,
//! [`eps_geom`], multiplied by the diameter of the scene at hand.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Base geometric tolerance. `DEPTHLAB_TOL` overrides the default of 1e-9.
pub fn eps_geom() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(|| {
        std::env::var("DEPTHLAB_TOL")
            .ok()
            .and_then(|s| s.trim().parse::<f64>().ok())
            .filter(|t| t.is_finite() && *t > 0.0)
            .unwrap_or(1e-9)
    })
}

/// Side length of the sentinel box used by [`intersect_halfplanes`], in
/// units of the scene diameter.
pub const SENTINEL_FACTOR: f64 = 1e6;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point {
    fn from(a: [f64; 2]) -> Self {
        Point::new(a[0], a[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    /// Unit vector at angle `phi`.
    pub fn from_angle(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Point::new(c, s)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product.
    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    /// Angle in `[0, 2π)`.
    pub fn angle(self) -> f64 {
        normalize_angle(self.y.atan2(self.x))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point, t: f64) -> Point {
        self + (o - self) * t
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Maps any angle into `[0, 2π)`.
pub fn normalize_angle(a: f64) -> f64 {
    let t = 2.0 * PI;
    let r = a.rem_euclid(t);
    if r >= t {
        0.0
    } else {
        r
    }
}

/// Closed halfplane `{y : <y, normal> >= offset}` with a unit inner normal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub normal: Point,
    pub offset: f64,
}

impl HalfPlane {
    /// Normalizes `normal`; a zero normal is a programming error.
    pub fn new(normal: Point, offset: f64) -> Self {
        let n = normal.norm();
        assert!(n > 0.0 && n.is_finite(), "halfplane normal must be non-zero");
        HalfPlane {
            normal: normal * (1.0 / n),
            offset: offset / n,
        }
    }

    /// Halfplane whose boundary passes through `p`.
    pub fn through(p: Point, normal: Point) -> Self {
        let h = HalfPlane::new(normal, 0.0);
        HalfPlane {
            normal: h.normal,
            offset: p.dot(h.normal),
        }
    }

    /// `H_{x,phi}`: boundary through `x`, inner normal `(cos phi, sin phi)`.
    pub fn at_angle(x: Point, phi: f64) -> Self {
        let u = Point::from_angle(phi);
        HalfPlane {
            normal: u,
            offset: x.dot(u),
        }
    }

    /// Signed distance: positive inside, zero on the boundary.
    pub fn value(&self, p: Point) -> f64 {
        p.dot(self.normal) - self.offset
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.value(p) >= -tol
    }

    /// Closure of the complement.
    pub fn complement(&self) -> HalfPlane {
        HalfPlane {
            normal: -self.normal,
            offset: -self.offset,
        }
    }

    /// Moves the boundary outward by `d` (the halfplane grows for `d > 0`).
    pub fn shifted(&self, d: f64) -> HalfPlane {
        HalfPlane {
            normal: self.normal,
            offset: self.offset - d,
        }
    }

    /// Angle of the inner normal in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        self.normal.angle()
    }

    /// Direction of the boundary line (normal rotated by +90°).
    pub fn direction(&self) -> Point {
        self.normal.perp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    pub fn from_points<I: IntoIterator<Item = Point>>(pts: I) -> Option<Self> {
        let mut it = pts.into_iter();
        let first = it.next()?;
        let mut b = BoundingBox { min: first, max: first };
        for p in it {
            b.include(p);
        }
        Some(b)
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn diameter(&self) -> f64 {
        self.min.dist(self.max)
    }

    pub fn center(&self) -> Point {
        self.min.lerp(self.max, 0.5)
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    /// Diameter used for tolerance scaling; 1 for a degenerate box.
    pub fn scale(&self) -> f64 {
        let d = self.diameter();
        if d > 0.0 && d.is_finite() {
            d
        } else {
            1.0
        }
    }
}

/// Convex polygon with counterclockwise vertices and no collinear triples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl TryFrom<Vec<Point>> for ConvexPolygon {
    type Error = Error;
    fn try_from(v: Vec<Point>) -> Result<Self> {
        ConvexPolygon::new(v)
    }
}

impl From<ConvexPolygon> for Vec<Point> {
    fn from(p: ConvexPolygon) -> Self {
        p.vertices
    }
}

impl ConvexPolygon {
    /// Validates and normalizes: drops repeated and collinear vertices and
    /// orients counterclockwise. Fails on non-convex or zero-area input.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex".into()));
        }
        let scale = BoundingBox::from_points(vertices.iter().copied())
            .map(|b| b.scale())
            .unwrap_or(1.0);
        let tol = eps_geom() * scale;
        let mut v = merge_collinear(dedup_ring(vertices, tol), tol);
        if v.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than three distinct vertices".into()));
        }
        if signed_area(&v) < 0.0 {
            v.reverse();
        }
        let n = v.len();
        for i in 0..n {
            let a = v[i];
            let b = v[(i + 1) % n];
            let c = v[(i + 2) % n];
            if (b - a).cross(c - b) < -tol * scale {
                return Err(Error::InvalidPolygon("vertices are not convex".into()));
            }
        }
        if !is_simple_convex_turn(&v) {
            return Err(Error::InvalidPolygon("vertices wind more than once".into()));
        }
        let area = signed_area(&v);
        if area <= tol * scale {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        Ok(ConvexPolygon { vertices: v })
    }

    /// Axis-aligned rectangle.
    pub fn rectangle(min: Point, max: Point) -> Result<Self> {
        ConvexPolygon::new(vec![min, Point::new(max.x, min.y), max, Point::new(min.x, max.y)])
    }

    /// Trusted constructor for vertices already in canonical form.
    pub(crate) fn from_canonical(vertices: Vec<Point>) -> Self {
        ConvexPolygon { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices).abs()
    }

    pub fn centroid(&self) -> Point {
        polygon_centroid(&self.vertices)
    }

    pub fn bbox(&self) -> BoundingBox {
        BoundingBox::from_points(self.vertices.iter().copied()).expect("non-empty polygon")
    }

    /// Point-in-polygon with an absolute slack.
    pub fn contains(&self, p: Point, tol: f64) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let e = b - a;
            e.cross(p - a) / e.norm() >= -tol
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Fan triangulation from the first vertex.
    pub fn fan(&self) -> impl Iterator<Item = [Point; 3]> + '_ {
        let v = &self.vertices;
        (1..v.len() - 1).map(move |i| [v[0], v[i], v[i + 1]])
    }

    /// Area of the part inside `h`, with an exact (tolerance-free) cut.
    pub fn clipped_area(&self, h: &HalfPlane) -> f64 {
        let vals: Vec<f64> = self.vertices.iter().map(|&p| h.value(p)).collect();
        if vals.iter().all(|&v| v >= 0.0) {
            return self.area();
        }
        if vals.iter().all(|&v| v <= 0.0) {
            return 0.0;
        }
        signed_area(&clip_points(&self.vertices, h, 0.0)).abs()
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        ConvexPolygon::new(self.vertices.iter().map(|&p| f(p)).collect())
    }
}

fn is_simple_convex_turn(v: &[Point]) -> bool {
    // Total turning of a convex ring is exactly one revolution.
    let n = v.len();
    let mut total = 0.0;
    for i in 0..n {
        let e1 = v[(i + 1) % n] - v[i];
        let e2 = v[(i + 2) % n] - v[(i + 1) % n];
        total += e1.cross(e2).atan2(e1.dot(e2));
    }
    (total - 2.0 * PI).abs() < 1e-6
}

pub fn signed_area(v: &[Point]) -> f64 {
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    let o = v[0];
    let mut s = 0.0;
    for i in 1..n - 1 {
        s += (v[i] - o).cross(v[i + 1] - o);
    }
    0.5 * s
}

fn polygon_centroid(v: &[Point]) -> Point {
    let o = v[0];
    let mut a = 0.0;
    let mut c = Point::ORIGIN;
    for i in 1..v.len() - 1 {
        let p = v[i] - o;
        let q = v[i + 1] - o;
        let w = p.cross(q);
        a += w;
        c = c + (p + q) * w;
    }
    if a == 0.0 {
        return mean(v);
    }
    o + c * (1.0 / (3.0 * a))
}

fn mean(v: &[Point]) -> Point {
    let s = v.iter().fold(Point::ORIGIN, |acc, &p| acc + p);
    s * (1.0 / v.len() as f64)
}

fn dedup_ring(points: Vec<Point>, tol: f64) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if out.last().is_none_or(|q: &Point| q.dist(p) > tol) {
            out.push(p);
        }
    }
    while out.len() > 1 && out[0].dist(out[out.len() - 1]) <= tol {
        out.pop();
    }
    out
}

fn merge_collinear(mut v: Vec<Point>, tol: f64) -> Vec<Point> {
    loop {
        let n = v.len();
        if n < 3 {
            return v;
        }
        let mut drop = None;
        for i in 0..n {
            let a = v[(i + n - 1) % n];
            let b = v[i];
            let c = v[(i + 1) % n];
            let e = c - a;
            let len = e.norm();
            let off = if len > 0.0 { e.cross(b - a).abs() / len } else { 0.0 };
            // b is redundant if it sits on segment ac
            if off <= tol && (b - a).dot(e) >= -tol * len && (c - b).dot(e) >= -tol * len {
                drop = Some(i);
                break;
            }
        }
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

/// Result shape of a region computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Shape {
    Polygon { vertices: ConvexPolygon },
    Segment { a: Point, b: Point },
    Point { p: Point },
    Empty,
}

impl Shape {
    pub fn points(&self) -> Vec<Point> {
        match self {
            Shape::Polygon { vertices } => vertices.vertices().to_vec(),
            Shape::Segment { a, b } => vec![*a, *b],
            Shape::Point { p } => vec![*p],
            Shape::Empty => Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Shape::Empty)
    }

    pub fn area(&self) -> f64 {
        match self {
            Shape::Polygon { vertices } => vertices.area(),
            _ => 0.0,
        }
    }

    /// Affine dimension, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            Shape::Polygon { .. } => Some(2),
            Shape::Segment { .. } => Some(1),
            Shape::Point { .. } => Some(0),
            Shape::Empty => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Shape::Polygon { .. } => "polygon",
            Shape::Segment { .. } => "segment",
            Shape::Point { .. } => "point",
            Shape::Empty => "empty",
        }
    }

    pub fn diameter(&self) -> f64 {
        let p = self.points();
        let mut d: f64 = 0.0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                d = d.max(p[i].dist(p[j]));
            }
        }
        d
    }

    pub fn bbox(&self) -> Option<BoundingBox> {
        BoundingBox::from_points(self.points())
    }

    /// Minimal width over edge normals; zero for lower-dimensional shapes.
    pub fn width(&self) -> f64 {
        match self {
            Shape::Polygon { vertices } => vertices
                .edges()
                .map(|(a, b)| {
                    let n = (b - a).perp();
                    let (lo, hi) = self.support(n * (1.0 / n.norm())).unwrap();
                    hi - lo
                })
                .fold(f64::INFINITY, f64::min),
            _ => 0.0,
        }
    }

    /// Distance from `p` to the shape; infinite for the empty shape.
    pub fn distance_to(&self, p: Point) -> f64 {
        match self {
            Shape::Empty => f64::INFINITY,
            Shape::Point { p: q } => p.dist(*q),
            Shape::Segment { a, b } => point_segment_distance(p, *a, *b),
            Shape::Polygon { vertices } => {
                if vertices.contains(p, 0.0) {
                    0.0
                } else {
                    vertices
                        .edges()
                        .map(|(a, b)| point_segment_distance(p, a, b))
                        .fold(f64::INFINITY, f64::min)
                }
            }
        }
    }

    /// Largest and smallest value of `<y, u>` over the shape.
    pub fn support(&self, u: Point) -> Option<(f64, f64)> {
        let pts = self.points();
        if pts.is_empty() {
            return None;
        }
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in pts {
            let v = p.dot(u);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Some((lo, hi))
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> Shape {
        match self {
            Shape::Empty => Shape::Empty,
            Shape::Point { p } => Shape::Point { p: f(*p) },
            Shape::Segment { a, b } => Shape::Segment { a: f(*a), b: f(*b) },
            Shape::Polygon { vertices } => {
                let pts: Vec<Point> = vertices.vertices().iter().map(|&p| f(p)).collect();
                let scale = BoundingBox::from_points(pts.iter().copied())
                    .map(|b| b.scale())
                    .unwrap_or(1.0);
                classify(&pts, eps_geom() * scale)
            }
        }
    }
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let e = b - a;
    let l2 = e.dot(e);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(e) / l2).clamp(0.0, 1.0);
    p.dist(a + e * t)
}

/// A computed region together with the halfplanes that define it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionResult {
    pub shape: Shape,
    pub constraints: Vec<HalfPlane>,
    pub alpha: Option<f64>,
    /// The intersection reached the sentinel box.
    pub unbounded: bool,
    /// The shape was produced by the lower-dimensional line search.
    pub degenerate_search: bool,
}

impl RegionResult {
    pub fn new(shape: Shape, constraints: Vec<HalfPlane>) -> Self {
        RegionResult {
            shape,
            constraints,
            alpha: None,
            unbounded: false,
            degenerate_search: false,
        }
    }

    pub fn empty() -> Self {
        RegionResult::new(Shape::Empty, Vec::new())
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn is_empty(&self) -> bool {
        self.shape.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.shape.area()
    }

    /// Keeps only constraints whose boundary touches the shape.
    pub fn prune_constraints(&mut self, tol: f64) {
        let pts = self.shape.points();
        if pts.is_empty() {
            return;
        }
        self.constraints
            .retain(|h| pts.iter().map(|&p| h.value(p)).fold(f64::INFINITY, f64::min) <= tol);
    }

    /// Largest violation of any constraint by a vertex of the shape.
    pub fn max_violation(&self) -> f64 {
        let pts = self.shape.points();
        let mut worst: f64 = 0.0;
        for h in &self.constraints {
            for &p in &pts {
                worst = worst.max(-h.value(p));
            }
        }
        worst
    }
}

/// Sutherland–Hodgman step on a closed ring of points. Vertices within
/// `tol` outside `h` are kept unchanged.
pub fn clip_points(points: &[Point], h: &HalfPlane, tol: f64) -> Vec<Point> {
    let n = points.len();
    let mut out = Vec::with_capacity(n + 2);
    if n == 0 {
        return out;
    }
    let vals: Vec<f64> = points.iter().map(|&p| h.value(p)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        let (p, vp) = (points[i], vals[i]);
        let (q, vq) = (points[j], vals[j]);
        let pin = vp >= -tol;
        let qin = vq >= -tol;
        if pin {
            out.push(p);
        }
        if pin != qin && ((vp > 0.0 && vq < 0.0) || (vp < 0.0 && vq > 0.0)) {
            let t = vp / (vp - vq);
            out.push(p.lerp(q, t));
        }
    }
    out
}

/// Classifies a ring of points (output of clipping) into a shape.
pub fn classify(points: &[Point], tol: f64) -> Shape {
    let pts = dedup_ring(points.to_vec(), tol);
    if pts.is_empty() {
        return Shape::Empty;
    }
    let mut best = (0, 0, 0.0);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = pts[i].dist(pts[j]);
            if d > best.2 {
                best = (i, j, d);
            }
        }
    }
    if best.2 <= tol {
        return Shape::Point { p: mean(&pts) };
    }
    let a = pts[best.0];
    let dir = (pts[best.1] - a) * (1.0 / best.2);
    let width = pts.iter().map(|&p| dir.cross(p - a).abs()).fold(0.0, f64::max);
    if width <= tol {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for &p in &pts {
            let t = (p - a).dot(dir);
            lo = lo.min(t);
            hi = hi.max(t);
        }
        return Shape::Segment {
            a: a + dir * lo,
            b: a + dir * hi,
        };
    }
    let mut v = merge_collinear(pts, tol);
    if signed_area(&v) < 0.0 {
        v.reverse();
    }
    Shape::Polygon {
        vertices: ConvexPolygon::from_canonical(v),
    }
}

/// `poly ∩ h`, classified.
pub fn clip_polygon(poly: &ConvexPolygon, h: &HalfPlane) -> RegionResult {
    let tol = eps_geom() * poly.bbox().scale();
    let pts = clip_points(poly.vertices(), h, tol);
    RegionResult::new(classify(&pts, tol), vec![*h])
}

/// Clips an arbitrary shape by a halfplane.
pub fn clip_shape(shape: &Shape, h: &HalfPlane, tol: f64) -> Shape {
    let pts = shape.points();
    if pts.is_empty() {
        return Shape::Empty;
    }
    let vals: Vec<f64> = pts.iter().map(|&p| h.value(p)).collect();
    if vals.iter().all(|&v| v >= -tol) {
        return shape.clone();
    }
    if vals.iter().all(|&v| v < -tol) {
        return Shape::Empty;
    }
    classify(&clip_points(&pts, h, tol), tol)
}

/// Intersection of halfplanes inside a sentinel box derived from the
/// offsets. See [`intersect_halfplanes_within`] to pass a scene box.
pub fn intersect_halfplanes(hs: &[HalfPlane]) -> RegionResult {
    let r = hs.iter().map(|h| h.offset.abs()).fold(0.0, f64::max).max(0.5);
    let b = BoundingBox {
        min: Point::new(-r, -r),
        max: Point::new(r, r),
    };
    intersect_halfplanes_within(hs, &b)
}

/// Intersection of halfplanes by incremental clipping of a box with side
/// `SENTINEL_FACTOR` times the scene diameter, centred on the scene.
/// Tolerances scale with the scene, not with the box.
pub fn intersect_halfplanes_within(hs: &[HalfPlane], scene: &BoundingBox) -> RegionResult {
    let scale = scene.scale();
    let tol = eps_geom() * scale;
    let c = scene.center();
    let half = 0.5 * SENTINEL_FACTOR * scale;
    let corners = [
        c + Point::new(-half, -half),
        c + Point::new(half, -half),
        c + Point::new(half, half),
        c + Point::new(-half, half),
    ];
    // box sides first, then `hs` shifted by four
    let mut lines: Vec<HalfPlane> = (0..4)
        .map(|i| {
            let (a, b) = (corners[i], corners[(i + 1) % 4]);
            HalfPlane::through(a, (b - a).perp())
        })
        .collect();
    lines.extend_from_slice(hs);
    let mut ring: Vec<Labeled> = (0..4).map(|i| Labeled { p: corners[i], edge: i }).collect();
    let mut bb = BoundingBox::from_points(corners.iter().copied()).expect("box corners");
    for (k, h) in hs.iter().enumerate() {
        // cheap rejection: the ring lies inside its bounding box
        let corner_min = [
            bb.min,
            bb.max,
            Point::new(bb.min.x, bb.max.y),
            Point::new(bb.max.x, bb.min.y),
        ]
        .iter()
        .map(|&p| h.value(p))
        .fold(f64::INFINITY, f64::min);
        if corner_min >= -tol {
            continue;
        }
        let mut all_in = true;
        let mut all_out = true;
        for v in &ring {
            if h.value(v.p) < -tol {
                all_in = false;
            } else {
                all_out = false;
            }
        }
        if all_out {
            ring.clear();
            break;
        }
        if !all_in {
            ring = clip_labeled(&ring, h, k + 4, tol);
            if ring.len() > 8 {
                ring = dedup_labeled(ring, tol);
            }
            match BoundingBox::from_points(ring.iter().map(|v| v.p)) {
                Some(b) => bb = b,
                None => break,
            }
        }
    }
    let ring = polish(&ring, &lines, tol);
    let limit = half * (1.0 - 1e-9);
    let unbounded = ring
        .iter()
        .any(|p| (p.x - c.x).abs() >= limit || (p.y - c.y).abs() >= limit);
    let mut r = RegionResult::new(classify(&ring, tol), hs.to_vec());
    r.unbounded = unbounded;
    r
}

/// Ring vertex with the line carrying the edge that leaves it.
#[derive(Clone, Copy, Debug)]
struct Labeled {
    p: Point,
    edge: usize,
}

fn clip_labeled(ring: &[Labeled], h: &HalfPlane, k: usize, tol: f64) -> Vec<Labeled> {
    let n = ring.len();
    let mut out = Vec::with_capacity(n + 2);
    let vals: Vec<f64> = ring.iter().map(|v| h.value(v.p)).collect();
    for i in 0..n {
        let j = (i + 1) % n;
        let (vp, vq) = (vals[i], vals[j]);
        let pin = vp >= -tol;
        let qin = vq >= -tol;
        if pin {
            out.push(ring[i]);
        }
        if pin != qin && ((vp > 0.0 && vq < 0.0) || (vp < 0.0 && vq > 0.0)) {
            let t = vp / (vp - vq);
            out.push(Labeled {
                p: ring[i].p.lerp(ring[j].p, t),
                edge: if pin { k } else { ring[i].edge },
            });
        } else if pin && !qin {
            // p sits on h within tol and is itself the exit point
            if let Some(l) = out.last_mut() {
                l.edge = k;
            }
        }
    }
    out
}

fn dedup_labeled(ring: Vec<Labeled>, tol: f64) -> Vec<Labeled> {
    let mut out: Vec<Labeled> = Vec::with_capacity(ring.len());
    for v in ring {
        match out.last_mut() {
            Some(l) if l.p.dist(v.p) <= tol => l.edge = v.edge,
            _ => out.push(v),
        }
    }
    while out.len() > 1 && out[0].p.dist(out[out.len() - 1].p) <= tol {
        out.pop();
    }
    out
}

/// Recomputes each vertex as the meet of its two lines. Clipping inside the
/// sentinel box loses absolute precision far from the scene.
fn polish(ring: &[Labeled], lines: &[HalfPlane], tol: f64) -> Vec<Point> {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let p = ring[i].p;
            let a = &lines[ring[(i + n - 1) % n].edge];
            let b = &lines[ring[i].edge];
            let det = a.normal.cross(b.normal);
            if det.abs() < 1e-12 {
                return p;
            }
            let q = Point::new(
                (a.offset * b.normal.y - a.normal.y * b.offset) / det,
                (a.normal.x * b.offset - a.offset * b.normal.x) / det,
            );
            // two lines that both pass within tol of a snapped vertex can
            // meet far from it; keep the meet only if the ring still holds
            let holds = || ring.iter().all(|v| lines[v.edge].value(q) >= -tol);
            if q.is_finite() && q.dist(p) <= 1e3 * tol && holds() {
                q
            } else {
                p
            }
        })
        .collect()
}

/// Area centroid for polygons, midpoint for segments, the point itself.
pub fn barycentre(shape: &Shape) -> Result<Point> {
    match shape {
        Shape::Empty => Err(Error::EmptyRegion),
        Shape::Point { p } => Ok(*p),
        Shape::Segment { a, b } => Ok(a.lerp(*b, 0.5)),
        Shape::Polygon { vertices } => Ok(vertices.centroid()),
    }
}

/// `sup_{p in a} dist(p, b)`; vertices suffice since `a` is convex.
pub fn directed_hausdorff(a: &Shape, b: &Shape) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyRegion);
    }
    Ok(a.points().into_iter().map(|p| b.distance_to(p)).fold(0.0, f64::max))
}

pub fn hausdorff(a: &Shape, b: &Shape) -> Result<f64> {
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

/// `inner ⊆ outer` up to `slack`. The empty set is contained in anything.
pub fn contained_in(inner: &Shape, outer: &Shape, slack: f64) -> bool {
    if inner.is_empty() {
        return true;
    }
    match directed_hausdorff(inner, outer) {
        Ok(d) => d <= slack,
        Err(_) => false,
    }
}

/// Andrew's monotone chain, classified into a shape.
pub fn convex_hull(points: &[Point]) -> Shape {
    let mut p: Vec<Point> = points.iter().copied().filter(|q| q.is_finite()).collect();
    if p.is_empty() {
        return Shape::Empty;
    }
    p.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    p.dedup();
    let scale = BoundingBox::from_points(p.iter().copied()).unwrap().scale();
    let tol = eps_geom() * scale;
    if p.len() < 3 {
        return classify(&p, tol);
    }
    let mut lower: Vec<Point> = Vec::new();
    for &q in &p {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2]).cross(q - lower[lower.len() - 2]) <= 0.0
        {
            lower.pop();
        }
        lower.push(q);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &q in p.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2]).cross(q - upper[upper.len() - 2]) <= 0.0
        {
            upper.pop();
        }
        upper.push(q);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    classify(&lower, tol)
}

/// Invertible affine map `y -> m y + t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Affine {
    pub m: [[f64; 2]; 2],
    pub t: Point,
}

impl Affine {
    pub fn new(m: [[f64; 2]; 2], t: Point) -> Self {
        Affine { m, t }
    }

    pub fn identity() -> Self {
        Affine::new([[1.0, 0.0], [0.0, 1.0]], Point::ORIGIN)
    }

    /// Rotation by `angle`, uniform scaling by `s`, then translation.
    pub fn similarity(angle: f64, s: f64, t: Point) -> Self {
        let (sn, cs) = angle.sin_cos();
        Affine::new([[s * cs, -s * sn], [s * sn, s * cs]], t)
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y + self.t.x,
            self.m[1][0] * p.x + self.m[1][1] * p.y + self.t.y,
        )
    }

    pub fn linear(&self, v: Point) -> Point {
        Point::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    /// Returns `None` for singular maps.
    pub fn inverse(&self) -> Option<Affine> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        let inv = [
            [self.m[1][1] / d, -self.m[0][1] / d],
            [-self.m[1][0] / d, self.m[0][0] / d],
        ];
        let a = Affine::new(inv, Point::ORIGIN);
        let t = -a.linear(self.t);
        Some(Affine::new(inv, t))
    }

    /// Image of a halfplane: `{A y : y in h}`.
    pub fn apply_halfplane(&self, h: &HalfPlane) -> Option<HalfPlane> {
        let inv = self.inverse()?;
        // <inv(y'), u> >= c  <=>  <y', M^{-T} u> >= c - <inv.t, u>
        let n = Point::new(
            inv.m[0][0] * h.normal.x + inv.m[1][0] * h.normal.y,
            inv.m[0][1] * h.normal.x + inv.m[1][1] * h.normal.y,
        );
        Some(HalfPlane::new(n, h.offset - inv.t.dot(h.normal)))
    }

    /// Uniform scale factor if the map is a similarity.
    pub fn similarity_scale(&self) -> Option<f64> {
        let [[a, b], [c, d]] = self.m;
        let c1 = a * a + c * c;
        let c2 = b * b + d * d;
        let off = a * b + c * d;
        let s = c1.max(c2);
        if s > 0.0 && (c1 - c2).abs() <= 1e-12 * s && off.abs() <= 1e-12 * s {
            Some(c1.sqrt())
        } else {
            None
        }
    }
}
