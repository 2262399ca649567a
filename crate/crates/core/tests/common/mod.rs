//! Brute-force oracles shared by the integration tests.

#![allow(dead_code)]

use depthlab::Point;

/// Depth of `x` for weighted atoms: minimum closed mass over the halfplanes
/// bounded by lines through `x` and an atom, each turned slightly both ways.
pub fn brute_depth(atoms: &[(Point, f64)], x: Point) -> f64 {
    let at_x: f64 = atoms.iter().filter(|(p, _)| *p == x).map(|a| a.1).sum();
    let others: Vec<&(Point, f64)> = atoms.iter().filter(|(p, _)| *p != x).collect();
    let mut best = f64::INFINITY;
    for (p, _) in &others {
        let v = *p - x;
        let n = v.perp();
        for s in [1.0, -1.0] {
            for r in [1.0, -1.0] {
                let inside: f64 = others
                    .iter()
                    .filter(|(q, _)| {
                        let w = *q - x;
                        let a = s * w.dot(n);
                        a > 0.0 || (a == 0.0 && s * r * w.dot(v) > 0.0)
                    })
                    .map(|q| q.1)
                    .sum();
                best = best.min(at_x + inside);
            }
        }
    }
    if others.is_empty() {
        at_x
    } else {
        best
    }
}

/// Intersection of the lines `p1 p2` and `q1 q2`, if they cross.
pub fn line_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Option<Point> {
    let d1 = p2 - p1;
    let d2 = q2 - q1;
    let den = d1.cross(d2);
    if den == 0.0 {
        return None;
    }
    let t = (q1 - p1).cross(d2) / den;
    Some(p1 + d1 * t)
}

/// Maximal depth over atoms and all crossings of lines through atom pairs.
pub fn brute_alpha_star(atoms: &[(Point, f64)]) -> f64 {
    let pts: Vec<Point> = atoms.iter().map(|a| a.0).collect();
    let mut lines = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i] != pts[j] {
                lines.push((pts[i], pts[j]));
            }
        }
    }
    let mut cands = pts.clone();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            if let Some(p) = line_intersection(lines[i].0, lines[i].1, lines[j].0, lines[j].1) {
                cands.push(p);
            }
        }
    }
    cands
        .into_iter()
        .map(|c| brute_depth(atoms, c))
        .fold(f64::NEG_INFINITY, f64::max)
}

pub mod strategies {
    use depthlab::geometry2d::{convex_hull, Affine, ConvexPolygon, HalfPlane, Shape};
    use depthlab::{Component, MixtureMeasure, Point};
    use proptest::prelude::*;

    pub fn point(r: f64) -> impl Strategy<Value = Point> {
        (-r..r, -r..r).prop_map(|(x, y)| Point::new(x, y))
    }

    pub fn polygon() -> impl Strategy<Value = ConvexPolygon> {
        prop::collection::vec(point(10.0), 3..12).prop_filter_map("degenerate hull", |pts| match convex_hull(&pts) {
            Shape::Polygon { vertices } if vertices.area() > 1e-2 => Some(vertices),
            _ => None,
        })
    }

    pub fn halfplane() -> impl Strategy<Value = HalfPlane> {
        (0.0..std::f64::consts::TAU, -12.0..12.0f64).prop_map(|(a, c)| HalfPlane::new(Point::from_angle(a), c))
    }

    pub fn component(with_discs: bool) -> impl Strategy<Value = Component> {
        let mass = 0.1..5.0f64;
        let atom = (point(5.0), mass.clone()).prop_map(|(p, w)| Component::atom(p, w));
        let seg = (point(5.0), point(5.0), mass.clone())
            .prop_filter("short segment", |(a, b, _)| a.dist(*b) > 1e-3)
            .prop_map(|(a, b, w)| Component::segment(a, b, w));
        let poly = (polygon(), mass.clone()).prop_map(|(p, w)| Component::polygon(p, w));
        let disc = (point(5.0), 0.1..3.0f64, mass).prop_map(|(c, r, w)| Component::disc(c, r, w));
        if with_discs {
            prop_oneof![atom, seg, poly, disc].boxed()
        } else {
            prop_oneof![atom, seg, poly].boxed()
        }
    }

    pub fn measure(with_discs: bool) -> impl Strategy<Value = MixtureMeasure> {
        prop::collection::vec(component(with_discs), 1..6).prop_map(|c| MixtureMeasure::new(c).unwrap())
    }

    /// Weighted atoms on a small integer grid, so collinear triples abound.
    pub fn grid_atoms(max: usize) -> impl Strategy<Value = Vec<(Point, f64)>> {
        prop::collection::vec(((-4i32..=4), (-4i32..=4), 1u8..=4), 1..=max).prop_map(|v| {
            v.into_iter()
                .map(|(x, y, w)| (Point::new(x as f64, y as f64), w as f64))
                .collect()
        })
    }

    pub fn atoms_measure(atoms: &[(Point, f64)]) -> MixtureMeasure {
        MixtureMeasure::new(atoms.iter().map(|&(p, w)| Component::atom(p, w)).collect()).unwrap()
    }

    pub fn affine() -> impl Strategy<Value = Affine> {
        (
            (-3.0..3.0f64),
            (-3.0..3.0f64),
            (-3.0..3.0f64),
            (-3.0..3.0f64),
            point(5.0),
        )
            .prop_map(|(a, b, c, d, t)| Affine::new([[a, b], [c, d]], t))
            .prop_filter("near-singular map", |a| {
                let det = a.det().abs();
                let norm = a.m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
                det > 0.1 && det / (norm * norm) > 0.05
            })
    }

    pub fn similarity() -> impl Strategy<Value = Affine> {
        (0.0..std::f64::consts::TAU, 0.2..5.0f64, point(5.0)).prop_map(|(a, s, t)| Affine::similarity(a, s, t))
    }
}
