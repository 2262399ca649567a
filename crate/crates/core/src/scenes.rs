//! Built-in named scenes.

use crate::experiments::TriangleGapScene;
use crate::geometry2d::{ConvexPolygon, Point};
use crate::measure::{Component, MixtureMeasure};
use crate::{Error, Result};

/// Names accepted by [`builtin`]. The triangle gap also accepts
/// `triangle-gap-2.11(x)` with an explicit `x` in `(0, 1/4)`.
pub const SCENE_NAMES: [&str; 8] = [
    "cross-2.10",
    "triangle-gap-2.11",
    "disc-atoms-3.3",
    "double-triangle-4.1",
    "four-atoms-2.7",
    "uniform-square",
    "uniform-disc",
    "dirac",
];

/// Default `x` of the triangle gap.
pub const TRIANGLE_GAP_X: f64 = 0.2;

pub fn builtin(name: &str) -> Result<MixtureMeasure> {
    if let Some(rest) = name.strip_prefix("triangle-gap-2.11") {
        let x = if rest.is_empty() {
            TRIANGLE_GAP_X
        } else {
            rest.strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse::<f64>().ok())
                .ok_or_else(|| Error::UnknownScene(name.to_string()))?
        };
        return triangle_gap(x);
    }
    match name {
        "cross-2.10" => Ok(cross()),
        "disc-atoms-3.3" => Ok(disc_atoms()),
        "double-triangle-4.1" => Ok(double_triangle()),
        "four-atoms-2.7" => Ok(four_atoms()),
        "uniform-square" => Ok(uniform_square()),
        "uniform-disc" => Ok(uniform_disc()),
        "dirac" => Ok(dirac()),
        _ => Err(Error::UnknownScene(name.to_string())),
    }
}

/// Unit segments from the origin along the four axes, mass 2 on the upper
/// one and 1 on the others.
pub fn cross() -> MixtureMeasure {
    let o = Point::ORIGIN;
    MixtureMeasure::new(vec![
        Component::segment(o, Point::new(-1.0, 0.0), 1.0),
        Component::segment(o, Point::new(1.0, 0.0), 1.0),
        Component::segment(o, Point::new(0.0, -1.0), 1.0),
        Component::segment(o, Point::new(0.0, 1.0), 2.0),
    ])
    .expect("valid cross")
}

pub fn triangle_gap(x: f64) -> Result<MixtureMeasure> {
    Ok(TriangleGapScene::at_root(x)?.measure())
}

/// Unit disc of mass 1/4 with atoms `m = (0,1)` of mass 1/2 and
/// `z = (0,1/2)` of mass 1/4.
pub fn disc_atoms() -> MixtureMeasure {
    MixtureMeasure::new(vec![
        Component::disc(Point::ORIGIN, 1.0, 0.25),
        Component::atom(Point::new(0.0, 1.0), 0.5),
        Component::atom(Point::new(0.0, 0.5), 0.25),
    ])
    .expect("valid disc scene")
}

/// Unit atoms at `a, b, c, d, e, f`.
pub fn double_triangle() -> MixtureMeasure {
    MixtureMeasure::from_atoms(
        &[
            Point::new(3.0, 0.0),
            Point::new(0.0, 5.0),
            Point::new(-5.0, 0.0),
            Point::new(1.0, 3.0),
            Point::new(-1.0, 3.0),
            Point::new(-1.0, 1.0),
        ],
        1.0,
    )
    .expect("valid atoms")
}

pub fn four_atoms() -> MixtureMeasure {
    MixtureMeasure::new(vec![
        Component::atom(Point::new(-1.0, -1.0), 1.0),
        Component::atom(Point::new(-1.0, 1.0), 1.0),
        Component::atom(Point::new(1.0, 1.0), 1.0),
        Component::atom(Point::new(1.0, -1.0), 2.0),
    ])
    .expect("valid atoms")
}

/// Unit square `[0,1]^2` with mass 1.
pub fn uniform_square() -> MixtureMeasure {
    MixtureMeasure::new(vec![Component::polygon(
        ConvexPolygon::rectangle(Point::ORIGIN, Point::new(1.0, 1.0)).expect("square"),
        1.0,
    )])
    .expect("valid square")
}

pub fn uniform_disc() -> MixtureMeasure {
    MixtureMeasure::new(vec![Component::disc(Point::ORIGIN, 1.0, 1.0)]).expect("valid disc")
}

pub fn dirac() -> MixtureMeasure {
    MixtureMeasure::from_atoms(&[Point::ORIGIN], 1.0).expect("valid atom")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_load() {
        for n in SCENE_NAMES {
            assert!(builtin(n).unwrap().total_mass() > 0.0, "{n}");
        }
        assert!(builtin("triangle-gap-2.11(0.15)").is_ok());
        assert!(matches!(builtin("triangle-gap-2.11(0.4)"), Err(Error::RootBracket(_))));
        assert!(matches!(builtin("nope"), Err(Error::UnknownScene(_))));
    }

    #[test]
    fn masses() {
        assert_eq!(cross().total_mass(), 5.0);
        assert_eq!(disc_atoms().total_mass(), 1.0);
        assert_eq!(four_atoms().total_mass(), 5.0);
        assert!((builtin("triangle-gap-2.11").unwrap().total_mass() - 4.513_196_790_023_263).abs() < 1e-12);
    }
}
