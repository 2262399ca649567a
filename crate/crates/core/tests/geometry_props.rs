mod common;

use common::strategies::{halfplane, point, polygon};
use depthlab::geometry2d::{clip_polygon, hausdorff, intersect_halfplanes, HalfPlane, Shape};
use depthlab::Point;
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = Shape> {
    prop_oneof![
        polygon().prop_map(|p| Shape::Polygon { vertices: p }),
        (point(10.0), point(10.0))
            .prop_filter("short", |(a, b)| a.dist(*b) > 1e-3)
            .prop_map(|(a, b)| Shape::Segment { a, b }),
        point(10.0).prop_map(|p| Shape::Point { p }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn clip_and_complement_conserve_area(p in polygon(), h in halfplane()) {
        let a = clip_polygon(&p, &h).area();
        let b = clip_polygon(&p, &h.complement()).area();
        prop_assert!((a + b - p.area()).abs() <= 1e-9 * p.area().max(1.0));
    }
}

proptest! {
    #[test]
    fn intersection_ignores_constraint_order(
        hs in prop::collection::vec((0.0..std::f64::consts::TAU, -5.0..0.5f64), 3..20)
            .prop_map(|v| v.into_iter().map(|(a, c)| HalfPlane::new(Point::from_angle(a), c)).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_flat_map(|v| (Just(v.clone()), Just(v).prop_shuffle()))
    ) {
        let (a, b) = hs;
        let r = a.iter().map(|h| h.offset.abs()).fold(0.5, f64::max);
        let ra = intersect_halfplanes(&a).shape;
        let rb = intersect_halfplanes(&b).shape;
        prop_assert_eq!(ra.is_empty(), rb.is_empty());
        if !ra.is_empty() {
            // box diagonal or output extent, whichever is larger
            let scale = (2.0 * std::f64::consts::SQRT_2 * r).max(ra.diameter());
            prop_assert!(hausdorff(&ra, &rb).unwrap() < 1e-9 * scale);
        }
    }

    #[test]
    fn hausdorff_is_a_metric(a in shape(), b in shape(), c in shape()) {
        let ab = hausdorff(&a, &b).unwrap();
        let ba = hausdorff(&b, &a).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!(hausdorff(&a, &a).unwrap() <= 1e-12);
        let ac = hausdorff(&a, &c).unwrap();
        let bc = hausdorff(&b, &c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-9);
    }
}
