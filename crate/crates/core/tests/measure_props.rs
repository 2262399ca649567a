mod common;

use common::strategies::{affine, halfplane, measure, similarity};
use depthlab::geometry2d::HalfPlane;
use depthlab::{Component, Point};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn closed_plus_open_complement_is_total(m in measure(true), h in halfplane()) {
        let t = m.total_mass();
        let sum = m.mass_closed(&h) + m.mass_open(&h.complement());
        prop_assert!((sum - t).abs() <= 1e-9 * t);
        prop_assert!(m.mass_open(&h) <= m.mass_closed(&h) + 1e-12 * t);
        prop_assert!(m.mass_closed(&h) <= t * (1.0 + 1e-12));
    }
}

proptest! {
    #[test]
    fn mass_decreases_with_offset(m in measure(true), a in 0.0..std::f64::consts::TAU) {
        let u = Point::from_angle(a);
        let mut prev = f64::INFINITY;
        for i in 0..100 {
            let c = -12.0 + 24.0 * i as f64 / 99.0;
            let v = m.mass_closed(&HalfPlane::new(u, c));
            prop_assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn mass_is_affine_equivariant(m in measure(false), a in affine(), h in halfplane()) {
        let am = m.transform(&a).unwrap();
        let ah = a.apply_halfplane(&h).unwrap();
        let t = m.total_mass();
        prop_assert!((m.mass_closed(&h) - am.mass_closed(&ah)).abs() <= 1e-9 * t);
    }

    #[test]
    fn mass_is_similarity_equivariant_with_discs(m in measure(true), a in similarity(), h in halfplane()) {
        let am = m.transform(&a).unwrap();
        let ah = a.apply_halfplane(&h).unwrap();
        let t = m.total_mass();
        prop_assert!((m.mass_closed(&h) - am.mass_closed(&ah)).abs() <= 1e-9 * t);
    }

    #[test]
    fn area_components_carry_no_boundary_mass(m in measure(true), h in halfplane()) {
        let smooth: Vec<Component> = m
            .components()
            .iter()
            .filter(|c| matches!(c, Component::Polygon { .. } | Component::Disc { .. }))
            .cloned()
            .collect();
        prop_assume!(!smooth.is_empty());
        let s = depthlab::MixtureMeasure::new(smooth).unwrap();
        prop_assert_eq!(s.mass_boundary(&h), 0.0);
    }
}
