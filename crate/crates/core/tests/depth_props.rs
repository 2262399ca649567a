mod common;

use common::brute_depth;
use common::strategies::{affine, atoms_measure, grid_atoms, measure, point, similarity};
use depthlab::depth::{atomic_depth, depth, depth_open, DepthProfile};
use depthlab::{MixtureMeasure, Point};
use proptest::prelude::*;

proptest! {
    #[test]
    fn open_depth_below_depth(m in measure(true), x in point(6.0)) {
        let d = depth(&m, x);
        let t = m.total_mass();
        prop_assert!(depth_open(&m, x) <= d + 1e-12 * t);
        prop_assert!(d <= t * (1.0 + 1e-12));
    }

    #[test]
    fn depth_is_affine_equivariant(m in measure(false), a in affine(), x in point(6.0)) {
        let am = m.transform(&a).unwrap();
        let t = m.total_mass();
        prop_assert!((depth(&m, x) - depth(&am, a.apply(x))).abs() <= 1e-6 * t);
    }

    #[test]
    fn depth_is_similarity_equivariant_with_discs(m in measure(true), a in similarity(), x in point(6.0)) {
        let am = m.transform(&a).unwrap();
        let t = m.total_mass();
        prop_assert!((depth(&m, x) - depth(&am, a.apply(x))).abs() <= 1e-6 * t);
    }

    #[test]
    fn sweep_matches_brute_force(atoms in grid_atoms(25), qx in -10i32..=10, qy in -10i32..=10) {
        let m = atoms_measure(&atoms);
        let x = Point::new(qx as f64 * 0.5, qy as f64 * 0.5);
        let t = m.total_mass();
        prop_assert!((atomic_depth(&m, x) - brute_depth(&atoms, x)).abs() <= 1e-12 * t);
        // at an atom
        let p = atoms[0].0;
        prop_assert!((atomic_depth(&m, p) - brute_depth(&atoms, p)).abs() <= 1e-12 * t);
    }

    #[test]
    fn profile_antipodal_identity(m in measure(true), x in point(6.0), a in 0.0..std::f64::consts::TAU) {
        let prof = DepthProfile::new(&m, x);
        let t = m.total_mass();
        prop_assert!((prof.closed(a) + prof.open(a + std::f64::consts::PI) - t).abs() <= 1e-9 * t);
    }

    #[test]
    fn depth_ignores_component_order(m in measure(true), x in point(6.0)) {
        let mut c = m.components().to_vec();
        c.reverse();
        let r = MixtureMeasure::new(c).unwrap();
        prop_assert!((depth(&m, x) - depth(&r, x)).abs() <= 1e-9 * m.total_mass());
    }
}
