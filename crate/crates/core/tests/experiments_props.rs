use depthlab::depth::depth;
use depthlab::experiments::{
    consistency_experiment, strict_monotonicity_check, triangle_gap_f, triangle_gap_root, TriangleGapScene,
};
use depthlab::regions::{alpha_star, Method};
use depthlab::scenes;
use depthlab::Point;
use proptest::prelude::*;

#[test]
fn square_regions_move_continuously() {
    let m = scenes::uniform_square();
    let alphas = [0.1, 0.2, 0.3, 0.4];
    let r = strict_monotonicity_check(&m, &alphas, Method::Directional { k: 360 }).unwrap();
    let diam = m.scale();
    for e in &r.entries {
        assert!(e.gap.unwrap() < 1e-2 * diam, "{e:?}");
    }
    assert!(r.strictly_monotone);
}

#[test]
fn disc_atoms_jump_at_one_eighth() {
    let m = scenes::disc_atoms();
    let r = strict_monotonicity_check(&m, &[0.1, 0.125, 0.2], Method::Directional { k: 1440 }).unwrap();
    let e = r.entries.iter().find(|e| e.alpha == 0.125).unwrap();
    assert!(e.flagged, "{e:?}");
    assert!((e.gap.unwrap() - 0.5).abs() < 2e-2);
    assert!(!r.strictly_monotone);
}

#[test]
fn non_smooth_scene_warns() {
    let m = scenes::disc_atoms();
    let t = consistency_experiment(&m, &[0.1], &[20], 1, 3).unwrap();
    assert!(!t.warnings.is_empty());
    let sq = scenes::uniform_square();
    let t = consistency_experiment(&sq, &[0.2], &[20], 1, 3).unwrap();
    assert!(t.warnings.is_empty());
}

#[test]
fn probe_points_below_y_c_are_medians() {
    let s = TriangleGapScene::at_root(0.2).unwrap();
    let m = s.measure();
    let astar = alpha_star(&m, Method::auto(&m)).unwrap().value;
    // tau strictly between y_c and z_c = (0, -y + 1e-2)
    let (lo, hi) = (-s.y, s.z_c(1e-2).y);
    // w must avoid the minimizing halfplanes of y_c at +-theta_min
    let cuts = [
        TriangleGapScene::cut(s.y_c(), s.theta_min(), true),
        TriangleGapScene::cut(s.y_c(), -s.theta_min(), true),
    ];
    let mut tested = 0;
    for i in 1..20 {
        let tau = lo + (hi - lo) * i as f64 / 20.0;
        let w = Point::new(-1e-3, tau);
        if cuts.iter().any(|h| h.value(w) > 0.0) {
            continue;
        }
        tested += 1;
        assert!(depth(&m, w) >= astar - 1e-6, "w = {w:?}");
    }
    assert!(tested >= 15, "{tested}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_solves_the_equation(x in 0.01..0.249f64) {
        let y = triangle_gap_root(x).unwrap();
        prop_assert!(triangle_gap_f(x, y).abs() < 1e-12);
        let s = TriangleGapScene::new(x, y).unwrap();
        prop_assert!((s.min_area() - s.area_case_i(s.theta_min())).abs() < 1e-12);
    }
}
