use proptest::prelude::*;
use stabletree::tails::*;
use stabletree::StableIndex;

#[test]
fn small_ball_ratio_near_leading_order() {
    let b = StableIndex::brownian();
    for y in [0.05, 0.08] {
        let p = brownian_mstar_cdf_small(y, 1e-12).unwrap().value;
        let r = p / small_ball_asymptotic(b, y, SmallBallLaw::MStar).unwrap();
        assert!((0.9..=1.1).contains(&r), "y={y}: {r}");
    }
}

#[test]
fn tail_and_small_cdf_are_complementary() {
    for i in 0..=90 {
        let y = 0.1 + 0.01 * i as f64;
        let t = brownian_mstar_tail(y, 1e-14).unwrap().value;
        let c = brownian_mstar_cdf_small(y, 1e-14).unwrap().value;
        assert!((t + c - 1.0).abs() < 1e-10, "y={y}");
    }
}

#[test]
fn normalization() {
    assert!((brownian_mstar_tail(1e-3, 1e-12).unwrap().value - 1.0).abs() < 1e-6);
    assert!((brownian_ball_tail(0.0, 1e-3, 1e-14).unwrap().value - 1.0).abs() < 1e-9);
}

#[test]
fn coefficient_bound_over_gammas() {
    for g in [1.1, 1.3, 1.5, 1.7, 1.9, 2.0] {
        let t = expansion_coeffs(StableIndex::new(g).unwrap(), 200).unwrap();
        assert!(t.abs_c_sum() <= t.c_gamma.exp() * (1.0 + 1e-12), "γ={g}");
        assert!(t.a.iter().all(|&a| a > 0.0 && a < 1.0));
    }
}

#[test]
fn fixed_point_grid() {
    for g in [1.3, 1.5, 1.8, 2.0] {
        let table = expansion_coeffs(StableIndex::new(g).unwrap(), 200).unwrap();
        for l in [1.0, 2.0, 5.0, 20.0] {
            let r = fixed_point_residual_with(&table, l).unwrap();
            assert!(r <= 1e-6, "γ={g} λ={l}: {r}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn brownian_laws_are_probabilities_and_ordered(y in 0.01f64..6.0, dy in 0.001f64..1.0, c in 0.0f64..3.0) {
        let t0 = brownian_mstar_tail(y, 1e-13).unwrap().value;
        let t1 = brownian_mstar_tail(y + dy, 1e-13).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&t0) && t1 <= t0 + 1e-15);
        let b0 = brownian_ball_tail(c, y, 1e-13).unwrap().value;
        let b1 = brownian_ball_tail(c, y + dy, 1e-13).unwrap().value;
        prop_assert!((0.0..=1.0).contains(&b0) && b1 <= b0 + 1e-15);
        let f0 = brownian_ball_cdf(c, y, 1e-13).unwrap().value;
        prop_assert!((f0 + b0 - 1.0).abs() < 1e-12);
        let m0 = brownian_mstar_cdf(y, 1e-13).unwrap();
        let m1 = brownian_mstar_cdf(y + dy, 1e-13).unwrap();
        prop_assert!((0.0..=1.0).contains(&m0) && m1 >= m0 - 1e-15);
    }

    #[test]
    fn larger_balls_hold_more_mass(y in 0.05f64..4.0, c in 0.0f64..2.0, dc in 0.01f64..1.0) {
        let small = brownian_ball_tail(c, y, 1e-13).unwrap().value;
        let big = brownian_ball_tail(c + dc, y, 1e-13).unwrap().value;
        prop_assert!(big >= small - 1e-13);
    }
}
