use proptest::prelude::*;
use semilab::num::cutoff::{
    bump, glue, plateau, poly_smoothstep, psi_cutoff, smooth_step, CutoffProfile, GLUE_FLOOR,
};
use semilab::region::DirectionalSplitting;

#[test]
fn glue_vanishes_identically_below_floor() {
    assert_eq!(glue(0.0f64), 0.0);
    assert_eq!(glue(-3.0f64), 0.0);
    assert_eq!(glue(GLUE_FLOOR * 0.5), 0.0);
    // above the floor it is the genuine exponential
    assert_eq!(glue(1.0f64), (-1.0f64).exp());
    let expected = (-2.0f64).exp();
    assert!((glue(0.5f64) - expected).abs() < 1e-16);
}

#[test]
fn smooth_step_endpoint_and_midpoint_values() {
    assert_eq!(smooth_step(0.0f64), 0.0);
    assert_eq!(smooth_step(1.0f64), 1.0);
    assert!((smooth_step(0.5f64) - 0.5).abs() < 1e-15);
    assert_eq!(smooth_step(-0.2f64), 0.0);
    assert_eq!(smooth_step(1.2f64), 1.0);
}

#[test]
fn plateau_indicator_structure() {
    assert_eq!(plateau(0.3f64, 0.5, 1.0), 1.0);
    assert_eq!(plateau(-0.5f64, 0.5, 1.0), 1.0);
    assert_eq!(plateau(1.0f64, 0.5, 1.0), 0.0);
    assert_eq!(plateau(-7.0f64, 0.5, 1.0), 0.0);
    let mid = plateau(0.75f64, 0.5, 1.0);
    assert!(mid > 0.0 && mid < 1.0);
    assert_eq!(bump(0.4f64), 1.0);
    assert_eq!(psi_cutoff(0.49f64), 1.0);
    assert_eq!(psi_cutoff(1.01f64), 0.0);
}

#[test]
fn polynomial_smoothstep_closed_forms() {
    // order 1: 3t^2 - 2t^3
    assert!((poly_smoothstep(0.25f64, 1) - 0.15625).abs() < 1e-15);
    // order 2: 10t^3 - 15t^4 + 6t^5
    assert!((poly_smoothstep(0.25f64, 2) - 0.103515625).abs() < 1e-15);
    for order in 1..=6 {
        assert_eq!(poly_smoothstep(0.0f64, order), 0.0);
        assert_eq!(poly_smoothstep(1.0f64, order), 1.0);
        assert_eq!(poly_smoothstep(-0.5f64, order), 0.0);
        assert_eq!(poly_smoothstep(1.5f64, order), 1.0);
        assert!((poly_smoothstep(0.5f64, order) - 0.5).abs() < 1e-14);
    }
}

#[test]
fn directional_splitting_partitions_unity() {
    let split = DirectionalSplitting { order: 4 };
    assert_eq!(split.theta_plus(0.5f64), 1.0);
    assert_eq!(split.theta_plus(-0.5f64), 0.0);
    assert!((split.theta_plus(0.0f64) - 0.5).abs() < 1e-14);
    for i in 0..200 {
        let s = -1.0 + i as f64 / 100.0;
        let sum = split.theta_plus(s) + split.theta_minus(s);
        assert!((sum - 1.0).abs() < 1e-15, "s={s}: sum={sum}");
    }
}

#[test]
fn reference_profile_shape() {
    let chi = CutoffProfile::dispersive_reference(8.0);
    // peak 1 at the origin, zero outside the stated support
    assert!((chi.eval(0.0) - 1.0).abs() < 0.02);
    assert_eq!(chi.eval(8.5), 0.0);
    assert_eq!(chi.eval(-9.0), 0.0);
    // even profile
    for &xi in &[0.4, 1.3, 2.9, 5.5, 7.2] {
        assert!((chi.eval(xi) - chi.eval(-xi)).abs() < 1e-12);
    }
    // nonnegative, bounded by the peak
    let mut above = 0usize;
    for i in 0..=1600 {
        let xi = -8.0 + i as f64 / 100.0;
        let v = chi.eval(xi);
        assert!(v > -1e-12, "negative lobe at {xi}: {v}");
        if v > 0.5 {
            above += 1;
        }
    }
    // mass concentrated well inside the support
    assert!(above > 200 && above < 1200);
}

proptest! {
    #[test]
    fn plateau_stays_in_unit_interval(u in -3.0f64..3.0) {
        let v = plateau(u, 0.5, 1.0);
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn smooth_step_monotone(a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(smooth_step(lo) <= smooth_step(hi) + 1e-15);
    }

    #[test]
    fn splitting_complement_everywhere(s in -2.0f64..2.0) {
        let split = DirectionalSplitting { order: 3 };
        prop_assert!((split.theta_plus(s) + split.theta_minus(s) - 1.0).abs() < 1e-14);
    }
}
