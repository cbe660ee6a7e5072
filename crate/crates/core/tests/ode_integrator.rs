use semilab::num::ode::dopri5;

#[test]
fn exponential_growth_to_machine_scale() {
    let t_out = [0.0, 0.5, 1.0, 2.0];
    let (ys, stats) = dopri5(|_t, y, dy| dy[0] = y[0], 0.0, &[1.0], &t_out, 1e-10).unwrap();
    for (i, &t) in t_out.iter().enumerate() {
        let rel = (ys[i][0] - t.exp()).abs() / t.exp();
        assert!(rel < 1e-9, "t={t}: rel={rel}");
    }
    assert!(stats.accepted > 0);
}

#[test]
fn harmonic_oscillator_phase_accuracy() {
    let rhs = |_t: f64, y: &[f64], dy: &mut [f64]| {
        dy[0] = y[1];
        dy[1] = -y[0];
    };
    let pi = std::f64::consts::PI;
    let t_out = [0.0, pi / 2.0, pi, 2.0 * pi];
    let (ys, _) = dopri5(rhs, 0.0, &[1.0, 0.0], &t_out, 1e-11).unwrap();
    assert!((ys[1][0]).abs() < 1e-9);
    assert!((ys[1][1] + 1.0).abs() < 1e-9);
    assert!((ys[2][0] + 1.0).abs() < 1e-9);
    assert!((ys[3][0] - 1.0).abs() < 1e-8);
}

#[test]
fn integrates_backward_in_time() {
    let t_out = [0.0, -1.0];
    let (ys, _) = dopri5(|_t, y, dy| dy[0] = y[0], 0.0, &[1.0], &t_out, 1e-10).unwrap();
    assert!((ys[1][0] - (-1.0f64).exp()).abs() < 1e-10);
}

#[test]
fn sample_instants_hit_exactly() {
    // stiff-ish but smooth; checks the clamp-to-sample logic by using
    // irregular output instants
    let t_out = [0.0, 0.013, 0.5, 0.500001, 1.7];
    let (ys, _) = dopri5(|t, _y, dy| dy[0] = (5.0 * t).cos(), 0.0, &[0.0], &t_out, 1e-10).unwrap();
    for (i, &t) in t_out.iter().enumerate() {
        let exact = (5.0 * t).sin() / 5.0;
        assert!((ys[i][0] - exact).abs() < 1e-10, "t={t}");
    }
    assert_eq!(ys.len(), t_out.len());
}

#[test]
fn repeated_leading_time_is_initial_state() {
    let t_out = [0.0, 0.0, 1.0];
    let (ys, _) = dopri5(|_t, y, dy| dy[0] = y[0], 0.0, &[2.0], &t_out, 1e-9).unwrap();
    assert_eq!(ys[0][0], 2.0);
    assert_eq!(ys[1][0], 2.0);
}

#[test]
fn rejects_nonfinite_rhs() {
    let t_out = [0.0, 1.0];
    let res = dopri5(|_t, y, dy| dy[0] = 1.0 / (y[0] - y[0]), 0.0, &[1.0], &t_out, 1e-9);
    assert!(res.is_err());
}
