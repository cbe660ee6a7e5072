use semilab::assumptions::{check_assumption_a, check_assumption_b, CatalogWeight};
use semilab::model::{
    eval_semiclassical_symbols, eval_subprincipal_p1, eval_symbol_p, ModelKind, SymbolModel,
    TruncationParams,
};

fn jb(x: f64) -> f64 {
    (1.0 + x * x).sqrt()
}

#[test]
fn flat_and_harmonic_symbol_values() {
    let flat = SymbolModel::flat_free(1);
    let (p, _, _) = eval_symbol_p(&flat, &[3.0], &[2.0]).unwrap();
    assert_eq!(p, 2.0);

    let h = SymbolModel::new(1, ModelKind::Harmonic { omega: 2.0 }).unwrap();
    let (p, gx, gxi) = eval_symbol_p(&h, &[1.5], &[0.5]).unwrap();
    // p = ξ²/2 + ω²x²/2
    assert!((p - (0.125 + 2.0 * 2.25)).abs() < 1e-14);
    assert!((gx[0] - 4.0 * 1.5).abs() < 1e-13);
    assert!((gxi[0] - 0.5).abs() < 1e-13);
}

#[test]
fn magnetic_symbol_and_subprincipal_part() {
    let omega = 0.8;
    let mu = 0.5;
    let m = SymbolModel::new(1, ModelKind::LinearMagnetic { omega, mu }).unwrap();
    let (x, xi) = (1.1, 0.9);
    let a = omega * x * jb(x).powf(-mu);
    let (p, _, _) = eval_symbol_p(&m, &[x], &[xi]).unwrap();
    assert!((p - 0.5 * (xi - a) * (xi - a)).abs() < 1e-14);

    // flat metric: Im p₁ = (1/2) A'(x)
    let a_prime = omega * (jb(x).powf(-mu) - mu * x * x * jb(x).powf(-mu - 2.0));
    let p1 = eval_subprincipal_p1(&m, &[x], &[xi]).unwrap();
    assert!((p1 - 0.5 * a_prime).abs() < 1e-13, "p1={p1} expect={}", 0.5 * a_prime);
}

#[test]
fn conformal_metric_subprincipal_part() {
    let b = 0.3;
    let m = SymbolModel::new(1, ModelKind::ConformalBump { b }).unwrap();
    let (x, xi) = (0.7, 1.3);
    // g = 1 + b e^{-x²}, Im p₁ = -(1/2) g'(x) ξ
    let gp = -2.0 * x * b * (-x * x).exp();
    let p1 = eval_subprincipal_p1(&m, &[x], &[xi]).unwrap();
    assert!((p1 + 0.5 * gp * xi).abs() < 1e-13);
}

#[test]
fn two_dimensional_magnetic_symbol() {
    let omega = 0.6;
    let mu = 1.0;
    let m = SymbolModel::new(2, ModelKind::LinearMagnetic { omega, mu }).unwrap();
    let x = [1.0, -0.5];
    let xi = [0.3, 0.8];
    let r = (1.0 + 1.25f64).sqrt();
    // A = ω(-x₂, x₁)⟨x⟩^{-μ}
    let a = [omega * 0.5 / r, omega * 1.0 / r];
    let expected = 0.5 * ((xi[0] - a[0]).powi(2) + (xi[1] - a[1]).powi(2));
    let (p, _, _) = eval_symbol_p(&m, &x, &xi).unwrap();
    assert!((p - expected).abs() < 1e-14);
}

#[test]
fn truncated_symbol_interpolates_between_full_and_kinetic() {
    let m = SymbolModel::new(1, ModelKind::SubquadraticPower { mu: 0.5 }).unwrap();
    let params = TruncationParams::new(0.25, 2.0).unwrap();
    let xi = 1.3;

    // |x| ≤ L/(2h) = 4: truncation invisible
    let (ph, _, pt) = eval_semiclassical_symbols(&m, &params, &[2.0], &[xi]).unwrap();
    assert_eq!(ph, pt);
    assert!((ph - (0.5 * xi * xi + 0.0625 * jb(2.0).powf(1.5))).abs() < 1e-14);

    // |x| ≥ L/h = 8: pure kinetic energy
    let (_, _, pt_out) = eval_semiclassical_symbols(&m, &params, &[10.0], &[xi]).unwrap();
    assert_eq!(pt_out, 0.5 * xi * xi);

    // in between: strictly intermediate
    let (ph_mid, _, pt_mid) = eval_semiclassical_symbols(&m, &params, &[6.0], &[xi]).unwrap();
    assert!(pt_mid < ph_mid && pt_mid > 0.5 * xi * xi);
}

#[test]
fn truncation_parameters_validated() {
    assert!(TruncationParams::new(0.0, 2.0).is_err());
    assert!(TruncationParams::new(0.25, -1.0).is_err());
    assert!(TruncationParams::new(0.25, 2.0).is_ok());
}

#[test]
fn oscillating_weight_matches_quadrature_oracle() {
    let (a1, a2) = (0.5, 1.0);
    let kind = ModelKind::LogOscillating { a1, a2 };
    let x = 1.5f64;
    let u = jb(x);
    // Simpson oracle for I(u) = ∫₀ᵘ dt / (1 + a1 sin(a2 log⟨t⟩))
    let n = 20_000usize;
    let h = u / n as f64;
    let f = |t: f64| 1.0 / (1.0 + a1 * (a2 * (1.0 + t * t).sqrt().ln()).sin());
    let mut s = f(0.0) + f(u);
    for i in 1..n {
        s += f(i as f64 * h) * if i % 2 == 0 { 2.0 } else { 4.0 };
    }
    let integral = s * h / 3.0;
    let expected = integral * integral;

    let w: f64 = kind.weight_f(&[x]);
    let rel = (w - expected).abs() / expected;
    assert!(rel < 1e-9, "weight={w} oracle={expected} rel={rel}");
}

#[test]
fn decay_fit_accepts_catalog_and_rejects_quartic() {
    let flat = SymbolModel::flat_free(1);
    let rep = check_assumption_a(&flat, 2, 6.0, 120).unwrap();
    assert!(rep.pass);
    for row in &rep.rows {
        assert_eq!(row.fitted_c, 0.0, "flat row {} nonzero", row.family);
    }

    let h = SymbolModel::new(1, ModelKind::Harmonic { omega: 1.0 }).unwrap();
    assert!(check_assumption_a(&h, 2, 6.0, 120).unwrap().pass);

    let sq = SymbolModel::new(1, ModelKind::SubquadraticPower { mu: 0.5 }).unwrap();
    assert!(check_assumption_a(&sq, 3, 6.0, 120).unwrap().pass);

    // super-quadratic growth cannot saturate: the fit must reject it
    let q = SymbolModel::new(1, ModelKind::Quartic).unwrap();
    let rep = check_assumption_a(&q, 2, 6.0, 120).unwrap();
    assert!(!rep.pass, "quartic decay fit unexpectedly stable");
}

#[test]
fn convexity_constant_for_flat_metric_is_four() {
    let flat = SymbolModel::flat_free(1);
    let weight = CatalogWeight(&ModelKind::FlatFree);
    let samples: Vec<(Vec<f64>, Vec<f64>)> = (0..40)
        .map(|i| {
            let x = 1.0 + 0.15 * i as f64;
            let xi = 0.5 + 0.05 * i as f64;
            (vec![x], vec![xi])
        })
        .collect();
    let rep = check_assumption_b(&flat, &weight, 2.0, &samples).unwrap();
    assert!(rep.pass);
    assert!((rep.fitted_c - 4.0).abs() < 1e-10, "c = {}", rep.fitted_c);
}

#[test]
fn convexity_fails_on_ring_barrier_metric() {
    let kind = ModelKind::ConformalRing { amp: 5.0, r0: 3.0, width: 4.0 };
    let m = SymbolModel::new(2, kind.clone()).unwrap();
    let weight = CatalogWeight(&kind);
    // tangential directions just inside the ring
    let mut samples = Vec::new();
    for i in 0..30 {
        let r = 2.0 + 0.03 * i as f64;
        let ang = 0.21 * i as f64;
        let x = vec![r * ang.cos(), r * ang.sin()];
        let xi = vec![-ang.sin(), ang.cos()];
        samples.push((x, xi));
    }
    let rep = check_assumption_b(&m, &weight, 2.0, &samples).unwrap();
    assert!(!rep.pass, "ring metric fitted c = {}", rep.fitted_c);
    assert!(rep.fitted_c < 0.0);
}

#[test]
fn model_dimension_validation() {
    assert!(SymbolModel::new(3, ModelKind::FlatFree).is_err());
    assert!(SymbolModel::new(0, ModelKind::FlatFree).is_err());
    assert!(SymbolModel::new(2, ModelKind::FlatFree).is_ok());
}
