use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semilab::grid::{forward_dft, inverse_dft, Grid, GridState};
use semilab::lp::{
    build_dyadic_partitions, build_psi_epsilon, lp_apply, lp_decompose, square_function_ratio,
    DyadicLP, FourAdicPartition,
};

#[test]
fn four_adic_partition_identity() {
    let fp = FourAdicPartition;
    // log-spaced sweep across six decades
    for i in 0..=600 {
        let lambda = 10f64.powf(i as f64 / 100.0);
        let defect = fp.identity_defect(lambda);
        assert!(defect < 1e-12, "λ={lambda}: defect={defect}");
    }
    // bottom of the scale handled by f₀ alone
    assert_eq!(fp.f0(0.1), 1.0);
    assert_eq!(fp.f0(-3.0), 1.0);
    assert_eq!(fp.f0(2.0), 0.0);
}

#[test]
fn four_adic_supports() {
    let fp = FourAdicPartition;
    assert_eq!(fp.f(0.25), 0.0);
    assert_eq!(fp.f(4.0), 0.0);
    assert_eq!(fp.f(0.2), 0.0);
    assert!(fp.f(1.0) > 0.0);
    // plateau region where only one translate is active
    assert_eq!(fp.f(1.0), 1.0);
    assert!(fp.f(3.0) > 0.0 && fp.f(3.0) < 1.0);
}

#[test]
fn companion_is_one_on_band_support() {
    let fp = FourAdicPartition;
    for i in 0..=300 {
        let lambda = 0.1 * 1.02f64.powi(i);
        let f = fp.f(lambda);
        let cap = fp.big_f(lambda);
        assert!((cap * f - f).abs() < 1e-15, "λ={lambda}");
    }
    assert_eq!(fp.big_f(0.1), 0.0);
    assert_eq!(fp.big_f(9.0), 0.0);
    assert_eq!(fp.big_f(0.25), 1.0);
    assert_eq!(fp.big_f(4.0), 1.0);
}

#[test]
fn dyadic_bank_partitions_unity_exactly() {
    let (_, lp) = build_dyadic_partitions(6);
    // identity holds out to 2^{j_max - 1} = 32
    for i in 0..=640 {
        let r = 0.05 * i as f64;
        if r > 32.0 {
            break;
        }
        let sum = lp.partition_sum(&[r]);
        assert!((sum - 1.0).abs() < 1e-12, "r={r}: sum={sum}");
    }
}

#[test]
fn band_supports_are_dyadic_annuli() {
    let lp = DyadicLP::new(8);
    // S₀ lives in {|ξ| < 1}
    assert!(lp.filter(0, &[0.4]) == 1.0);
    assert_eq!(lp.filter(0, &[1.0]), 0.0);
    // S_j lives in {2^{j-2} < |ξ| < 2^j}
    assert_eq!(lp.filter(2, &[0.9]), 0.0);
    assert!(lp.filter(2, &[2.0]) > 0.0);
    assert_eq!(lp.filter(2, &[4.0]), 0.0);
    assert_eq!(lp.filter(5, &[7.9]), 0.0);
    assert!(lp.filter(5, &[16.0]) > 0.0);
}

#[test]
fn band_filters_take_values_in_unit_interval() {
    let lp = DyadicLP::new(7);
    for j in 0..=7 {
        for i in 0..400 {
            let r = 0.2 * i as f64;
            let v = lp.filter(j, &[r]);
            assert!((-1e-15..=1.0 + 1e-15).contains(&v), "j={j} r={r} v={v}");
        }
    }
}

fn band_limited_state(grid: &Grid, seed: u64) -> GridState {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut st = GridState::zeros(grid.clone());
    for z in &mut st.data {
        *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    let mut hat = forward_dft(&st);
    let cut = (grid.n / 4) as f64 * grid.deta();
    for (k, z) in hat.data.iter_mut().enumerate() {
        if hat.grid.freq(k).iter().any(|v| v.abs() > cut) {
            *z = Complex64::new(0.0, 0.0);
        }
    }
    inverse_dft(&hat)
}

#[test]
fn bands_reconstruct_the_state() {
    let grid = Grid::new(1, 10.0, 256).unwrap();
    let u = band_limited_state(&grid, 5);
    let lp = DyadicLP::for_grid(&grid);
    let bands = lp_decompose(&lp, &u).unwrap();
    let mut sum = GridState::zeros(grid);
    for b in &bands {
        sum.axpy(Complex64::new(1.0, 0.0), b);
    }
    let err: f64 = sum
        .data
        .iter()
        .zip(&u.data)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    assert!(err < 1e-12, "reconstruction error {err}");
}

#[test]
fn band_energy_ratio_within_overlap_bounds() {
    let grid = Grid::new(1, 10.0, 256).unwrap();
    let u = band_limited_state(&grid, 6);
    let lp = DyadicLP::for_grid(&grid);
    let ratio = square_function_ratio(&lp, &u).unwrap();
    assert!((1.0 / 3.0..=3.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn isolated_frequency_touches_two_bands_at_most() {
    let grid = Grid::new(1, 10.0, 256).unwrap();
    // pure mode at |η| ≈ 3.1: inside (2,4) core of one band, overlap one
    let eta = {
        let k = (3.1 / grid.deta()).round() as usize;
        grid.eta_at(k)
    };
    let u = GridState::from_fn(grid.clone(), |x| Complex64::from_polar(1.0, eta * x[0]));
    let lp = DyadicLP::for_grid(&grid);
    let mut active = 0;
    for j in 0..=lp.j_max {
        let out = lp_apply(&lp, j, &u).unwrap();
        if out.norm_l2() > 1e-10 {
            active += 1;
        }
    }
    assert!(active >= 1 && active <= 2, "active bands: {active}");
}

#[test]
fn band_beyond_dual_grid_is_rejected() {
    let grid = Grid::new(1, 4.0, 32).unwrap(); // η_max ≈ 12.6
    let lp = DyadicLP::new(12);
    let u = GridState::from_fn(grid, |_| Complex64::new(1.0, 0.0));
    assert!(lp_apply(&lp, 12, &u).is_err());
}

#[test]
fn phase_space_cutoff_zones() {
    let psi = build_psi_epsilon(0.5).unwrap();
    // deep inside: ⟨x⟩ < ε|ξ|/2
    assert_eq!(psi.psi(&[0.0], &[8.0]), 1.0);
    // outside: ⟨x⟩ ≥ ε|ξ|
    assert_eq!(psi.psi(&[0.0], &[2.0]), 0.0);
    assert_eq!(psi.psi(&[3.0], &[1.0]), 0.0);
    // transition zone strictly between
    let mid = psi.psi(&[0.0], &[3.0]);
    assert!(mid > 0.0 && mid < 1.0);
    // ξ = 0 convention
    assert_eq!(psi.psi(&[0.5], &[0.0]), 0.0);
    assert!(build_psi_epsilon(-1.0).is_err());
}

proptest! {
    #[test]
    fn cutoff_complement_everywhere(x in -5.0f64..5.0, xi in -10.0f64..10.0) {
        let psi = build_psi_epsilon(0.3).unwrap();
        let s = psi.psi(&[x], &[xi]) + psi.chi(&[x], &[xi]);
        prop_assert!((s - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partition_sum_never_exceeds_one(r in 0.0f64..200.0) {
        let lp = DyadicLP::new(9);
        let sum = lp.partition_sum(&[r]);
        prop_assert!(sum <= 1.0 + 1e-12);
        prop_assert!(sum >= -1e-12);
    }
}
