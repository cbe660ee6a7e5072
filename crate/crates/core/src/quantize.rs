//! Left quantization Op(a)u(x) = (2π)^{-d} Σ_k a(x, sη_k) û(η_k) e^{ixη_k} Δη^d
//! by direct O(n²) summation, its exact discrete adjoint, and operator
//! norm estimation by power iteration on D*D.
//!
//! The inner frequency sum is shared with the oscillatory-integral
//! applicator so that a phase table holding exactly x·η at t = 0
//! reproduces Op(a) bit for bit.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Result, SemiError};
use crate::grid::{forward_dft, Grid, GridState};

/// Relative |û|² mass in the outer 10% frequency shell above which the
/// grid cannot represent the state (aliasing will dominate).
pub const FREQ_TAIL_ERR: f64 = 1e-4;
/// Mass above which results should be treated as degraded.
pub const FREQ_TAIL_WARN: f64 = 1e-8;

/// Check the frequency tail of `u`; `Ok(Some(mass))` flags warn-level mass.
pub fn tail_check(u: &GridState) -> Result<Option<f64>> {
    let mass = u.frequency_tail_mass(0.1);
    if mass > FREQ_TAIL_ERR {
        return Err(SemiError::FrequencyTail { mass, limit: FREQ_TAIL_ERR });
    }
    Ok((mass > FREQ_TAIL_WARN).then_some(mass))
}

/// Σ_k a_k w_k e^{iφ_k} over one output row, skipping terms with a_k = 0
/// exactly. Both the pseudodifferential and the oscillatory applicator
/// route through this sum, in the same index order.
pub(crate) fn kn_row(amps: &[Complex64], phases: &[f64], weights: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((a, ph), w) in amps.iter().zip(phases).zip(weights) {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        acc += a * w * Complex64::from_polar(1.0, *ph);
    }
    acc
}

/// (2π)^{-d} Δη^d prefactor shared by both applicators.
pub(crate) fn kn_normalization(grid: &Grid) -> f64 {
    (grid.deta() / (2.0 * std::f64::consts::PI)).powi(grid.dim as i32)
}

/// Apply Op(a) with symbol sampled at (x, scale·η); `scale = h` gives the
/// semiclassical quantization Op_h, `scale = 1` the unscaled one.
pub fn apply_pdo(
    symbol: &(dyn Fn(&[f64], &[f64]) -> Complex64 + Sync),
    u: &GridState,
    scale: f64,
) -> Result<GridState> {
    tail_check(u)?;
    let g = &u.grid;
    let uhat = forward_dft(u);
    let m = g.len();
    let norm = kn_normalization(g);
    let freqs: Vec<Vec<f64>> = (0..m).map(|k| g.freq(k)).collect();
    let data: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|j| {
            let x = g.point(j);
            let mut amps = vec![Complex64::new(0.0, 0.0); m];
            let mut phases = vec![0.0f64; m];
            for k in 0..m {
                let eta = &freqs[k];
                let scaled: Vec<f64> = eta.iter().map(|v| v * scale).collect();
                amps[k] = symbol(&x, &scaled);
                phases[k] = x.iter().zip(eta).map(|(a, b)| a * b).sum();
            }
            kn_row(&amps, &phases, &uhat.data) * norm
        })
        .collect();
    Ok(GridState { grid: g.clone(), data })
}

/// Apply the exact discrete adjoint Op(a)*: right quantization
/// w_k = Σ_x conj(a(x, sη_k)) u(x) e^{-ixη_k} Δx^d, then the inverse
/// phase sum.
pub fn apply_pdo_adjoint(
    symbol: &(dyn Fn(&[f64], &[f64]) -> Complex64 + Sync),
    u: &GridState,
    scale: f64,
) -> Result<GridState> {
    tail_check(u)?;
    let g = &u.grid;
    let m = g.len();
    let dxd = g.dx().powi(g.dim as i32);
    let points: Vec<Vec<f64>> = (0..m).map(|j| g.point(j)).collect();
    let w: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|k| {
            let eta = g.freq(k);
            let scaled: Vec<f64> = eta.iter().map(|v| v * scale).collect();
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, x) in points.iter().enumerate() {
                let a = symbol(x, &scaled);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let ph: f64 = x.iter().zip(&eta).map(|(p, q)| p * q).sum();
                acc += a.conj() * u.data[j] * Complex64::from_polar(1.0, -ph);
            }
            acc * dxd
        })
        .collect();
    let norm = kn_normalization(g);
    let data: Vec<Complex64> = (0..m)
        .into_par_iter()
        .map(|j| {
            let x = &points[j];
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, wk) in w.iter().enumerate() {
                let ph: f64 = x.iter().zip(&g.freq(k)).map(|(p, q)| p * q).sum();
                acc += wk * Complex64::from_polar(1.0, ph);
            }
            acc * norm
        })
        .collect();
    Ok(GridState { grid: g.clone(), data })
}

/// Fourier multiplier m(η) applied in frequency space; exact for symbols
/// independent of x.
pub fn apply_multiplier(
    m: &(dyn Fn(&[f64]) -> Complex64 + Sync),
    u: &GridState,
) -> GridState {
    let mut hat = forward_dft(u);
    for (k, z) in hat.data.iter_mut().enumerate() {
        *z *= m(&hat.grid.freq(k));
    }
    crate::grid::inverse_dft(&hat)
}

pub struct OpNormEstimate {
    pub value: f64,
    /// Relative spread of restart estimates, (max-min)/max.
    pub spread: f64,
    pub iters: usize,
}

/// ‖D‖ via power iteration on D*D from `restarts` seeded random starts.
pub fn operator_norm<F, G>(
    grid: &Grid,
    apply: F,
    adjoint: G,
    iters: usize,
    restarts: usize,
    seed: u64,
) -> Result<OpNormEstimate>
where
    F: Fn(&GridState) -> Result<GridState>,
    G: Fn(&GridState) -> Result<GridState>,
{
    let mut best = 0.0f64;
    let mut worst = f64::INFINITY;
    for r in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(r as u64));
        let mut v = GridState::zeros(grid.clone());
        for z in &mut v.data {
            *z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        }
        let nrm = v.norm_l2();
        v.scale(Complex64::new(1.0 / nrm, 0.0));
        let mut est = 0.0;
        for _ in 0..iters {
            let dv = apply(&v)?;
            let w = adjoint(&dv)?;
            let wn = w.norm_l2();
            if !wn.is_finite() {
                return Err(SemiError::NonFinite {
                    context: "power iteration",
                    point: vec![wn],
                });
            }
            est = dv.norm_l2();
            if wn == 0.0 {
                break;
            }
            v = w;
            let n2 = v.norm_l2();
            v.scale(Complex64::new(1.0 / n2, 0.0));
        }
        best = best.max(est);
        worst = worst.min(est);
    }
    let spread = if best > 0.0 { (best - worst) / best } else { 0.0 };
    if spread > 0.75 {
        return Err(SemiError::PowerIterationUnsettled { spread });
    }
    Ok(OpNormEstimate { value: best, spread, iters })
}
