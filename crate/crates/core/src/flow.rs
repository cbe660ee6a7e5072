//! Hamilton flow integration: trajectories, variational (Jacobian)
//! systems, the position-map inverse Y(t,x,ξ), and nontrapping scans of
//! the kinetic flow.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SemiError};
use crate::model::{SymbolChoice, SymbolField, SymbolModel, TruncationParams};
use crate::num::dual::{partial1, partial2, ScalarField};
use crate::num::ode::dopri5;

/// Samples of a Hamilton trajectory, optionally with the 2d×2d Jacobian
/// ∂(X,Ξ)/∂(y,ξ) and the accumulated action ∫(Ξ·∂_ξp - p) ds.
#[derive(Clone, Debug)]
pub struct FlowResult {
    pub dim: usize,
    pub times: Vec<f64>,
    /// Position samples, row-major [sample][component].
    pub x: Vec<Vec<f64>>,
    /// Momentum samples.
    pub xi: Vec<Vec<f64>>,
    /// Flattened 2d×2d Jacobian per sample (row-major), when requested.
    pub jac: Option<Vec<Vec<f64>>>,
    /// Action integral per sample, when requested.
    pub action: Option<Vec<f64>>,
    pub energy_drift: f64,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl FlowResult {
    pub fn jac_at(&self, sample: usize) -> Option<&[f64]> {
        self.jac.as_ref().map(|j| j[sample].as_slice())
    }
}

/// Hamiltonian right-hand side with exact symbol derivatives.
pub(crate) struct HamiltonSystem<'a> {
    pub field: SymbolField<'a>,
    pub dim: usize,
    pub with_jac: bool,
    pub with_action: bool,
}

impl HamiltonSystem<'_> {
    pub fn state_len(&self) -> usize {
        let d = self.dim;
        2 * d + if self.with_jac { 4 * d * d } else { 0 } + if self.with_action { 1 } else { 0 }
    }

    pub fn pack(&self, x: &[f64], xi: &[f64]) -> Vec<f64> {
        let d = self.dim;
        let mut y = vec![0.0; self.state_len()];
        y[..d].copy_from_slice(x);
        y[d..2 * d].copy_from_slice(xi);
        if self.with_jac {
            // identity initial Jacobian
            for i in 0..2 * d {
                y[2 * d + i * 2 * d + i] = 1.0;
            }
        }
        y
    }

    pub fn rhs(&self, _t: f64, y: &[f64], dy: &mut [f64]) {
        let d = self.dim;
        let z = &y[..2 * d];
        // Hamilton equations: ẋ = ∂_ξ p, ξ̇ = -∂_x p
        let mut dp_dxi = [0.0f64; 2];
        let mut dp_dx = [0.0f64; 2];
        for j in 0..d {
            dp_dxi[j] = partial1(&self.field, z, d + j);
            dp_dx[j] = partial1(&self.field, z, j);
        }
        for j in 0..d {
            dy[j] = dp_dxi[j];
            dy[d + j] = -dp_dx[j];
        }
        if self.with_jac {
            // variational system: J' = A J with A = [[p_ξx, p_ξξ], [-p_xx, -p_xξ]]
            let n = 2 * d;
            let mut a = [[0.0f64; 4]; 4];
            for r in 0..d {
                for c in 0..d {
                    a[r][c] = partial2(&self.field, z, d + r, c);
                    a[r][d + c] = partial2(&self.field, z, d + r, d + c);
                    a[d + r][c] = -partial2(&self.field, z, r, c);
                    a[d + r][d + c] = -partial2(&self.field, z, r, d + c);
                }
            }
            let jac = &y[n..n + n * n];
            let djac = &mut dy[n..n + n * n];
            for r in 0..n {
                for c in 0..n {
                    let mut s = 0.0;
                    for k in 0..n {
                        s += a[r][k] * jac[k * n + c];
                    }
                    djac[r * n + c] = s;
                }
            }
        }
        if self.with_action {
            // Lagrangian along the flow: Ξ·∂_ξp - p
            let p: f64 = self.field.eval(z);
            let mut l = -p;
            for j in 0..d {
                l += y[d + j] * dp_dxi[j];
            }
            let idx = self.state_len() - 1;
            dy[idx] = l;
        }
    }
}

fn build_system<'a>(
    model: &'a SymbolModel,
    choice: SymbolChoice,
    trunc: Option<TruncationParams>,
    with_jac: bool,
    with_action: bool,
) -> HamiltonSystem<'a> {
    HamiltonSystem {
        field: SymbolField { model, choice, trunc },
        dim: model.dim,
        with_jac,
        with_action,
    }
}

fn validate_tol(tol: f64) -> Result<()> {
    if !(1e-12..=1e-4).contains(&tol) {
        return Err(SemiError::InvalidParameter(format!(
            "tolerance {tol} outside [1e-12, 1e-4]"
        )));
    }
    Ok(())
}

pub(crate) fn integrate_system(
    sys: &HamiltonSystem<'_>,
    x: &[f64],
    xi: &[f64],
    t_out: &[f64],
    tol: f64,
) -> Result<FlowResult> {
    let d = sys.dim;
    let y0 = sys.pack(x, xi);
    let (samples, stats) =
        dopri5(|t, y, dy| sys.rhs(t, y, dy), t_out[0], &y0, t_out, tol)?;
    let p0: f64 = {
        let mut z = x.to_vec();
        z.extend_from_slice(xi);
        sys.field.eval(&z)
    };
    let mut drift = 0.0f64;
    for s in &samples {
        let p: f64 = sys.field.eval(&s[..2 * d]);
        drift = drift.max((p - p0).abs());
        if !p.is_finite() {
            return Err(SemiError::NonFinite { context: "flow energy", point: s[..2 * d].to_vec() });
        }
    }
    Ok(FlowResult {
        dim: d,
        times: t_out.to_vec(),
        x: samples.iter().map(|s| s[..d].to_vec()).collect(),
        xi: samples.iter().map(|s| s[d..2 * d].to_vec()).collect(),
        jac: sys.with_jac.then(|| {
            samples
                .iter()
                .map(|s| s[2 * d..2 * d + 4 * d * d].to_vec())
                .collect()
        }),
        action: sys.with_action.then(|| {
            let idx = sys.state_len() - 1;
            samples.iter().map(|s| s[idx]).collect()
        }),
        energy_drift: drift,
        steps_accepted: stats.accepted,
        steps_rejected: stats.rejected,
    })
}

/// Integrate the Hamilton flow of the chosen symbol from (x,ξ), sampling
/// at the instants of `t_out` (first entry is the initial time).
pub fn integrate_flow(
    model: &SymbolModel,
    choice: SymbolChoice,
    trunc: Option<TruncationParams>,
    x: &[f64],
    xi: &[f64],
    t_out: &[f64],
    tol: f64,
) -> Result<FlowResult> {
    validate_tol(tol)?;
    let sys = build_system(model, choice, trunc, false, false);
    integrate_system(&sys, x, xi, t_out, tol)
}

/// Flow plus the variational system; `jac` holds ∂(X,Ξ)/∂(y,ξ) per sample
/// with jac(0) = identity.
pub fn flow_jacobian(
    model: &SymbolModel,
    choice: SymbolChoice,
    trunc: Option<TruncationParams>,
    x: &[f64],
    xi: &[f64],
    t_out: &[f64],
    tol: f64,
) -> Result<FlowResult> {
    validate_tol(tol)?;
    let sys = build_system(model, choice, trunc, true, false);
    integrate_system(&sys, x, xi, t_out, tol)
}

/// Newton-invert the position map y ↦ X(t,y,ξ) at fixed (t, ξ):
/// returns y with |X(t,y,ξ) - x_target| ≤ 1e-10·⟨x_target⟩.
pub fn invert_position_map(
    model: &SymbolModel,
    choice: SymbolChoice,
    trunc: Option<TruncationParams>,
    t: f64,
    x_target: &[f64],
    xi: &[f64],
    guess: Option<&[f64]>,
    tol: f64,
) -> Result<Vec<f64>> {
    validate_tol(tol)?;
    let d = model.dim;
    let jx = (1.0 + x_target.iter().map(|v| v * v).sum::<f64>()).sqrt();
    let target_res = 1e-10 * jx;

    let mut y: Vec<f64> = match guess {
        Some(g) => g.to_vec(),
        None => {
            // default guess: x - t ∂_ξ p(x, ξ)
            let field = SymbolField { model, choice, trunc: trunc.clone() };
            let mut z = x_target.to_vec();
            z.extend_from_slice(xi);
            (0..d)
                .map(|j| x_target[j] - t * partial1(&field, &z, d + j))
                .collect()
        }
    };

    if t == 0.0 {
        return Ok(y.iter().zip(x_target).map(|(_, &v)| v).collect());
    }

    let sys = build_system(model, choice, trunc, true, false);
    let t_out = [0.0, t];
    let mut last_res = f64::INFINITY;
    for _iter in 0..50 {
        let fr = integrate_system(&sys, &y, xi, &t_out, tol)?;
        let xs = &fr.x[1];
        let jac = fr.jac_at(1).expect("jacobian requested");
        let n = 2 * d;
        let mut f = vec![0.0; d];
        let mut res = 0.0f64;
        for j in 0..d {
            f[j] = xs[j] - x_target[j];
            res = res.max(f[j].abs());
        }
        if res <= target_res {
            return Ok(y);
        }
        last_res = res;
        // solve (∂X/∂y) δ = f for the Newton step
        match d {
            1 => {
                let dxdy = jac[0];
                if dxdy.abs() < 1e-14 {
                    break;
                }
                y[0] -= f[0] / dxdy;
            }
            _ => {
                let (a, b, c, e) = (jac[0], jac[1], jac[n], jac[n + 1]);
                let det = a * e - b * c;
                if det.abs() < 1e-14 {
                    break;
                }
                let d0 = (e * f[0] - b * f[1]) / det;
                let d1 = (-c * f[0] + a * f[1]) / det;
                y[0] -= d0;
                y[1] -= d1;
            }
        }
    }
    Err(SemiError::NewtonDiverged { iters: 50, residual: last_res, t })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NontrappingVerdict {
    EscapedAll,
    TrappedSome,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EscapeRecord {
    pub x0: Vec<f64>,
    pub xi0: Vec<f64>,
    /// Forward/backward escape times (first |X| > R_escape with X·Ẋ > 0).
    pub escape_time_fwd: Option<f64>,
    pub escape_time_bwd: Option<f64>,
    pub max_radius: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NontrappingReport {
    pub model_id: String,
    pub t_max: f64,
    pub r_escape: f64,
    pub records: Vec<EscapeRecord>,
    pub verdict: NontrappingVerdict,
}

fn escape_scan_one(
    model: &SymbolModel,
    x0: &[f64],
    xi0: &[f64],
    t_max: f64,
    r_escape: f64,
    tol: f64,
) -> Result<EscapeRecord> {
    let d = model.dim;
    let sys = build_system(model, SymbolChoice::K, None, false, false);
    let n_samp = 400;
    let mut rec = EscapeRecord {
        x0: x0.to_vec(),
        xi0: xi0.to_vec(),
        escape_time_fwd: None,
        escape_time_bwd: None,
        max_radius: x0.iter().map(|v| v * v).sum::<f64>().sqrt(),
    };
    for dir in [1.0f64, -1.0] {
        let t_out: Vec<f64> = (0..=n_samp)
            .map(|i| dir * t_max * i as f64 / n_samp as f64)
            .collect();
        let fr = integrate_system(&sys, x0, xi0, &t_out, tol)?;
        for (i, xs) in fr.x.iter().enumerate() {
            let r = xs.iter().map(|v| v * v).sum::<f64>().sqrt();
            rec.max_radius = rec.max_radius.max(r);
            if r > r_escape {
                // outward-in-the-direction-of-travel certificate:
                // dir · X·Ẋ > 0 with Ẋ = ∂_ξ k
                let mut z = xs.clone();
                z.extend_from_slice(&fr.xi[i]);
                let mut xdot = vec![0.0; d];
                for j in 0..d {
                    xdot[j] = partial1(&sys.field, &z, d + j);
                }
                let radial: f64 = xs.iter().zip(&xdot).map(|(a, b)| a * b).sum();
                if radial * dir > 0.0 {
                    let te = t_out[i].abs();
                    if dir > 0.0 {
                        rec.escape_time_fwd = Some(te);
                    } else {
                        rec.escape_time_bwd = Some(te);
                    }
                    break;
                }
            }
        }
    }
    Ok(rec)
}

/// Scan the kinetic flow from deterministic phase-space samples on the
/// energy shell k ∈ I inside |x| ≤ r_sample; escapes require both
/// radius and outward-velocity certificates, in both time directions.
#[allow(clippy::too_many_arguments)]
pub fn nontrapping_scan(
    model: &SymbolModel,
    shell: (f64, f64),
    r_sample: f64,
    n_samples: usize,
    t_max: f64,
    r_escape: f64,
    tol: f64,
) -> Result<NontrappingReport> {
    validate_tol(tol)?;
    let d = model.dim;
    let (k_lo, k_hi) = shell;
    if !(0.0 < k_lo && k_lo < k_hi) {
        return Err(SemiError::InvalidParameter("energy shell must satisfy 0 < lo < hi".into()));
    }

    // deterministic samples: Halton positions, directions from a second
    // Halton stream, kinetic energy on the shell
    let mut starts = Vec::with_capacity(n_samples);
    for i in 0..n_samples {
        let x: Vec<f64> = (0..d)
            .map(|j| (2.0 * halton(i, [2, 3][j]) - 1.0) * r_sample)
            .collect();
        let kv = k_lo + (k_hi - k_lo) * halton(i, 5);
        let xi: Vec<f64> = match d {
            1 => {
                let sgn = if halton(i, 7) < 0.5 { -1.0 } else { 1.0 };
                vec![sgn]
            }
            _ => {
                let ang = 2.0 * std::f64::consts::PI * halton(i, 7);
                vec![ang.cos(), ang.sin()]
            }
        };
        // scale ξ so that k(x, ξ) = kv: k is quadratic in ξ
        let base: f64 = model.kinetic(&x, &xi);
        let scale = (kv / base).sqrt();
        let xi: Vec<f64> = xi.iter().map(|v| v * scale).collect();
        starts.push((x, xi));
    }

    let records: Result<Vec<EscapeRecord>> = starts
        .par_iter()
        .map(|(x, xi)| escape_scan_one(model, x, xi, t_max, r_escape, tol))
        .collect();
    let records = records?;

    let all_escaped = records
        .iter()
        .all(|r| r.escape_time_fwd.is_some() && r.escape_time_bwd.is_some());
    let verdict = if all_escaped {
        NontrappingVerdict::EscapedAll
    } else {
        NontrappingVerdict::TrappedSome
    };
    Ok(NontrappingReport {
        model_id: model.id_string(),
        t_max,
        r_escape,
        records,
        verdict,
    })
}

fn halton(i: usize, base: usize) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    let mut n = i + 1;
    while n > 0 {
        f /= base as f64;
        r += f * (n % base) as f64;
        n /= base;
    }
    r
}

/// Fitted constants Ĉ_{αβ} = max |∂^α_x ∂^β_ξ (X(t)-x)| / (|t|⟨x⟩^{1-|α+β|})
/// over a quadratic-zone grid for |α+β| ≤ 2, the order-2 row taken from a
/// centered finite difference of the variational Jacobian.
pub struct ShortTimeBounds {
    pub rows: Vec<(String, f64, f64)>,
    pub stable: bool,
}

pub fn verify_short_time_flow_bounds(
    model: &SymbolModel,
    epsilon: f64,
    t_eps: f64,
    grid_x: &[f64],
    grid_xi: &[f64],
    tol: f64,
) -> Result<ShortTimeBounds> {
    validate_tol(tol)?;
    if model.dim != 1 {
        return Err(SemiError::InvalidParameter(
            "short-time bound fits implemented for d = 1".into(),
        ));
    }
    let fit = |stride: usize| -> Result<[f64; 3]> {
        let mut c0 = 0.0f64;
        let mut c1 = 0.0f64;
        let mut c2 = 0.0f64;
        for (ix, &x) in grid_x.iter().enumerate().filter(|(i, _)| i % stride == 0) {
            let _ = ix;
            for &xi in grid_xi {
                if !crate::region::in_quadratic_zone(epsilon, &[x], &[xi]) {
                    continue;
                }
                let jx = (1.0 + x * x).sqrt();
                let t_out = [0.0, t_eps];
                let fr = flow_jacobian(model, SymbolChoice::P, None, &[x], &[xi], &t_out, tol)?;
                let dx = fr.x[1][0] - x;
                c0 = c0.max(dx.abs() / (t_eps * jx));
                let jac = fr.jac_at(1).unwrap();
                // ∂_y X - 1 and ∂_ξ X
                c1 = c1.max((jac[0] - 1.0).abs() / t_eps);
                c1 = c1.max(jac[1].abs() / t_eps);
                // second derivatives: centered difference of the Jacobian in y
                let dy = 1e-4 * jx;
                let fp =
                    flow_jacobian(model, SymbolChoice::P, None, &[x + dy], &[xi], &t_out, tol)?;
                let fm =
                    flow_jacobian(model, SymbolChoice::P, None, &[x - dy], &[xi], &t_out, tol)?;
                let d2 = (fp.jac_at(1).unwrap()[0] - fm.jac_at(1).unwrap()[0]) / (2.0 * dy);
                c2 = c2.max(d2.abs() * jx / t_eps);
            }
        }
        Ok([c0, c1, c2])
    };
    let coarse = fit(2)?;
    let fine = fit(1)?;
    let rows = vec![
        ("order0".to_string(), fine[0], coarse[0]),
        ("order1".to_string(), fine[1], coarse[1]),
        ("order2".to_string(), fine[2], coarse[2]),
    ];
    let stable = rows.iter().all(|(_, f, c)| {
        let hi = f.max(*c);
        hi == 0.0 || (f - c).abs() / hi <= 0.25
    });
    Ok(ShortTimeBounds { rows, stable })
}
