//! Adaptive Dormand-Prince 5(4) integrator with exact sampling at
//! requested instants (the step size is clamped to land on them).

use crate::error::{Result, SemiError};

/// Butcher tableau for DOPRI5.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
/// 5th-order weights (same as the last A row: FSAL pair).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

pub struct OdeStats {
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrate y' = f(t, y) from `t0`, sampling the solution exactly at each
/// instant of `t_out` (which must be monotone starting at t0; direction may
/// be negative). Returns the state at each sample plus step statistics.
///
/// `tol` is used as both absolute and relative tolerance.
pub fn dopri5<F>(
    f: F,
    t0: f64,
    y0: &[f64],
    t_out: &[f64],
    tol: f64,
) -> Result<(Vec<Vec<f64>>, OdeStats)>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    let mut out = Vec::with_capacity(t_out.len());
    let mut stats = OdeStats { accepted: 0, rejected: 0 };
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<f64>> = (0..7).map(|_| vec![0.0; dim]).collect();
    f(t, &y, &mut k[0]);

    let mut out_idx = 0;
    while out_idx < t_out.len() && t_out[out_idx] == t0 {
        out.push(y.clone());
        out_idx += 1;
    }
    if out_idx >= t_out.len() {
        return Ok((out, stats));
    }

    let dir = (t_out[t_out.len() - 1] - t0).signum();
    if dir == 0.0 {
        return Err(SemiError::InvalidParameter("degenerate time span".into()));
    }
    let t_end = t_out[t_out.len() - 1];
    let mut h = (0.01 * (t_end - t0).abs()).max(1e-10) * dir;
    let mut ytmp = vec![0.0; dim];
    let mut y5 = vec![0.0; dim];
    let mut err_vec = vec![0.0; dim];

    loop {
        // clamp the step to hit the next requested sample exactly
        let target = t_out[out_idx];
        if (target - t) * dir <= 1e-14 * (1.0 + t.abs()) {
            out.push(y.clone());
            out_idx += 1;
            if out_idx >= t_out.len() {
                return Ok((out, stats));
            }
            continue;
        }
        if (t + h - target) * dir > 0.0 {
            h = target - t;
        }
        if h.abs() < 1e-14 * (1.0 + t.abs()) {
            return Err(SemiError::StepUnderflow {
                t,
                magnitude: y.iter().fold(0.0f64, |m, v| m.max(v.abs())),
            });
        }

        // stages
        for s in 0..6 {
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(s + 1) {
                    acc += A[s][j] * kj[i];
                }
                ytmp[i] = y[i] + h * acc;
            }
            let ts = t + C[s] * h;
            let (head, tail) = k.split_at_mut(s + 1);
            let _ = head;
            f(ts, &ytmp, &mut tail[0]);
        }
        // 5th and 4th order solutions
        let mut err = 0.0f64;
        for i in 0..dim {
            let mut s5 = 0.0;
            let mut s4 = 0.0;
            for j in 0..7 {
                s5 += B5[j] * k[j][i];
                s4 += B4[j] * k[j][i];
            }
            y5[i] = y[i] + h * s5;
            err_vec[i] = h * (s5 - s4);
            let sc = tol + tol * y[i].abs().max(y5[i].abs());
            err = err.max((err_vec[i] / sc).abs());
            // fold with max would silently drop NaN: force a rejection so
            // the step shrinks (and a truly singular rhs underflows out)
            if !y5[i].is_finite() || !err_vec[i].is_finite() {
                err = f64::INFINITY;
            }
        }

        if err <= 1.0 {
            stats.accepted += 1;
            t += h;
            std::mem::swap(&mut y, &mut y5);
            f(t, &y, &mut k[0]);
        } else {
            stats.rejected += 1;
        }
        let fac = (0.9 * (1.0 / err).powf(0.2)).clamp(0.2, 5.0);
        h *= fac;
    }
}
