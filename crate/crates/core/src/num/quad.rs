//! One-dimensional quadrature rules used for action integrals, weight
//! functions and eikonal primitives.

/// 16-point Gauss-Legendre nodes/weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.09501250983763744,
    0.28160355077925891,
    0.45801677765722739,
    0.61787624440264375,
    0.75540440835500303,
    0.86563120238783174,
    0.94457502307323258,
    0.98940093499164993,
];
const GL16_W: [f64; 8] = [
    0.18945061045506850,
    0.18260341504492359,
    0.16915651939500254,
    0.14959598881657673,
    0.12462897125553387,
    0.09515851168249278,
    0.06225352393864789,
    0.02715245941175409,
];

/// Composite 16-point Gauss-Legendre over [a, b] with `panels` panels.
/// Spectrally accurate per panel for smooth integrands.
pub fn gauss_legendre<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut s = 0.0;
        for i in 0..8 {
            s += GL16_W[i] * (f(mid + half * GL16_X[i]) + f(mid - half * GL16_X[i]));
        }
        total += s * half;
    }
    total
}

/// Trapezoid rule over uniformly sampled values with spacing `dt`.
pub fn trapezoid(values: &[f64], dt: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mut s = 0.5 * (values[0] + values[n - 1]);
    for v in &values[1..n - 1] {
        s += v;
    }
    s * dt
}
