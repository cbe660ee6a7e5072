//! Uniform periodic grids on [-hw, hw)^d with the discrete Fourier
//! transform in the signed-frequency convention
//!   û(η_k) = Δx · (-1)^k · FFT[u]_k,  η_k = π k̃ / hw,
//! which makes the inversion u = (2π)^{-d} Σ û e^{ixη} Δη and the
//! Parseval identity exact in floating point up to roundoff.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SemiError};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub dim: usize,
    /// Half-width of the periodic box [-hw, hw).
    pub half_width: f64,
    /// Points per axis; must be even.
    pub n: usize,
}

impl Grid {
    pub fn new(dim: usize, half_width: f64, n: usize) -> Result<Self> {
        if dim == 0 || dim > 2 {
            return Err(SemiError::InvalidParameter(format!("dim {dim} not in 1..=2")));
        }
        if half_width <= 0.0 || !half_width.is_finite() {
            return Err(SemiError::InvalidParameter("half_width must be positive".into()));
        }
        if n < 4 || n % 2 != 0 {
            return Err(SemiError::InvalidParameter(format!("n = {n} must be even and >= 4")));
        }
        Ok(Grid { dim, half_width, n })
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    /// Frequency spacing Δη = π / hw.
    pub fn deta(&self) -> f64 {
        std::f64::consts::PI / self.half_width
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// x-coordinate of index j along one axis.
    pub fn x_at(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.dx()
    }

    /// Signed frequency η_k of index k along one axis (k̃ in [-n/2, n/2)).
    pub fn eta_at(&self, k: usize) -> f64 {
        let n = self.n;
        let signed = if k < n / 2 { k as f64 } else { k as f64 - n as f64 };
        signed * self.deta()
    }

    pub fn x_axis(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.x_at(j)).collect()
    }

    pub fn eta_axis(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.eta_at(k)).collect()
    }

    /// Position of a flat index (row-major over axes).
    pub fn point(&self, idx: usize) -> Vec<f64> {
        match self.dim {
            1 => vec![self.x_at(idx)],
            _ => vec![self.x_at(idx / self.n), self.x_at(idx % self.n)],
        }
    }

    /// Frequency of a flat index.
    pub fn freq(&self, idx: usize) -> Vec<f64> {
        match self.dim {
            1 => vec![self.eta_at(idx)],
            _ => vec![self.eta_at(idx / self.n), self.eta_at(idx % self.n)],
        }
    }
}

/// A complex field sampled on a grid.
#[derive(Clone, Debug)]
pub struct GridState {
    pub grid: Grid,
    pub data: Vec<Complex64>,
}

impl GridState {
    pub fn zeros(grid: Grid) -> Self {
        let len = grid.len();
        GridState { grid, data: vec![Complex64::new(0.0, 0.0); len] }
    }

    pub fn from_fn(grid: Grid, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let data = (0..grid.len()).map(|i| f(&grid.point(i))).collect();
        GridState { grid, data }
    }

    /// L² norm with the measure Δx^d.
    pub fn norm_l2(&self) -> f64 {
        let w = self.grid.dx().powi(self.grid.dim as i32);
        (self.data.iter().map(|z| z.norm_sqr()).sum::<f64>() * w).sqrt()
    }

    pub fn norm_sup(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ∫ |u|^q dx by the Riemann sum (q < ∞).
    pub fn lq_norm(&self, q: f64) -> f64 {
        let w = self.grid.dx().powi(self.grid.dim as i32);
        (self.data.iter().map(|z| z.norm().powf(q)).sum::<f64>() * w).powf(1.0 / q)
    }

    /// Weighted L² norm with pointwise weight w(x).
    pub fn weighted_norm_l2(&self, weight: impl Fn(&[f64]) -> f64) -> f64 {
        let w = self.grid.dx().powi(self.grid.dim as i32);
        let s: f64 = self
            .data
            .iter()
            .enumerate()
            .map(|(i, z)| {
                let ww = weight(&self.grid.point(i));
                ww * ww * z.norm_sqr()
            })
            .sum();
        (s * w).sqrt()
    }

    pub fn scale(&mut self, c: Complex64) {
        for z in &mut self.data {
            *z *= c;
        }
    }

    pub fn axpy(&mut self, a: Complex64, other: &GridState) {
        for (z, w) in self.data.iter_mut().zip(&other.data) {
            *z += a * w;
        }
    }

    /// Fraction of |u|² mass in the outer shell |x|_∞ > (1-margin)·hw.
    pub fn boundary_mass(&self, margin: f64) -> f64 {
        let cut = (1.0 - margin) * self.grid.half_width;
        let total: f64 = self.data.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let outer: f64 = self
            .data
            .iter()
            .enumerate()
            .filter(|(i, _)| {
                self.grid.point(*i).iter().any(|v| v.abs() > cut)
            })
            .map(|(_, z)| z.norm_sqr())
            .sum();
        outer / total
    }

    /// Fraction of |û|² mass in the outer frequency shell |η|_∞ > (1-margin)·η_max.
    pub fn frequency_tail_mass(&self, margin: f64) -> f64 {
        let hat = forward_dft(self);
        let eta_max = (self.grid.n / 2) as f64 * self.grid.deta();
        let cut = (1.0 - margin) * eta_max;
        let total: f64 = hat.data.iter().map(|z| z.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let outer: f64 = hat
            .data
            .iter()
            .enumerate()
            .filter(|(i, _)| hat.grid.freq(*i).iter().any(|v| v.abs() > cut))
            .map(|(_, z)| z.norm_sqr())
            .sum();
        outer / total
    }
}

fn fft_axis(data: &mut [Complex64], n: usize, rows: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse { planner.plan_fft_inverse(n) } else { planner.plan_fft_forward(n) };
    // contiguous rows
    for r in 0..rows {
        fft.process(&mut data[r * n..(r + 1) * n]);
    }
}

fn transpose(data: &mut Vec<Complex64>, n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}

/// û(η_k) = Δx^d (-1)^{Σk} FFT[u]_k. The sign factor shifts the spatial
/// origin from index 0 to the box center; n even keeps it real.
pub fn forward_dft(u: &GridState) -> GridState {
    let g = &u.grid;
    let n = g.n;
    let mut data = u.data.clone();
    match g.dim {
        1 => fft_axis(&mut data, n, 1, false),
        _ => {
            fft_axis(&mut data, n, n, false);
            transpose(&mut data, n);
            fft_axis(&mut data, n, n, false);
            transpose(&mut data, n);
        }
    }
    let dxd = g.dx().powi(g.dim as i32);
    for (i, z) in data.iter_mut().enumerate() {
        let ksum = match g.dim {
            1 => i,
            _ => i / n + i % n,
        };
        let sgn = if ksum % 2 == 0 { 1.0 } else { -1.0 };
        *z *= sgn * dxd;
    }
    GridState { grid: g.clone(), data }
}

/// Inverse of [`forward_dft`]: u_j = (2π)^{-d} Σ_k û e^{i x_j η_k} Δη^d.
pub fn inverse_dft(uhat: &GridState) -> GridState {
    let g = &uhat.grid;
    let n = g.n;
    let mut data = uhat.data.clone();
    let dxd = g.dx().powi(g.dim as i32);
    for (i, z) in data.iter_mut().enumerate() {
        let ksum = match g.dim {
            1 => i,
            _ => i / n + i % n,
        };
        let sgn = if ksum % 2 == 0 { 1.0 } else { -1.0 };
        *z *= sgn / dxd;
    }
    match g.dim {
        1 => fft_axis(&mut data, n, 1, true),
        _ => {
            fft_axis(&mut data, n, n, true);
            transpose(&mut data, n);
            fft_axis(&mut data, n, n, true);
            transpose(&mut data, n);
        }
    }
    let scale = 1.0 / g.len() as f64;
    for z in &mut data {
        *z *= scale;
    }
    GridState { grid: g.clone(), data }
}

/// Parseval defect |‖u‖² - (2π)^{-d}‖û‖²| / ‖u‖² (‖û‖ with measure Δη^d).
pub fn parseval_defect(u: &GridState) -> f64 {
    let hat = forward_dft(u);
    let d = u.grid.dim as i32;
    let lhs: f64 = u.data.iter().map(|z| z.norm_sqr()).sum::<f64>() * u.grid.dx().powi(d);
    let rhs: f64 = hat.data.iter().map(|z| z.norm_sqr()).sum::<f64>() * u.grid.deta().powi(d)
        / (2.0 * std::f64::consts::PI).powi(d);
    if lhs == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / lhs
    }
}

/// Normalized Gaussian packet exp(i x·ξ₀/h) exp(-|x-x₀|²/(2w²)), ‖·‖_{L²} = 1.
pub fn gaussian_packet(grid: &Grid, x0: &[f64], xi0: &[f64], width: f64, h: f64) -> GridState {
    let mut st = GridState::from_fn(grid.clone(), |x| {
        let r2: f64 = x.iter().zip(x0).map(|(a, b)| (a - b) * (a - b)).sum();
        let phase: f64 = x.iter().zip(xi0).map(|(a, b)| a * b).sum::<f64>() / h;
        Complex64::from_polar((-r2 / (2.0 * width * width)).exp(), phase)
    });
    let nrm = st.norm_l2();
    st.scale(Complex64::new(1.0 / nrm, 0.0));
    st
}

/// Inner product ⟨u, v⟩ = ∫ ū v dx.
pub fn inner(u: &GridState, v: &GridState) -> Complex64 {
    let w = u.grid.dx().powi(u.grid.dim as i32);
    u.data.iter().zip(&v.data).map(|(a, b)| a.conj() * b).sum::<Complex64>() * w
}
