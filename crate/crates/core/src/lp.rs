//! Frequency-side tooling: dyadic Littlewood-Paley band filters, the
//! 4-adic spectral partition (f₀, f, F), and the ψ_ε/χ_ε phase-space
//! cutoffs. All filters are C^∞ bump-glue profiles, never sharp
//! truncations, so they do not ring spatially.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Result, SemiError};
use crate::grid::GridState;
use crate::num::cutoff::plateau;
use crate::quantize::apply_multiplier;

/// Radial profile φ: ≡1 on [0,1/2], supp ⊂ [0,1], C^∞ monotone glue.
pub fn lp_profile(s: f64) -> f64 {
    plateau(s, 0.5, 1.0)
}

/// Phase-space cutoff ψ_ε(x,ξ) = φ(⟨x⟩/(ε|ξ|)) localizing to the zone
/// ⟨x⟩ < ε|ξ|; its complement χ_ε = 1 - ψ_ε. At ξ = 0 the argument
/// diverges, so ψ_ε(x,0) = 0 by continuity.
#[derive(Clone, Copy, Debug)]
pub struct PsiEpsilon {
    pub epsilon: f64,
}

pub fn build_psi_epsilon(epsilon: f64) -> Result<PsiEpsilon> {
    if epsilon <= 0.0 || !epsilon.is_finite() {
        return Err(SemiError::InvalidParameter(format!("epsilon = {epsilon} must be > 0")));
    }
    Ok(PsiEpsilon { epsilon })
}

impl PsiEpsilon {
    pub fn psi(&self, x: &[f64], xi: &[f64]) -> f64 {
        let nxi: f64 = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        if nxi == 0.0 {
            return 0.0;
        }
        let jx = (1.0 + x.iter().map(|v| v * v).sum::<f64>()).sqrt();
        lp_profile(jx / (self.epsilon * nxi))
    }

    pub fn chi(&self, x: &[f64], xi: &[f64]) -> f64 {
        1.0 - self.psi(x, xi)
    }
}

/// 4-adic partition on the spectral axis: f is a fixed C^∞ bump
/// normalized by its own 4-adic translates, so Σ_{j∈Z} f(4^{-j}λ) = 1
/// holds by construction for λ > 0; f₀ closes the bottom of the scale.
#[derive(Clone, Copy, Debug, Default)]
pub struct FourAdicPartition;

impl FourAdicPartition {
    /// The un-normalized bump b: ≡1 on [1/2,2], supp ⊂ [1/4,4].
    fn bump(lambda: f64) -> f64 {
        if lambda <= 0.25 || lambda >= 4.0 {
            return 0.0;
        }
        plateau(lambda.log2() / 2.0, 0.5, 1.0)
    }

    /// f(λ) = b(λ) / Σ_j b(4^{-j}λ); supp f ⊂ [1/4, 4].
    pub fn f(&self, lambda: f64) -> f64 {
        let b = Self::bump(lambda);
        if b == 0.0 {
            return 0.0;
        }
        let j0 = (lambda.log2() / 2.0).round() as i32;
        let mut denom = 0.0;
        for j in (j0 - 2)..=(j0 + 2) {
            denom += Self::bump(lambda * 0.25f64.powi(j));
        }
        b / denom
    }

    /// f₀(λ) = 1 - Σ_{j≥0} f(4^{-j}λ): ≡1 for λ ≤ 1/4 (and λ ≤ 0),
    /// ≡0 for λ ≥ 1.
    pub fn f0(&self, lambda: f64) -> f64 {
        if lambda <= 0.25 {
            return 1.0;
        }
        if lambda >= 1.0 {
            return 0.0;
        }
        let mut s = 0.0;
        let mut scaled = lambda;
        while scaled > 0.25 {
            s += self.f(scaled);
            scaled *= 0.25;
        }
        1.0 - s
    }

    /// Companion F: ≡1 on [1/4,4] ⊇ supp f, supp F ⊂ [1/8,8].
    pub fn big_f(&self, lambda: f64) -> f64 {
        if lambda <= 0.125 || lambda >= 8.0 {
            return 0.0;
        }
        plateau(lambda.log2(), 2.0, 3.0)
    }

    /// Defect of f₀(λ) + Σ_{j≥0} f(4^{-j}λ) = 1 at one point.
    pub fn identity_defect(&self, lambda: f64) -> f64 {
        let mut s = self.f0(lambda);
        let mut scaled = lambda;
        loop {
            s += self.f(scaled);
            if scaled <= 0.25 {
                break;
            }
            scaled *= 0.25;
        }
        (s - 1.0).abs()
    }
}

/// Dyadic Littlewood-Paley filter bank. The band profile
/// S(ξ) = φ(|ξ|/2) - φ(|ξ|) has supp S ⊂ {1/2 < |ξ| < 2}; the bank is
///   S₀(ξ) = φ(|ξ|),  S_j(ξ) = S(2^{1-j}ξ)  (j ≥ 1),
/// which telescopes to Σ_{j≤J} S_j = φ(2^{-J}|ξ|) = 1 for |ξ| ≤ 2^{J-1}.
#[derive(Clone, Copy, Debug)]
pub struct DyadicLP {
    pub j_max: usize,
}

impl DyadicLP {
    pub fn new(j_max: usize) -> Self {
        DyadicLP { j_max }
    }

    /// Smallest bank whose partition identity covers the whole dual grid.
    pub fn for_grid(grid: &crate::grid::Grid) -> Self {
        let eta_max = (grid.n / 2) as f64 * grid.deta();
        let j_max = (eta_max.log2().ceil() as i64 + 1).max(1) as usize;
        DyadicLP { j_max }
    }

    /// Filter value S_j(ξ), radial in ξ.
    pub fn filter(&self, j: usize, xi: &[f64]) -> f64 {
        let r: f64 = xi.iter().map(|v| v * v).sum::<f64>().sqrt();
        if j == 0 {
            return lp_profile(r);
        }
        // S(2^{1-j}ξ) written in telescoping form so the bank sums to
        // φ(2^{-j}r) - φ(2^{1-j}r) with bit-shared endpoints
        let scale = (2.0f64).powi(-(j as i32));
        lp_profile(r * scale) - lp_profile(r * scale * 2.0)
    }

    /// Σ_{j≤j_max} S_j(ξ); equals 1 for |ξ| ≤ 2^{j_max-1}.
    pub fn partition_sum(&self, xi: &[f64]) -> f64 {
        (0..=self.j_max).map(|j| self.filter(j, xi)).sum()
    }
}

/// Builds the 4-adic pair and an LP bank with the given depth.
pub fn build_dyadic_partitions(j_max: usize) -> (FourAdicPartition, DyadicLP) {
    (FourAdicPartition, DyadicLP::new(j_max))
}

/// Fourier-multiply u by the band filter S_j.
pub fn lp_apply(lp: &DyadicLP, j: usize, u: &GridState) -> Result<GridState> {
    if j > lp.j_max {
        return Err(SemiError::InvalidParameter(format!(
            "band {j} beyond bank depth {}",
            lp.j_max
        )));
    }
    let eta_max = (u.grid.n / 2) as f64 * u.grid.deta();
    // supp S_j starts at 2^{j-2}; a band whose support misses the dual
    // grid entirely cannot act on it
    if j >= 2 && (2.0f64).powi(j as i32 - 2) >= eta_max {
        return Err(SemiError::Resolution(format!(
            "band {j} starts at 2^{} beyond dual grid max {eta_max:.3}",
            j as i32 - 2
        )));
    }
    Ok(apply_multiplier(
        &|eta: &[f64]| Complex64::new(lp.filter(j, eta), 0.0),
        u,
    ))
}

/// All bands at once, parallel over j.
pub fn lp_decompose(lp: &DyadicLP, u: &GridState) -> Result<Vec<GridState>> {
    (0..=lp.j_max)
        .into_par_iter()
        .map(|j| lp_apply(lp, j, u))
        .collect()
}

/// Ratio Σ_j ‖S_j u‖₂² / ‖u‖₂²; in [1/3, 3] for states resolved by the
/// grid (each frequency is covered by at most two bands).
pub fn square_function_ratio(lp: &DyadicLP, u: &GridState) -> Result<f64> {
    let total = u.norm_l2();
    if total == 0.0 {
        return Err(SemiError::InvalidParameter("square-function ratio of zero state".into()));
    }
    let bands = lp_decompose(lp, u)?;
    let s: f64 = bands.iter().map(|b| b.norm_l2().powi(2)).sum();
    Ok(s / (total * total))
}
