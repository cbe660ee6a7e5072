//! Phase-space regions: outgoing/incoming cones Γ^±(R, I, σ), the
//! quadratic zone Ω(ε) = {⟨x⟩ > ε|ξ|/2}, and the directional partition
//! θ⁺ + θ⁻ = 1.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SemiError};
use crate::num::cutoff::poly_smoothstep;
use crate::num::dual::{jbracket, Jet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    Outgoing,
    Incoming,
    QuadraticZone,
}

/// Specification of a phase-space region.
///
/// Outgoing/Incoming: {|x| > R, |ξ| ∈ I, ±x̂·ξ̂ > -σ}, optionally capped
/// at |x| < x_cap. QuadraticZone: {⟨x⟩ > ε|ξ|/2}.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegionSpec {
    pub kind: RegionKind,
    #[serde(default)]
    pub r: f64,
    #[serde(default = "default_i_lo")]
    pub i_lo: f64,
    #[serde(default = "default_i_hi")]
    pub i_hi: f64,
    #[serde(default)]
    pub sigma: f64,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default)]
    pub x_cap: Option<f64>,
}

fn default_i_lo() -> f64 {
    0.5
}
fn default_i_hi() -> f64 {
    2.0
}
fn default_epsilon() -> f64 {
    1.0
}

impl RegionSpec {
    pub fn outgoing(r: f64, i: (f64, f64), sigma: f64) -> Result<Self> {
        let s = RegionSpec {
            kind: RegionKind::Outgoing,
            r,
            i_lo: i.0,
            i_hi: i.1,
            sigma,
            epsilon: 1.0,
            x_cap: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn incoming(r: f64, i: (f64, f64), sigma: f64) -> Result<Self> {
        let mut s = Self::outgoing(r, i, sigma)?;
        s.kind = RegionKind::Incoming;
        Ok(s)
    }

    pub fn quadratic_zone(epsilon: f64) -> Result<Self> {
        let s = RegionSpec {
            kind: RegionKind::QuadraticZone,
            r: 0.0,
            i_lo: 0.5,
            i_hi: 2.0,
            sigma: 0.0,
            epsilon,
            x_cap: None,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_cap(mut self, cap: f64) -> Self {
        self.x_cap = Some(cap);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.i_lo && self.i_lo < self.i_hi) {
            return Err(SemiError::InvalidParameter(format!(
                "frequency interval ({}, {}) must satisfy 0 < lo < hi",
                self.i_lo, self.i_hi
            )));
        }
        if !(-1.0 < self.sigma && self.sigma < 1.0) {
            return Err(SemiError::InvalidParameter(format!("sigma = {} outside (-1,1)", self.sigma)));
        }
        if self.r < 0.0 {
            return Err(SemiError::InvalidParameter(format!("R = {} negative", self.r)));
        }
        if self.epsilon <= 0.0 {
            return Err(SemiError::InvalidParameter(format!(
                "epsilon = {} must be positive",
                self.epsilon
            )));
        }
        Ok(())
    }
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Exact membership predicate. `h` activates the |x| < 1/h cap used by
/// semiclassical outgoing/incoming symbols when no explicit cap is set.
pub fn classify_region(spec: &RegionSpec, x: &[f64], xi: &[f64], h: Option<f64>) -> bool {
    match spec.kind {
        RegionKind::QuadraticZone => {
            let jx: f64 = jbracket(x);
            jx > spec.epsilon * norm(xi) / 2.0
        }
        RegionKind::Outgoing | RegionKind::Incoming => {
            let nx = norm(x);
            let nxi = norm(xi);
            if nx <= spec.r || nxi <= spec.i_lo || nxi >= spec.i_hi {
                return false;
            }
            let cap = spec.x_cap.or(h.map(|h| 1.0 / h));
            if let Some(c) = cap {
                if nx >= c {
                    return false;
                }
            }
            let cosang = x
                .iter()
                .zip(xi)
                .map(|(a, b)| a * b)
                .sum::<f64>()
                / (nx * nxi);
            match spec.kind {
                RegionKind::Outgoing => cosang > -spec.sigma,
                RegionKind::Incoming => -cosang > -spec.sigma,
                RegionKind::QuadraticZone => unreachable!(),
            }
        }
    }
}

/// Membership in Ω(ε) = {⟨x⟩ > ε|ξ|/2}.
pub fn in_quadratic_zone(epsilon: f64, x: &[f64], xi: &[f64]) -> bool {
    let jx: f64 = jbracket(x);
    jx > epsilon * norm(xi) / 2.0
}

/// Directional partition on s = x̂·ξ̂ ∈ [-1,1]: θ⁺ ≡ 1 on [1/2, 1],
/// θ⁺ ≡ 0 on [-1, -1/2], θ⁺ + θ⁻ = 1 exactly (θ⁻ computed as 1 - θ⁺).
/// C^k smoothness with k = `order` via the polynomial smoothstep.
#[derive(Clone, Copy, Debug)]
pub struct DirectionalSplitting {
    pub order: usize,
}

impl DirectionalSplitting {
    pub fn theta_plus<T: Jet>(&self, s: T) -> T {
        poly_smoothstep(s + T::cst(0.5), self.order)
    }

    pub fn theta_minus<T: Jet>(&self, s: T) -> T {
        T::one() - self.theta_plus(s)
    }
}

/// The θ± pair adapted to a cone support spec (the spec fixes where the
/// directional symbols a·θ± will live; the partition itself is universal).
pub fn build_directional_splitting(
    _a_support: &RegionSpec,
    theta_transition: usize,
) -> DirectionalSplitting {
    DirectionalSplitting { order: theta_transition }
}
