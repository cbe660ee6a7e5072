//! Hamiltonian model data: metric, magnetic and electric coefficients with
//! exact derivatives, the classical symbols p, p₁, k and their
//! semiclassical/truncated variants.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SemiError};
use crate::num::cutoff::psi_cutoff;
use crate::num::dual::{jbracket, partial1, Dual, Jet, ScalarField};

/// Maximum spatial dimension the fixed-size evaluators support.
pub const MAX_DIM: usize = 2;

/// Built-in coefficient catalog. Scenario files select by name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelKind {
    /// g = δ, A = 0, V = 0.
    FlatFree,
    /// Isotropic oscillator V = ω²|x|²/2.
    Harmonic { omega: f64 },
    /// V = ⟨x⟩^{2-mu}, flat metric, no magnetic term.
    SubquadraticPower { mu: f64 },
    /// A = ω·x^⊥·⟨x⟩^{-mu} in d=2 (ω·x·⟨x⟩^{-mu} in d=1), V = 0.
    LinearMagnetic { omega: f64, mu: f64 },
    /// g^{jk} = (1 + b e^{-|x|²}) δ_{jk}.
    ConformalBump { b: f64 },
    /// g^{jk} = (1 + amp·e^{-((|x|²-r0²)/width)²}) δ_{jk}: a metric wall on
    /// the ring |x| ≈ r0 that traps an annulus of kinetic orbits for
    /// large amp (numerically certified, not proved).
    ConformalRing { amp: f64, r0: f64, width: f64 },
    /// g^{jk} = (1 + a1·sin(a2·log⟨x⟩)) δ_{jk}; non-decaying oscillation.
    LogOscillating { a1: f64, a2: f64 },
    /// V = |x|⁴: super-quadratic growth, negative control for the decay
    /// assumption checks.
    Quartic,
}

impl ModelKind {
    /// Inverse-metric coefficients g^{jk}(x) (the symbol side).
    pub fn ginv<T: Jet>(&self, x: &[T]) -> [[T; MAX_DIM]; MAX_DIM] {
        let d = x.len();
        let mut g = [[T::zero(); MAX_DIM]; MAX_DIM];
        let c = match self {
            ModelKind::ConformalBump { b } => {
                let mut r2 = T::zero();
                for &c in x {
                    r2 = r2 + c * c;
                }
                T::one() + T::cst(*b) * (-r2).exp()
            }
            ModelKind::ConformalRing { amp, r0, width } => {
                let mut r2 = T::zero();
                for &c in x {
                    r2 = r2 + c * c;
                }
                let arg = (r2 - T::cst(r0 * r0)) / T::cst(*width);
                T::one() + T::cst(*amp) * (-(arg * arg)).exp()
            }
            ModelKind::LogOscillating { a1, a2 } => {
                T::one() + T::cst(*a1) * (T::cst(*a2) * jbracket(x).ln()).sin()
            }
            _ => T::one(),
        };
        for j in 0..d {
            g[j][j] = c;
        }
        g
    }

    /// Magnetic potential A(x).
    pub fn a_field<T: Jet>(&self, x: &[T]) -> [T; MAX_DIM] {
        let d = x.len();
        let mut a = [T::zero(); MAX_DIM];
        if let ModelKind::LinearMagnetic { omega, mu } = self {
            let w = T::cst(*omega) * jbracket(x).powf_c(-mu);
            if d == 1 {
                a[0] = w * x[0];
            } else {
                a[0] = -w * x[1];
                a[1] = w * x[0];
            }
        }
        a
    }

    /// Electric potential V(x).
    pub fn v_field<T: Jet>(&self, x: &[T]) -> T {
        match self {
            ModelKind::Harmonic { omega } => {
                let mut r2 = T::zero();
                for &c in x {
                    r2 = r2 + c * c;
                }
                T::cst(0.5 * omega * omega) * r2
            }
            ModelKind::SubquadraticPower { mu } => jbracket(x).powf_c(2.0 - mu),
            ModelKind::Quartic => {
                let mut r2 = T::zero();
                for &c in x {
                    r2 = r2 + c * c;
                }
                r2 * r2
            }
            _ => T::zero(),
        }
    }

    /// Nontrapping weight f for the kinetic-flow convexity check.
    ///
    /// Defaults to 1 + |x|²; the log-oscillating metric uses the squared
    /// radial integral of 1/g evaluated by quadrature.
    pub fn weight_f<T: Jet>(&self, x: &[T]) -> T {
        match self {
            ModelKind::LogOscillating { a1, a2 } => {
                let u = jbracket(x);
                let (a1, a2) = (*a1, *a2);
                // I(u) = ∫_0^u dt/(1 + a1 sin(a2 log⟨t⟩)); f = I(u)².
                // Jets flow through the endpoint only: nodes scale with u.
                let i = integral_scaled(u, |t| {
                    let jt = (T::one() + t * t).sqrt();
                    T::one() / (T::one() + T::cst(a1) * (T::cst(a2) * jt.ln()).sin())
                });
                i * i
            }
            _ => {
                let mut r2 = T::one();
                for &c in x {
                    r2 = r2 + c * c;
                }
                r2
            }
        }
    }

    /// Decay exponent μ under which the catalog entry satisfies the
    /// coefficient decay assumption (the quartic entry claims μ=0 and is
    /// expected to fail: it is the negative control).
    pub fn default_mu(&self) -> f64 {
        match self {
            ModelKind::FlatFree => 1.0,
            ModelKind::Harmonic { .. } => 0.0,
            ModelKind::SubquadraticPower { mu } => *mu,
            ModelKind::LinearMagnetic { mu, .. } => *mu,
            ModelKind::ConformalBump { .. } => 2.0,
            ModelKind::ConformalRing { .. } => 2.0,
            ModelKind::LogOscillating { .. } => 0.0,
            ModelKind::Quartic => 0.0,
        }
    }

    /// Lower bound claimed for the smallest eigenvalue of g^{jk}.
    pub fn default_ellipticity(&self) -> f64 {
        match self {
            ModelKind::ConformalBump { b } => (1.0 + b.min(0.0)).max(1e-6),
            ModelKind::LogOscillating { a1, .. } => (1.0 - a1.abs()).max(1e-6),
            _ => 1.0,
        }
    }

    /// Catalog id used in cache keys and report metadata.
    pub fn id_string(&self) -> String {
        match self {
            ModelKind::FlatFree => "flat_free".into(),
            ModelKind::Harmonic { omega } => format!("harmonic(omega={omega})"),
            ModelKind::SubquadraticPower { mu } => format!("subquadratic_power(mu={mu})"),
            ModelKind::LinearMagnetic { omega, mu } => {
                format!("linear_magnetic(omega={omega},mu={mu})")
            }
            ModelKind::ConformalBump { b } => format!("conformal_bump(b={b})"),
            ModelKind::ConformalRing { amp, r0, width } => {
                format!("conformal_ring(amp={amp},r0={r0},width={width})")
            }
            ModelKind::LogOscillating { a1, a2 } => format!("log_oscillating(a1={a1},a2={a2})"),
            ModelKind::Quartic => "quartic".into(),
        }
    }
}

/// ∫_0^u f(t) dt with a jet-valued endpoint: substitute t = u·s and
/// integrate over s ∈ [0,1] with fixed panels, so the derivative parts
/// propagate exactly through the rule.
fn integral_scaled<T: Jet, F: Fn(T) -> T>(u: T, f: F) -> T {
    const PANELS: usize = 12;
    const PTS: usize = 16;
    // nodes of the composite rule on [0,1]
    let mut acc = T::zero();
    for p in 0..PANELS {
        let lo = p as f64 / PANELS as f64;
        let hi = (p + 1) as f64 / PANELS as f64;
        let mid = 0.5 * (lo + hi);
        let half = 0.5 * (hi - lo);
        for i in 0..PTS / 2 {
            let (xi, wi) = gl16(i);
            let sp = T::cst(mid + half * xi);
            let sm = T::cst(mid - half * xi);
            acc = acc + T::cst(wi * half) * (f(u * sp) + f(u * sm));
        }
    }
    acc * u
}

fn gl16(i: usize) -> (f64, f64) {
    const X: [f64; 8] = [
        0.09501250983763744,
        0.28160355077925891,
        0.45801677765722739,
        0.61787624440264375,
        0.75540440835500303,
        0.86563120238783174,
        0.94457502307323258,
        0.98940093499164993,
    ];
    const W: [f64; 8] = [
        0.18945061045506850,
        0.18260341504492359,
        0.16915651939500254,
        0.14959598881657673,
        0.12462897125553387,
        0.09515851168249278,
        0.06225352393864789,
        0.02715245941175409,
    ];
    (X[i], W[i])
}

/// Semiclassical truncation data: h, the scale L, and the radial cutoff
/// ψ (≡1 on [0,1/2], supp ⊂ [0,1]) applied as ψ(h|x|/L).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruncationParams {
    pub h: f64,
    pub l: f64,
}

impl TruncationParams {
    pub fn new(h: f64, l: f64) -> Result<Self> {
        if !(0.0 < h && h <= 1.0) {
            return Err(SemiError::InvalidParameter(format!("h = {h} outside (0,1]")));
        }
        if l < 1.0 {
            return Err(SemiError::InvalidParameter(format!("L = {l} must be >= 1")));
        }
        Ok(TruncationParams { h, l })
    }

    /// ψ(h|x|/L): 1 on |x| ≤ L/(2h), 0 on |x| ≥ L/h.
    pub fn spatial_cutoff<T: Jet>(&self, x: &[T]) -> T {
        let mut r2 = T::zero();
        for &c in x {
            r2 = r2 + c * c;
        }
        let r = r2.sqrt();
        psi_cutoff(r * T::cst(self.h / self.l))
    }
}

/// Hamiltonian data: coefficients, claimed decay exponent and ellipticity.
///
/// Immutable after construction; every evaluator is a pure function, so
/// instances are freely shared across threads.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolModel {
    pub dim: usize,
    pub kind: ModelKind,
    pub mu: f64,
    pub ellipticity_c: f64,
}

impl SymbolModel {
    pub fn new(dim: usize, kind: ModelKind) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(SemiError::InvalidParameter(format!(
                "dim = {dim}, supported range 1..={MAX_DIM}"
            )));
        }
        let mu = kind.default_mu();
        let ellipticity_c = kind.default_ellipticity();
        Ok(SymbolModel { dim, kind, mu, ellipticity_c })
    }

    pub fn flat_free(dim: usize) -> Self {
        Self::new(dim, ModelKind::FlatFree).expect("dim checked by caller")
    }

    /// Full symbol p(x,ξ) = ½ Σ g^{jk}(ξ_j - A_j)(ξ_k - A_k) + V.
    pub fn p<T: Jet>(&self, x: &[T], xi: &[T]) -> T {
        let g = self.kind.ginv(x);
        let a = self.kind.a_field(x);
        let mut acc = self.kind.v_field(x);
        for j in 0..self.dim {
            for k in 0..self.dim {
                acc = acc + T::cst(0.5) * g[j][k] * (xi[j] - a[j]) * (xi[k] - a[k]);
            }
        }
        acc
    }

    /// Kinetic symbol k(x,ξ) = ½ Σ g^{jk} ξ_j ξ_k.
    pub fn kinetic<T: Jet>(&self, x: &[T], xi: &[T]) -> T {
        let g = self.kind.ginv(x);
        let mut acc = T::zero();
        for j in 0..self.dim {
            for k in 0..self.dim {
                acc = acc + T::cst(0.5) * g[j][k] * xi[j] * xi[k];
            }
        }
        acc
    }

    /// Imaginary part of the subprincipal symbol:
    /// p₁ = -(i/2) Σ_{jk} (∂_j g^{jk} (ξ_k - A_k) - g^{jk} ∂_j A_k),
    /// purely imaginary for real coefficients; returns Im p₁.
    pub fn p1_im<T: Jet>(&self, x: &[T], xi: &[T]) -> T {
        let d = self.dim;
        let mut s = T::zero();
        for j in 0..d {
            // seed a directional derivative in x_j at the T level
            let xd: Vec<Dual<T>> = x
                .iter()
                .enumerate()
                .map(|(m, &v)| if m == j { Dual::var(v) } else { Dual::constant(v) })
                .collect();
            let g = self.kind.ginv(&xd);
            let a = self.kind.a_field(&xd);
            for k in 0..d {
                s = s + g[j][k].eps * (xi[k] - a[k].re) - g[j][k].re * a[k].eps;
            }
        }
        s * T::cst(-0.5)
    }

    /// Semiclassical symbol p_h(x,ξ) = ½ Σ g^{jk}(ξ_j - hA_j)(ξ_k - hA_k) + h²V.
    pub fn p_h<T: Jet>(&self, x: &[T], xi: &[T], h: f64) -> T {
        let g = self.kind.ginv(x);
        let a = self.kind.a_field(x);
        let mut acc = T::cst(h * h) * self.kind.v_field(x);
        for j in 0..self.dim {
            for k in 0..self.dim {
                acc = acc
                    + T::cst(0.5)
                        * g[j][k]
                        * (xi[j] - T::cst(h) * a[j])
                        * (xi[k] - T::cst(h) * a[k]);
            }
        }
        acc
    }

    /// Truncated semiclassical symbol p̃_h built from A_h = ψ(h|x|/L)·A and
    /// V_h = ψ(h|x|/L)·V. Coincides with p_h on |x| ≤ L/(2h) and with the
    /// kinetic symbol on |x| ≥ L/h.
    pub fn p_tilde_h<T: Jet>(&self, x: &[T], xi: &[T], params: &TruncationParams) -> T {
        let h = params.h;
        let cut = params.spatial_cutoff(x);
        let g = self.kind.ginv(x);
        let a = self.kind.a_field(x);
        let mut acc = T::cst(h * h) * cut * self.kind.v_field(x);
        for j in 0..self.dim {
            for k in 0..self.dim {
                acc = acc
                    + T::cst(0.5)
                        * g[j][k]
                        * (xi[j] - T::cst(h) * cut * a[j])
                        * (xi[k] - T::cst(h) * cut * a[k]);
            }
        }
        acc
    }

    /// Semiclassical subprincipal Im p₁ for the h-scaled symbol (A ↦ hA).
    pub fn p1_h_im<T: Jet>(&self, x: &[T], xi: &[T], h: f64) -> T {
        let d = self.dim;
        let mut s = T::zero();
        for j in 0..d {
            let xd: Vec<Dual<T>> = x
                .iter()
                .enumerate()
                .map(|(m, &v)| if m == j { Dual::var(v) } else { Dual::constant(v) })
                .collect();
            let g = self.kind.ginv(&xd);
            let a = self.kind.a_field(&xd);
            for k in 0..d {
                s = s + g[j][k].eps * (xi[k] - T::cst(h) * a[k].re)
                    - g[j][k].re * T::cst(h) * a[k].eps;
            }
        }
        s * T::cst(-0.5)
    }

    pub fn id_string(&self) -> String {
        format!("d{}:{}", self.dim, self.kind.id_string())
    }
}

/// Which Hamiltonian drives an integration or a table build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolChoice {
    /// Full symbol p.
    P,
    /// Kinetic part k (the nontrapping flow).
    K,
    /// Semiclassical p_h.
    Ph,
    /// Truncated semiclassical p̃_h.
    PTildeH,
}

/// Phase-space scalar field view of a chosen symbol: input slice is
/// (x_0..x_{d-1}, ξ_0..ξ_{d-1}). Gives the flow and the assumption checks
/// exact derivatives of any order ≤ 4 through the jet machinery.
pub struct SymbolField<'a> {
    pub model: &'a SymbolModel,
    pub choice: SymbolChoice,
    pub trunc: Option<TruncationParams>,
}

impl ScalarField for SymbolField<'_> {
    fn eval<T: Jet>(&self, z: &[T]) -> T {
        let d = self.model.dim;
        debug_assert_eq!(z.len(), 2 * d);
        let (x, xi) = z.split_at(d);
        match self.choice {
            SymbolChoice::P => self.model.p(x, xi),
            SymbolChoice::K => self.model.kinetic(x, xi),
            SymbolChoice::Ph => {
                let h = self.trunc.as_ref().map(|t| t.h).unwrap_or(1.0);
                self.model.p_h(x, xi, h)
            }
            SymbolChoice::PTildeH => {
                let t = self
                    .trunc
                    .as_ref()
                    .expect("truncated symbol requires TruncationParams");
                self.model.p_tilde_h(x, xi, t)
            }
        }
    }
}

/// Evaluate the full symbol with its phase-space gradient.
pub fn eval_symbol_p(model: &SymbolModel, x: &[f64], xi: &[f64]) -> Result<(f64, Vec<f64>, Vec<f64>)> {
    let d = model.dim;
    let field = SymbolField { model, choice: SymbolChoice::P, trunc: None };
    let mut z = Vec::with_capacity(2 * d);
    z.extend_from_slice(x);
    z.extend_from_slice(xi);
    let val: f64 = field.eval(&z);
    if !val.is_finite() {
        return Err(SemiError::NonFinite { context: "symbol p", point: z });
    }
    let gx: Vec<f64> = (0..d).map(|i| partial1(&field, &z, i)).collect();
    let gxi: Vec<f64> = (0..d).map(|i| partial1(&field, &z, d + i)).collect();
    Ok((val, gx, gxi))
}

/// Evaluate the subprincipal symbol p₁ (purely imaginary; returned as the
/// imaginary coefficient).
pub fn eval_subprincipal_p1(model: &SymbolModel, x: &[f64], xi: &[f64]) -> Result<f64> {
    let v = model.p1_im(x, xi);
    if !v.is_finite() {
        let mut z = x.to_vec();
        z.extend_from_slice(xi);
        return Err(SemiError::NonFinite { context: "subprincipal p1", point: z });
    }
    Ok(v)
}

/// `(p_h, Im p_{1,h}, p̃_h)` at a point.
pub fn eval_semiclassical_symbols(
    model: &SymbolModel,
    params: &TruncationParams,
    x: &[f64],
    xi: &[f64],
) -> Result<(f64, f64, f64)> {
    let ph = model.p_h(x, xi, params.h);
    let p1h = model.p1_h_im(x, xi, params.h);
    let pth = model.p_tilde_h(x, xi, params);
    for v in [ph, p1h, pth] {
        if !v.is_finite() {
            let mut z = x.to_vec();
            z.extend_from_slice(xi);
            return Err(SemiError::NonFinite { context: "semiclassical symbols", point: z });
        }
    }
    Ok((ph, p1h, pth))
}
