use thiserror::Error;

/// Convenience alias used across the crate.
pub type Result<T> = std::result::Result<T, SemiError>;

#[derive(Debug, Error)]
pub enum SemiError {
    #[error("non-finite value during {context} at point {point:?}")]
    NonFinite { context: &'static str, point: Vec<f64> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("integrator step size underflow near t = {t}; state magnitude {magnitude:.3e}")]
    StepUnderflow { t: f64, magnitude: f64 },

    #[error("Newton inversion failed after {iters} iterations; residual {residual:.3e} at t = {t}")]
    NewtonDiverged { iters: usize, residual: f64, t: f64 },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("frequency tail mass {mass:.3e} exceeds limit {limit:.3e}")]
    FrequencyTail { mass: f64, limit: f64 },

    #[error("characteristic left the tabulated x range at t = {t}, xi = {xi}: x = {x}")]
    CharacteristicEscape { t: f64, xi: f64, x: f64 },

    #[error("turning point: eikonal discriminant nonpositive at x = {x}")]
    TurningPoint { x: f64 },

    #[error("dense eigendecomposition limited to n <= {limit}, requested {n}")]
    EigSizeLimit { n: usize, limit: usize },

    #[error("method {method} not applicable: {why}")]
    MethodMismatch { method: &'static str, why: String },

    #[error("power iteration failed to settle: relative spread {spread:.3e}")]
    PowerIterationUnsettled { spread: f64 },

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("resolution check failed: {0}")]
    Resolution(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("toml: {0}")]
    Toml(#[from] toml::de::Error),

    #[error("corrupt table file: {0}")]
    CorruptTable(String),
}
