use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {left} vs {right} nodes")]
    GridMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    /// The tracking error reached or crossed the funnel boundary. Carries the
    /// time, the offending error value, and the boundary 1/φ(t).
    #[error("funnel violation at t = {t:.6}: |e| = {error:.6e} vs boundary {boundary:.6e}")]
    FunnelViolation { t: f64, error: f64, boundary: f64 },

    #[error("integration failed at t = {t:.6} (dt = {dt:.3e}, {rejections} rejections): {reason}")]
    StepFailure {
        t: f64,
        dt: f64,
        rejections: u32,
        reason: String,
    },

    #[error("state not in operator domain: {0}")]
    DomainViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
