use thiserror::Error;

/// Errors shared across the solver, transform and experiment layers.
#[derive(Debug, Error)]
pub enum MgtError {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Operation called in a way its contract forbids.
    #[error("usage error: {0}")]
    Usage(String),

    /// Characteristic roots too close for the explicit kernel formulas.
    #[error("degenerate root configuration at rho={rho}: {detail}")]
    Degenerate { rho: f64, detail: String },

    /// Grid too coarse (or too short) for the requested target accuracy.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// Two radial functions do not live on the same grid.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Adaptive time integration could not proceed.
    #[error("integration failure: {0}")]
    IntegrationFailure(String),

    /// Slope fitting impossible or unreliable on the supplied data.
    #[error("fit error: {0}")]
    Fit(String),

    /// Values below the floating-point floor; no rate can be extracted.
    #[error("saturation: {0}")]
    Saturation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, MgtError>;
