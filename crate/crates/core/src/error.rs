//! Error type shared by every solver in this crate.

/// Errors produced by series evaluation, root finding, quadrature and the
/// higher-level solvers built on top of them.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument fell outside the supported domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A power series hit its term budget before the truncation criterion.
    #[error("series did not converge: {0}")]
    NonConvergence(String),

    /// A root scan found no sign change on the stated interval.
    #[error("no bracket found: {0}")]
    BracketNotFound(String),

    /// Adaptive quadrature exhausted its recursion depth. Reports the worst
    /// subinterval together with its local estimate and error.
    #[error("quadrature depth exceeded on [{lo}, {hi}] (estimate {estimate}, local error {error})")]
    DepthExceeded {
        lo: f64,
        hi: f64,
        estimate: f64,
        error: f64,
    },

    /// A function handle produced a non-finite value.
    #[error("evaluation error at x = {x}: {message}")]
    Evaluation { x: f64, message: String },

    /// A fixed-point or damped iteration stalled.
    #[error("iteration did not converge: {0}")]
    NonConvergentIteration(String),

    /// Structured input (domain block, config file) failed to parse.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
