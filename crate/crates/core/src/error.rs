//! Crate-wide error type.

/// Errors produced by the spectral machinery and the CLI layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The root bracket for an even eigenvalue contains no sign change.
    /// This signals a defect in the scaled residual, not bad user input.
    #[error("root bracketing failed for even eigenvalue m={index}: no sign change in [{lo}, {hi}]")]
    RootBracketing { index: usize, lo: f64, hi: f64 },

    /// Newton/bisection refinement stalled before reaching the requested
    /// residual tolerance.
    #[error("eigenvalue refinement for m={index} stalled at |G| = {residual:.3e} > tol = {tol:.3e}")]
    Tolerance {
        index: usize,
        residual: f64,
        tol: f64,
    },

    /// An integrand evaluated to a non-finite value at a quadrature node.
    #[error("non-finite sample at quadrature node x = {x}")]
    Evaluation { x: f64 },

    /// A dense steady-state system is too ill-conditioned to trust.
    #[error("linear system ill-conditioned: estimated 1-norm condition {cond:.3e} exceeds {limit:.1e}")]
    IllConditioned { cond: f64, limit: f64 },

    /// A dense factorization failed outright.
    #[error("singular linear system in {context}")]
    Singular { context: &'static str },

    /// A steady forcing with nonzero zero-mode projection cannot be balanced:
    /// the index-0 equation reads 0 * u0 = <f, phi_0>.
    #[error("incompatible forcing: zero-mode projection <f, phi_0> = {f0:.6e} must vanish")]
    Compatibility { f0: f64 },

    /// Invalid configuration (CLI flags, config file, study setup).
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
