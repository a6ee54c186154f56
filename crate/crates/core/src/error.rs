//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong below the CLI layer, plus the CLI's own
/// usage errors. Numeric payloads are reported as `f64` regardless of the
/// scalar the computation ran in.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error(
        "matrix is not Hermitian: entry ({row},{col}) deviates from its mirror by {deviation:.3e}"
    )]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },

    #[error("eigensolver did not converge after {sweeps} Jacobi sweeps (residual {residual:.3e})")]
    EigenNoConvergence { sweeps: usize, residual: f64 },

    #[error("matrix has no null vector: smallest singular value {smallest:.3e} exceeds tolerance {tol:.3e}")]
    NoNullVector { smallest: f64, tol: f64 },

    #[error("null space is degenerate: two smallest singular values {smallest:.3e}, {second:.3e} both below tolerance {tol:.3e}")]
    DegenerateNullSpace {
        smallest: f64,
        second: f64,
        tol: f64,
    },

    #[error("state invariant violated: {check} off by {value:.3e} (tolerance {tol:.3e})")]
    StateInvariant {
        check: &'static str,
        value: f64,
        tol: f64,
    },

    #[error("parameter out of bounds: {0}")]
    ParamBounds(String),

    #[error("state outside the real-coherence phase convention: |<S_y>| = {mean_y:.3e}")]
    PhaseConvention { mean_y: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error(
        "integration failure at t = {t:.4}: {what} drift {drift:.3e} exceeds {tol:.3e}; reduce dt"
    )]
    IntegrationFailure {
        t: f64,
        what: &'static str,
        drift: f64,
        tol: f64,
    },

    #[error("consistency failure in {check}: residual {residual:.3e} exceeds {tol:.3e}")]
    Inconsistency {
        check: String,
        residual: f64,
        tol: f64,
    },

    #[error("no sign change in bracket [{lo}, {hi}]: f(lo) = {f_lo:.3e}, f(hi) = {f_hi:.3e}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to: usage problems exit 1,
    /// numerical or consistency failures exit 2. Out-of-bounds parameters
    /// count as usage: on the command line they can only come from flags.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::ParamBounds(_) => 1,
            _ => 2,
        }
    }
}
