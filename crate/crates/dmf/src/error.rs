//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by matrix algebra, frame machinery, solvers, and the CLI glue.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix or series input contained NaN or infinity.
    #[error("non-finite input in {0}")]
    NonFinite(&'static str),

    /// Matrix inversion was requested for a near-singular matrix.
    #[error("matrix is near-singular (|det| = {det:.3e})")]
    Singular {
        /// Determinant estimate of the offending matrix.
        det: f64,
    },

    /// A Lie algebra basis index exceeded the algebra dimension.
    #[error("basis index {index} out of range for algebra of dimension {dim}")]
    BasisIndex {
        /// Offending index (zero-based).
        index: usize,
        /// Algebra dimension.
        dim: usize,
    },

    /// A curve or series did not cover the shifts a stencil needs.
    #[error("window too short at n = {n}: offsets {lo}..={hi} required")]
    WindowTooShort {
        /// Base index of the evaluation.
        n: i64,
        /// Lowest required offset (absolute index).
        lo: i64,
        /// Highest required offset (absolute index).
        hi: i64,
    },

    /// A window violated the admissibility condition of a group action.
    #[error("inadmissible window for {action} at n = {n}: {reason}")]
    Inadmissible {
        /// Action name.
        action: &'static str,
        /// Base index of the offending window.
        n: i64,
        /// Which condition failed.
        reason: String,
    },

    /// The scaling recurrence left the branch where the frame exists.
    #[error("branch violation at n = {n}: kappa = {kappa} must exceed 1")]
    Branch {
        /// Index at which the violation occurred.
        n: i64,
        /// Offending invariant value.
        kappa: f64,
    },

    /// Closed-form or solver parameters were outside their stated domain.
    #[error("parameter out of domain: {0}")]
    Parameter(String),

    /// Supplied conservation constants contradict the invariant data.
    #[error("inconsistent conservation constants: {0}")]
    InconsistentConstants(String),

    /// A Newton step failed to converge.
    #[error("step failed at n = {n}: residual {residual:.3e} after {iters} iterations")]
    StepFailure {
        /// Index of the failed step.
        n: i64,
        /// Last residual max-norm.
        residual: f64,
        /// Iterations spent.
        iters: usize,
    },

    /// Adaptive ODE integration could not proceed.
    #[error("integration failure: {0}")]
    Integration(String),

    /// Curve comparison was impossible (empty overlap and the like).
    #[error("comparison failure: {0}")]
    Comparison(String),

    /// Bad CLI or config-file input.
    #[error("configuration error: {0}")]
    Config(String),

    /// File output failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
