//! Error type shared by every module.

use alloc::string::String;

/// Result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while setting up or solving a problem.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A problem parameter violates its precondition.
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// A numerical argument is outside the domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested parameter combination is outside the supported regime.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Elimination hit a zero pivot at the given (0-based) column.
    #[error("matrix is singular (zero pivot in column {column})")]
    Singular {
        /// Column where elimination broke down.
        column: usize,
    },

    /// Vector or matrix sizes do not agree.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch {
        /// Expected length.
        expected: usize,
        /// Supplied length.
        found: usize,
    },

    /// The dispersion relation has no real roots for this `(t, gamma)`.
    #[error("dispersion relation has no real roots at t = {t}, gamma = {gamma}")]
    NoRealRoots {
        /// Mesh wavenumber `k h`.
        t: f64,
        /// Penalty parameter.
        gamma: f64,
    },

    /// The kernel was evaluated on its jump discontinuity.
    #[error("derivative kernel is discontinuous at x = s = {0}; pick a side")]
    AmbiguousKernel(f64),

    /// Adaptive panel refinement reached its cap without meeting tolerance.
    #[error("quadrature did not converge after {panels} panels")]
    QuadratureNotConverged {
        /// Panel count at the last attempt.
        panels: usize,
    },

    /// Unscaled coefficients would overflow double precision.
    #[error("coefficients overflow for n = {n}; use the scaled representation")]
    Overflow {
        /// Element count that triggered the overflow.
        n: usize,
    },
}
