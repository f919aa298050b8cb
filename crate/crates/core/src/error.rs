//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong in the exact pipelines.
///
/// Structural misuse (wrong spinor rank, mismatched form degree) panics
/// instead; these variants are reserved for data-dependent failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Evaluation of `p/r2^m` with `m > 0` at a point with `r2 = 0`.
    #[error("evaluation at the singularity r2 = 0")]
    EvalAtSingularity,
    /// The input must be harmonic (annihilated by the Laplacian) but is not.
    #[error("input is not harmonic")]
    NotHarmonic,
    /// The input 3-form must be closed but is not.
    #[error("input 3-form is not closed")]
    NotClosed,
    /// The operation is defined for polynomial fields only (`m = 0`).
    #[error("input has an r2-power denominator; polynomial input required")]
    NonPolynomialInput,
    /// The operation requires real (conjugation-invariant) coefficients.
    #[error("input must have real coefficients")]
    NonRealInput,
    /// The right-hand side violates the compatibility condition of the
    /// complex (the second operator does not annihilate it).
    #[error("right-hand side fails the compatibility condition")]
    IncompatibleRhs,
    /// The graded rational ansatz contains no solution up to the given
    /// denominator exponent bound.
    #[error("no solution in the graded rational ansatz with denominator bound {0}")]
    NoSolutionInAnsatz(u32),
    /// Malformed serialized value.
    #[error("invalid serialized value: {0}")]
    Decode(String),
}

pub type Result<T> = std::result::Result<T, Error>;
