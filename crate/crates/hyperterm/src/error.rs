//! Errors raised while building, transforming, or evaluating terms.

use thiserror::Error;
use wz_algebra::AlgebraError;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperError {
    /// An atom was constructed from arguments it cannot represent
    /// (e.g. a power with a non-constant polynomial exponent where an
    /// integer is required).
    #[error("invalid atom: {0}")]
    InvalidAtom(String),

    /// A shift quotient was requested for something that is not
    /// hypergeometric in the shifted variable.
    #[error("term is not hypergeometric in `{var}`: {reason}")]
    NotHypergeometric { var: String, reason: String },

    /// Exact evaluation hit a genuine pole (a negative-integer factorial in a
    /// numerator position, or an uncancelled zero denominator).
    #[error("pole at evaluation point: {0}")]
    Pole(String),

    /// An exponent that must be an integer evaluated to a non-integer.
    #[error("exponent `{0}` is not an integer at the evaluation point")]
    NonIntegerExponent(String),

    /// A factorial/Pochhammer-length argument evaluated to a non-integer.
    #[error("argument `{0}` must evaluate to an integer")]
    NonIntegerArgument(String),

    /// Evaluation or specialization referenced a variable with no binding.
    #[error("no binding for variable `{0}`")]
    UnboundVariable(String),

    /// An operation that needs a nonzero term received zero
    /// (terms themselves are never zero; this guards constructors).
    #[error("term would be identically zero")]
    IdenticallyZero,

    /// An identity's closed form mentioned a summation variable.
    #[error("right-hand side mentions summation variable `{0}`")]
    RhsContainsSummationVariable(String),

    /// An underlying polynomial/rational-function operation failed.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
