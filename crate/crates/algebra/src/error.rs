use thiserror::Error;

/// Errors raised by exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    /// Division by the zero polynomial or a zero denominator.
    #[error("division by zero")]
    DivisionByZero,
    /// gcd(0, 0) is undefined.
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZero,
    /// Evaluation or specialization hit a zero of the denominator.
    #[error("evaluation at a pole: denominator vanishes at {point}")]
    Pole { point: String },
    /// A substitution or evaluation referenced a variable with no binding.
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    /// Exact division was requested but the divisor does not divide.
    #[error("inexact polynomial division")]
    InexactDivision,
}
