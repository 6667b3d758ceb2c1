//! Failure modes of the oracle checks.

use thiserror::Error;
use wz_hyperterm::HyperError;

#[derive(Debug, Error)]
pub enum OracleError {
    /// Term evaluation or support analysis failed.
    #[error(transparent)]
    Hyper(#[from] HyperError),

    /// A summation variable has no finite natural range at the given point,
    /// so literal summation cannot terminate.
    #[error("summation over `{0}` has no finite bounds at this point")]
    UnboundedRange(String),

    /// A coefficient beyond the truncation order of a q-series was
    /// requested; the series simply does not know it.
    #[error("q-series is truncated at order {order}, but the coefficient of q^{wanted} is needed")]
    Truncated { wanted: usize, order: usize },

    /// An argument outside the domain of a check (e.g. a composite or even
    /// modulus where an odd prime is required).
    #[error("{0}")]
    InvalidInput(String),
}
