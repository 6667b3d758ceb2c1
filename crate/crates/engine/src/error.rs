//! Errors surfaced by certificate verification and discovery.

use thiserror::Error;
use wz_algebra::AlgebraError;
use wz_hyperterm::HyperError;

#[derive(Debug, Error)]
pub enum EngineError {
    /// The underlying term algebra rejected an operation.
    #[error(transparent)]
    Hyper(#[from] HyperError),

    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    /// Creative telescoping found no recurrence of order `1..=max_order`.
    #[error("no telescoped recurrence of order <= {max_order}")]
    NoRecurrence { max_order: usize },

    /// Gosper's algorithm decided that no hypergeometric antidifference
    /// exists for the WZ k-term, so the identity has no WZ pair; the sum
    /// may still satisfy a higher-order recurrence.
    #[error("no WZ pair: the difference term has no hypergeometric antidifference")]
    NoWzPair,

    /// A dense expansion would exceed the configured operation budget.
    #[error("expansion needs ~{required} operations but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    /// The request is structurally outside what the engine handles
    /// (wrong number of summation variables, unbounded ranges, ...).
    #[error("unsupported request: {0}")]
    Unsupported(String),
}
