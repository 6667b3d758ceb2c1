//! Structured proper-hypergeometric terms.
//!
//! A [`HyperTerm`] is a product `c · ∏ atomᵢ^{eᵢ}` of factorials, binomials,
//! Pochhammer symbols, powers, sign factors `(-1)^L`, and polynomial factors,
//! whose arguments are integer-linear forms ([`LinForm`]) in the declared
//! variables.  The type supports the three operations the summation engine
//! is built on:
//!
//! * [`HyperTerm::shift_quotient`] — `t(v+1)/t(v)` as an exact rational
//!   function, the defining property of a hypergeometric term;
//! * [`HyperTerm::eval_exact`] — exact evaluation at integer points under the
//!   reciprocal-factorial convention (`1/(negative integer)! = 0`), which is
//!   what makes sums with symbolic bounds terminate;
//! * [`HyperTerm::natural_support`] — conservative symbolic bounds outside
//!   which the term vanishes.
//!
//! [`Identity`] packages a summand with a closed-form right-hand side and
//! normalizes claims to `Σ f̂ = 1` by dividing the summand by the right-hand
//! side at the atom level.

mod absorb;
mod atom;
mod error;
mod factored;
mod identity;
mod linform;
mod support;
mod term;

pub use absorb::mate_closed_form;
pub use atom::{AtomBody, HyperAtom};
pub use error::HyperError;
pub use factored::Factored;
pub use identity::{Identity, SumRange};
pub use linform::LinForm;
pub use support::{Bound, BoundKind, SupportBounds};
pub use term::HyperTerm;
