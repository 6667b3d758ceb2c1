//! Exact commutative algebra over ℚ.
//!
//! Provides the three arithmetic layers everything else is built on:
//!
//! * [`Rat`] — arbitrary-precision rationals (re-exported from `num-rational`),
//!   always stored in lowest terms with a positive denominator, plus the
//!   [`rat`]/[`int`] convenience constructors.
//! * [`MultiPoly`] — sparse multivariate polynomials with rational
//!   coefficients, compared and displayed in graded lexicographic order.
//! * [`RatFunc`] — quotients of [`MultiPoly`] kept in a canonical reduced form
//!   so that structural equality is mathematical equality.
//!
//! All operations are exact; nothing in this crate ever rounds.

mod error;
mod gcd;
mod monomial;
mod multipoly;
mod ratfunc;
mod rational;

pub use error::AlgebraError;
pub use gcd::poly_gcd;
pub use monomial::Monomial;
pub use multipoly::MultiPoly;
pub use ratfunc::{Binding, RatFunc};
pub use rational::{int, rat, Int, Rat};
