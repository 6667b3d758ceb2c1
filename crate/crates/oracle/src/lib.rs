//! Brute-force exact cross-checks for certified identities.
//!
//! Everything in this crate computes the *same quantities* the certificate
//! engine reasons about, but by the dumbest correct route available: add up
//! the terms, expand the product, plug in the numbers.  No telescoping, no
//! certificates, no recurrences are trusted here — only exact integer and
//! rational arithmetic.  That independence is the point: when a certified
//! proof and an oracle evaluation agree on hundreds of instances, each is
//! evidence for the other; if they ever disagree, one of them has a bug and
//! the disagreement localizes it.
//!
//! This crate deliberately does not depend on the engine.  It shares only
//! the arithmetic substrate (`wz_algebra`) and the term model
//! (`wz_hyperterm`), both of which are exercised by their own test suites.
//!
//! The modules:
//!
//! * [`sums`] — literal summation of a term over explicit or
//!   naturally-resolved finite ranges.
//! * [`special`] — binomials, harmonic numbers, the Apéry numbers
//!   `A(n) = Σ C(n,k)²C(n+k,k)²`, and the harmonic-weighted sum that
//!   vanishes identically.
//! * [`qseries`] — truncated integer power series in `q`, the eta product
//!   `q·∏(1−q²ⁿ)⁴(1−q⁴ⁿ)⁴`, and the supercongruence check
//!   `A((p−1)/2) ≡ a(p) (mod p²)`.
//! * [`demos`] — the √2 descent step and the symmetric-function parable,
//!   mechanized as polynomial identities.

pub mod demos;
pub mod error;
pub mod qseries;
pub mod special;
pub mod sums;

pub use demos::{descent_identity_holds, parable_check, sqrt2_descent, DescentReport};
pub use error::OracleError;
pub use qseries::{beukers_check, eta_product, BeukersReport, QSeries};
pub use special::{ahlgren_ono_eval, apery, binomial, harmonic};
pub use sums::{exact_sum, exact_sum_multi, exact_sum_natural, natural_bounds};
