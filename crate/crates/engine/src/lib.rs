//! Certificate verification and discovery for hypergeometric summation.
//!
//! A summand `F(n,k)` whose sum should equal 1 for every `n` is proved by
//! exhibiting a mate `G = R·F` with
//!
//! ```text
//! F(n+1,k) − F(n,k) = G(n,k+1) − G(n,k)
//! ```
//!
//! so that summing over `k` telescopes the right side away.  Everything in
//! this crate revolves around that equation: [`certifier`] checks a claimed
//! rational certificate `R` symbolically and completes the proof with
//! boundary vanishing and a base case; [`telescoper`] discovers certificates
//! (Gosper's decision procedure for indefinite sums, creative telescoping
//! for definite ones); [`multiwz`] does the several-summation-variable
//! analogue and evaluates Dyson-style constant terms via [`laurent`].
//!
//! Exactness discipline: every verdict-path computation is symbolic
//! polynomial arithmetic; numeric evaluation appears only in boundary/base
//! evidence, and there it is exact rational arithmetic.

pub mod certifier;
pub mod error;
pub mod laurent;
pub mod linalg;
pub mod multiwz;
pub mod telescoper;

pub use certifier::{
    certify_identity, match_convention, verify_recurrence_telescoping, verify_support_and_base,
    verify_wz_rational, CertReport, Certificate, Convention, SupportBaseReport, Verdict, WzCheck,
};
pub use error::EngineError;
pub use laurent::{constant_term, dyson_product, LaurentPoly, DEFAULT_BUDGET};
pub use multiwz::{find_multi_ansatz, verify_multi, MultiCert};
pub use telescoper::{gosper, wz_certificate_find, zeilberger, Recurrence};
