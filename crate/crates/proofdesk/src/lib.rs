//! The user surface: an identity language, a command-line driver, and
//! proof-document emission.
//!
//! An identity file states a claim like
//!
//! ```text
//! sum k: binomial(n, k) / 2^n == 1
//! ```
//!
//! [`parser`] turns the text into an AST with positioned errors,
//! [`lower`] converts the AST into the engine's structured term form,
//! the certifier proves or refutes it, [`document`] writes the result up
//! as a self-contained article (text or LaTeX), and [`record`] persists
//! the certificate as JSON keyed to a fingerprint of the statement.
//! [`cli`] ties it all together behind the `ekhad` binary.

pub mod ast;
pub mod cli;
pub mod document;
pub mod error;
pub mod lower;
pub mod parser;
pub mod record;

pub use ast::{CallKind, Expr, IdentityAst, SumClause};
pub use document::{document_from_multi, document_from_report, Check, Closing, ProofDocument};
pub use error::DeskError;
pub use lower::{lower, sum_and_rhs, Lowered};
pub use parser::parse_identity;
pub use record::{identity_hash, CertRecord};
