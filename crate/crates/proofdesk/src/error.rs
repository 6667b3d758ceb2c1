//! Desk-level errors and their mapping onto process exit codes.
//!
//! The `ekhad` driver promises a small, stable exit-code contract:
//!
//! | code | meaning                                   |
//! |------|-------------------------------------------|
//! | 0    | proved / success                          |
//! | 1    | refuted, or a verification failed         |
//! | 2    | inconclusive (no certificate found)       |
//! | 3    | usage, parse, or input error              |
//! | 4    | resource budget exceeded                  |

use thiserror::Error;
use wz_engine::EngineError;
use wz_hyperterm::HyperError;

#[derive(Debug, Error)]
pub enum DeskError {
    /// The DSL text failed to tokenize or parse.
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: u32,
        column: u32,
        message: String,
    },

    /// The DSL text parsed but means something the engine cannot accept
    /// (non-linear factorial argument, summation variable on the
    /// right-hand side, and so on).
    #[error("line {line}, column {column}: {message}")]
    Semantic {
        line: u32,
        column: u32,
        message: String,
    },

    /// A usage problem outside the DSL text: missing bindings, a
    /// certificate for a different identity, malformed `--at` syntax.
    #[error("{0}")]
    Usage(String),

    /// A certificate record failed to decode.
    #[error("certificate record: {0}")]
    Record(String),

    #[error("{0}")]
    Io(String),

    #[error(transparent)]
    Engine(#[from] EngineError),

    #[error(transparent)]
    Hyper(#[from] HyperError),

    #[error(transparent)]
    Oracle(#[from] wz_oracle::OracleError),
}

impl DeskError {
    /// The exit code this error maps to under the driver's contract.
    pub fn exit_code(&self) -> i32 {
        match self {
            DeskError::Parse { .. }
            | DeskError::Semantic { .. }
            | DeskError::Usage(_)
            | DeskError::Record(_)
            | DeskError::Io(_) => 3,
            DeskError::Engine(EngineError::BudgetExceeded { .. }) => 4,
            DeskError::Engine(EngineError::NoRecurrence { .. })
            | DeskError::Engine(EngineError::NoWzPair) => 2,
            DeskError::Engine(EngineError::Unsupported(_)) => 3,
            DeskError::Engine(_) => 2,
            DeskError::Hyper(_) => 3,
            DeskError::Oracle(_) => 3,
        }
    }
}

impl From<std::io::Error> for DeskError {
    fn from(e: std::io::Error) -> Self {
        DeskError::Io(e.to_string())
    }
}
