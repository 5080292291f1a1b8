//! Command-line front end and HTTP session server for `cluster-core`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 malformed input,
//! 3 budget exhausted.

pub mod commands;
pub mod input;
pub mod server;
pub mod session;

use thiserror::Error;

use cluster_core::exchange::ExchangeError;
use cluster_core::gca::GcaError;
use cluster_core::pattern::PatternError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        match e {
            PatternError::Budget(m) => CliError::Budget(m),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<GcaError> for CliError {
    fn from(e: GcaError) -> Self {
        match e {
            GcaError::Pattern(p) => p.into(),
            e => CliError::Input(e.to_string()),
        }
    }
}

impl From<ExchangeError> for CliError {
    fn from(e: ExchangeError) -> Self {
        match e {
            ExchangeError::BudgetExceeded { explored } => CliError::Budget(format!("{explored} matrices explored")),
            e => CliError::Input(e.to_string()),
        }
    }
}
