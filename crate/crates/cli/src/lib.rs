//! Experiment orchestration, reports and exponent fits for the congested
//! clique lab. The `clique-lab` binary is a thin layer over this crate.

pub mod config;
pub mod experiment;
pub mod fit;
pub mod report;

use clique_algos::AlgoError;
use clique_core::{EngineError, GraphError};
use clique_nondet::NondetError;
use clique_oracle::solve::OracleError;
use thiserror::Error;

pub use config::{Algorithm, ExperimentConfig, OutputFormat};
pub use experiment::{run_experiment, Row, Verdict};
pub use fit::ExponentFit;
pub use report::{validate_report, Report, REPORT_VERSION};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("graph file: {0}")]
    Graph(#[from] GraphError),
    #[error("correctness check failed: {0}")]
    Mismatch(String),
    #[error("{0}")]
    Limit(String),
}

impl CliError {
    /// 0 success, 1 correctness mismatch, 2 configuration, 3 guard or timeout.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Config(_) | CliError::Io { .. } | CliError::Graph(_) => 2,
            CliError::Limit(_) => 3,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Timeout { .. } => CliError::Limit(e.to_string()),
            EngineError::TooFewNodes { .. } | EngineError::AuxLength { .. } => CliError::Config(e.to_string()),
            _ => CliError::Mismatch(e.to_string()),
        }
    }
}

impl From<AlgoError> for CliError {
    fn from(e: AlgoError) -> Self {
        match e {
            AlgoError::Engine(e) => e.into(),
            AlgoError::Parameter(m) => CliError::Config(m),
            AlgoError::Internal(m) => CliError::Mismatch(m),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Spec(m) => CliError::Config(m),
            _ => CliError::Limit(e.to_string()),
        }
    }
}

impl From<NondetError> for CliError {
    fn from(e: NondetError) -> Self {
        match e {
            NondetError::Engine(e) => e.into(),
            NondetError::Guard(_) | NondetError::Unsupported(_) => CliError::Limit(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })
}

pub fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}
