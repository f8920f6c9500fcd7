use thiserror::Error;

use crate::cheeger::PartitionCertificate;
use crate::graph::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {}", join(.0))]
    InvalidGraph(Vec<Violation>),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The input does not satisfy the hypotheses of the requested check.
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("eigenpair residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },

    /// The exact search hit its state budget. Carries the best certificate
    /// found so far, if any.
    #[error("search budget of {max_states} states exhausted")]
    BudgetExceeded {
        max_states: u64,
        best: Option<Box<PartitionCertificate>>,
    },

    #[error("perturbed instance is not generic: {0}; try another seed")]
    NotGeneric(String),

    #[error("i/o error: {0}")]
    Io(String),
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
