//! Library side of the `momangle` command-line tool: the complex file format,
//! JSON reports, and the subcommands themselves.

pub mod commands;
pub mod complex_file;
pub mod report;

use momangle::duality::DualityError;
use momangle::moment_angle::MomentAngleError;
use momangle::polyjoin::PolyjoinError;
use momangle::products::ProductError;
use thiserror::Error;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_FAIL: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_ORACLE: u8 = 4;
pub const EXIT_INCONSISTENT: u8 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        source: complex_file::ParseError,
    },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("{0}")]
    Inconsistent(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::OracleMismatch(_) => EXIT_ORACLE,
            CliError::Inconsistent(_) | CliError::Internal(_) => EXIT_INCONSISTENT,
        }
    }
}

impl From<MomentAngleError> for CliError {
    fn from(e: MomentAngleError) -> Self {
        match e {
            MomentAngleError::Void => CliError::Input(e.to_string()),
            MomentAngleError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<DualityError> for CliError {
    fn from(e: DualityError) -> Self {
        match e {
            DualityError::Void | DualityError::Complex(_) => CliError::Input(e.to_string()),
            DualityError::CapExceeded { .. } => CliError::Budget(e.to_string()),
            DualityError::Inconsistent(_) => CliError::Inconsistent(e.to_string()),
            DualityError::MomentAngle(inner)
            | DualityError::Product(ProductError::MomentAngle(inner)) => inner.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<PolyjoinError> for CliError {
    fn from(e: PolyjoinError) -> Self {
        match e {
            PolyjoinError::TooManyVertices(_) | PolyjoinError::Budget(_) => {
                CliError::Budget(e.to_string())
            }
            PolyjoinError::Duality(inner) => inner.into(),
            other => CliError::Input(other.to_string()),
        }
    }
}

/// What a subcommand prints and how the process exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub exit: u8,
}

#[cfg(test)]
mod tests {
    use super::*;
    use momangle::moment_angle::MomentAngleError;

    #[test]
    fn exit_code_contract() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::from(MomentAngleError::Void).exit_code(), 2);
        assert_eq!(
            CliError::from(MomentAngleError::CapExceeded { m: 20, cap: 16 }).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(DualityError::CapExceeded { m: 13, cap: 12 }).exit_code(),
            3
        );
        assert_eq!(CliError::OracleMismatch("x".into()).exit_code(), 4);
        assert_eq!(
            CliError::from(DualityError::Inconsistent("x".into())).exit_code(),
            5
        );
        assert_eq!(
            CliError::from(PolyjoinError::TooManyVertices(40)).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(PolyjoinError::PairCount { base: 2, pairs: 1 }).exit_code(),
            2
        );
    }
}
