//! Error type of the front end and its mapping to process exit codes.

use pdnf_core::dsl::DslError;
use pdnf_core::normalizer::NormalizerError;
use pdnf_core::symmetry::SymmetryError;
use std::path::PathBuf;

/// Exit code for a completed run.
pub const EXIT_OK: i32 = 0;
/// Exit code for usage errors and inputs that do not parse.
pub const EXIT_USAGE: i32 = 1;
/// Exit code for a completed analysis that hit an obstruction.
pub const EXIT_OBSTRUCTION: i32 = 2;
/// Exit code for a violated internal invariant.
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: DslError,
    },
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error("{0}")]
    Usage(String),
    #[error("grid file line {line}: {message}")]
    Grid { line: usize, message: String },
    #[error("analysis cannot proceed: {0}")]
    Obstruction(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::Dsl(_)
            | CliError::Usage(_)
            | CliError::Grid { .. } => EXIT_USAGE,
            CliError::Obstruction(_) => EXIT_OBSTRUCTION,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<NormalizerError> for CliError {
    fn from(e: NormalizerError) -> Self {
        match e {
            NormalizerError::NoLinearPart | NormalizerError::ConstantTerm | NormalizerError::DegreeTooLow(_) => {
                CliError::Usage(e.to_string())
            }
            NormalizerError::NonCommuting { .. } | NormalizerError::SymmetryNotIdentity | NormalizerError::Flow(_) => {
                CliError::Obstruction(e.to_string())
            }
            NormalizerError::Internal { .. } | NormalizerError::Algebra(_) | NormalizerError::Homological(_) => {
                CliError::Internal(e.to_string())
            }
        }
    }
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::LinearPartsDoNotCommute => CliError::Obstruction(e.to_string()),
            SymmetryError::Shape { .. } | SymmetryError::ConstantTerm => CliError::Usage(e.to_string()),
            SymmetryError::Algebra(_) => CliError::Internal(e.to_string()),
        }
    }
}
