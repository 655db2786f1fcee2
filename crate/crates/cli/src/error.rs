use mittag_core::fde::SolverError;
use mittag_core::linalg::LinalgError;
use mittag_core::matfun::MatrixFunctionError;
use mittag_core::special::SpecialError;
use thiserror::Error;

/// Process exit codes shared by every subcommand.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFY_FAILED: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const DOMAIN: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error("numerical failure in {stage}: {message}")]
    Numerical {
        stage: &'static str,
        message: String,
    },
    #[error("domain limit: {0}")]
    Domain(String),
    #[error("verification failed: {0}")]
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Read { .. } | CliError::Format { .. } => exit::USAGE,
            CliError::Write { .. } | CliError::Numerical { .. } => exit::NUMERICAL,
            CliError::Domain(_) => exit::DOMAIN,
            CliError::VerifyFailed(_) => exit::VERIFY_FAILED,
        }
    }
}

fn from_linalg(e: LinalgError) -> CliError {
    match e {
        LinalgError::NotSquare { .. }
        | LinalgError::EmptyMatrix
        | LinalgError::DataLength { .. } => CliError::Usage(e.to_string()),
        other => CliError::Numerical {
            stage: "Jordan decomposition",
            message: other.to_string(),
        },
    }
}

fn from_special(e: SpecialError) -> CliError {
    match e {
        SpecialError::InvalidParams(m) => CliError::Usage(m),
        other => CliError::Numerical {
            stage: "scalar Mittag-Leffler evaluation",
            message: other.to_string(),
        },
    }
}

impl From<MatrixFunctionError> for CliError {
    fn from(e: MatrixFunctionError) -> Self {
        match e {
            MatrixFunctionError::DomainLimit { .. } => CliError::Domain(e.to_string()),
            MatrixFunctionError::NotSquare { .. }
            | MatrixFunctionError::InvalidAlpha(_)
            | MatrixFunctionError::InvalidTime(_) => CliError::Usage(e.to_string()),
            MatrixFunctionError::Linalg(l) => from_linalg(l),
            MatrixFunctionError::Special(s) => from_special(s),
            other => CliError::Numerical {
                stage: "matrix function assembly",
                message: other.to_string(),
            },
        }
    }
}

impl From<SpecialError> for CliError {
    fn from(e: SpecialError) -> Self {
        from_special(e)
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        from_linalg(e)
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::InvalidProblem(m) | SolverError::InvalidSpec(m) => CliError::Usage(m),
            SolverError::Forcing { .. } => CliError::Usage(e.to_string()),
            SolverError::SingularReference => CliError::Usage(e.to_string()),
            SolverError::MatrixFunction(m) => m.into(),
        }
    }
}
