use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument {value} outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("point has {got} coordinates, parameter space has {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no feasible point on the search grid")]
    InfeasibleSpace,

    #[error("invalid parameter space: {0}")]
    InvalidSpace(String),

    #[error("negative Ricean K-factor {0}")]
    NegativeKFactor(f64),

    #[error("non-finite value in Monte-Carlo expectation at sample {index}")]
    NonFinite { index: usize },

    #[error("line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("scheme `{scheme}` cannot be combined with {reason}")]
    Incompatible { scheme: String, reason: String },

    #[error("nothing to write: empty sweep")]
    EmptySweep,

    #[error("i/o failure: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl Error {
    /// Configuration problems map to exit code 1, numeric ones to 2.
    pub fn is_configuration(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::Incompatible { .. } | Error::NegativeKFactor(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
