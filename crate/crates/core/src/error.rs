use thiserror::Error;

/// Errors raised by the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("elements belong to different algebras")]
    MixedAlgebras,

    #[error("element is zero or not homogeneous{0}")]
    Inhomogeneous(String),

    #[error("invalid generator spec: {0}")]
    InvalidGeneratorSpec(String),

    #[error("invalid weight bound: {0}")]
    InvalidBound(String),

    #[error("unsupported cohomological degree {0} (at most 3)")]
    UnsupportedDegree(usize),

    #[error("weight {0} is odd; only even weights are allowed here")]
    OddWeight(i64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate datum for weight {0}")]
    DuplicateWeight(i64),

    #[error("declared degree {declared} does not match element weight {weight}")]
    WeightMismatch { declared: u32, weight: i64 },

    #[error("invalid module action: {0}")]
    InvalidAction(String),

    #[error("cocycle identity violated: {0}")]
    NotACocycle(String),

    #[error("integrity violation: {0}")]
    Integrity(String),

    #[error("count overflow: {0}")]
    Overflow(String),

    #[error("line {line}, column {column}: {message} (at `{token}`)")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        message: String,
    },
}

impl Error {
    pub fn inhomogeneous() -> Self {
        Error::Inhomogeneous(String::new())
    }

    pub fn inhomogeneous_ctx(ctx: impl std::fmt::Display) -> Self {
        Error::Inhomogeneous(format!(" ({ctx})"))
    }

    /// True for errors caused by malformed input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
