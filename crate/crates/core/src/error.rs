use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} is not normalized (squared norm {norm_sq})")]
    NotNormalized { what: &'static str, norm_sq: f64 },

    #[error("{0} must not be empty")]
    Empty(&'static str),

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),

    #[error("dimension `{0}` configured more than once")]
    DuplicateDimension(String),

    #[error("at least 2 dimensions are required, got {0}")]
    TooFewDimensions(usize),

    #[error("basis set {index} is not orthonormal")]
    NotOrthonormal { index: usize },

    #[error("matrix is not a valid {what}: {reason}")]
    InvalidOperator { what: &'static str, reason: String },

    #[error("n-settings inequality needs n >= 2, got {0}")]
    TooFewSettings(usize),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: missing score for dimension `{dimension}`")]
    MissingScore { line: usize, dimension: String },

    #[error("line {line}: unknown dimension `{dimension}` in scores")]
    UnexpectedScore { line: usize, dimension: String },

    #[error("line {line}: document `{doc_id}` appears twice in query `{query_id}`")]
    DuplicateDocument {
        line: usize,
        query_id: String,
        doc_id: String,
    },

    #[error("document `{0}` not found")]
    UnknownDocument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("pair {pair}: {source}")]
    Pair {
        pair: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Process exit code for this error: 1 for bad input, 2 for a broken internal invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 2,
            Error::Pair { source, .. } => source.exit_code(),
            _ => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
