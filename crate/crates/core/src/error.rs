use thiserror::Error;

/// Errors raised across scene construction, evaluation, analysis and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// Evaluation point lies on a wire axis (or on a finite segment).
    #[error("field singularity: point lies on wire {wire}")]
    Singularity { wire: usize },

    #[error("mode error: {0}")]
    Mode(String),

    #[error("no path between cells {from:?} and {to:?} through unmasked cells")]
    NoPath { from: [usize; 3], to: [usize; 3] },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("format error: {0}")]
    Format(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Singularity { .. } | Error::NoPath { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
