use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input violates a type invariant or operation precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    /// A grid or curve does not cover the requested abscissa range.
    #[error("domain error: {0}")]
    Domain(String),

    /// Boundary extraction found no usable foreground region.
    #[error("extraction failed: {0}")]
    Extraction(String),

    /// A contour collapsed to a shape the metric stages cannot use.
    #[error("degenerate contour: {0}")]
    DegenerateContour(String),

    #[error("internal numerical error: {0}")]
    Internal(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("cannot decode image {path}: {msg}")]
    Decode { path: PathBuf, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}
