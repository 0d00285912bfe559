use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("basis file parse error at line {line}: {message}")]
    BasisParse { line: usize, message: String },

    #[error("{what} did not converge after {iterations} iterations (last residual {residual:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A numerical identity that must hold exactly was violated (phase or convention bug).
    #[error("internal consistency violated: {0}")]
    Consistency(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("peak at scan boundary: {0}")]
    Boundary(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("scan point at {ell} angstrom failed: {source}")]
    ScanPoint {
        ell: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

/// Coarse failure classes, mapped to process exit codes by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Usage,
    Numerical,
    Io,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config(_) | Error::Contract(_) | Error::Parse(_) | Error::BasisParse { .. } => {
                ErrorClass::Usage
            }
            Error::Io { .. } => ErrorClass::Io,
            Error::ScanPoint { source, .. } => source.class(),
            _ => ErrorClass::Numerical,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
