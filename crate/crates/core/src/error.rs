use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value lies outside the support or parameter space.
    #[error("domain error: {0}")]
    Domain(String),

    /// An argument is malformed (empty sample, zero replications, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The requested statistic/estimator combination has no fixed null
    /// distribution.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{}, line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
