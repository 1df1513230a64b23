use std::path::PathBuf;

use crate::bench::BenchError;
use crate::graph::GraphError;
use crate::instance::InstanceError;
use crate::oracle::OracleError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Top-level error used by the CLI and the FFI layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Bench(#[from] BenchError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
