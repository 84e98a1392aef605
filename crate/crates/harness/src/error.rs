use std::path::PathBuf;

use minshift_core::{DistError, FitError, SampleError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("{path}: no data rows")]
    EmptyFile { path: PathBuf },
    #[error("invalid experiment spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Distribution(#[from] DistError),
    #[error(transparent)]
    Sample(#[from] SampleError),
    #[error("failed to serialize report: {0}")]
    Serialize(String),
}

impl HarnessError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures of the filesystem rather than of the input's content.
    pub fn is_io(&self) -> bool {
        matches!(self, HarnessError::Io { .. })
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
