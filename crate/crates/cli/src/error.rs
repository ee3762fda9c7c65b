use std::path::PathBuf;

use k3g2_core::error::{G2Error, InvolutionError, TorusError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read data file {path}: {source}")]
    ReadData {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid data file {path}: {reason}")]
    InvalidData { path: String, reason: String },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot build thread pool: {0}")]
    ThreadPool(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error(transparent)]
    Involution(#[from] InvolutionError),
    #[error(transparent)]
    G2(#[from] G2Error),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 1 verification failure, 2 internal invariant violation, 3 missing or invalid data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::VerificationFailed(_) => 1,
            Self::ReadData { .. } | Self::InvalidData { .. } => 3,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::VerificationFailed("x".into()).exit_code(), 1);
        assert_eq!(CliError::InvalidData { path: "p".into(), reason: "r".into() }.exit_code(), 3);
        assert_eq!(CliError::ThreadPool("x".into()).exit_code(), 2);
        assert_eq!(CliError::G2(G2Error::EmptyLocus).exit_code(), 2);
    }
}
