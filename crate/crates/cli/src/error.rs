use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },

    #[error("{}: {source}", path.display())]
    Invalid { path: PathBuf, source: k3_lattice::Error },

    #[error(transparent)]
    Domain(#[from] k3_lattice::Error),
}

impl CliError {
    /// 1 for failed preconditions of a computation, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            _ => 2,
        }
    }
}
