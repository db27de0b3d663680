use std::io;
use std::path::PathBuf;

use charnet_core::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 2 usage, 3 bad data, 4 internal invariant violation.
    pub fn exit_code(&self) -> u8 {
        let core = match self {
            CliError::Usage(_) => return 2,
            CliError::Read { .. } | CliError::Write { .. } => return 3,
            CliError::Input { source, .. } | CliError::Core(source) => source,
        };
        match core {
            Error::Invariant(_) | Error::EigenvalueOutOfRange(_) => 4,
            Error::InvalidParameter(_) => 2,
            _ => 3,
        }
    }
}
