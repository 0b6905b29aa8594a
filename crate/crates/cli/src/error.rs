//! Error classification driving the process exit code: 1 usage, 2 data
//! or parse problems, 3 internal invariant violations.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "data error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<qelab_core::corpus::CorpusError> for CliError {
    fn from(e: qelab_core::corpus::CorpusError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<qelab_core::index::IndexError> for CliError {
    fn from(e: qelab_core::index::IndexError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<qelab_core::wordnet::LexiconError> for CliError {
    fn from(e: qelab_core::wordnet::LexiconError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<qelab_core::eval::EvalError> for CliError {
    fn from(e: qelab_core::eval::EvalError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<qelab_core::expand::ConfigError> for CliError {
    fn from(e: qelab_core::expand::ConfigError) -> Self {
        CliError::Usage(e.to_string())
    }
}
