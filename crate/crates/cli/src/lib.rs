//! Command-line front end for `nlkg-core`: single evaluations, sweeps,
//! figure datasets and the cross-oracle validation suite.

// `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod csv;
pub mod svg;
pub mod validate;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] nlkg_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("validation failed")]
    ValidationFailed,
}

impl CliError {
    /// 1 for validation failures, 2 for usage, domain and IO errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ValidationFailed => 1,
            _ => 2,
        }
    }

    pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}
