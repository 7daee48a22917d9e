//! Seeded verification campaigns over the `nilaut` core, one suite per
//! statement, with canonical JSON reports.
//!
//! Every trial draws from `trial_rng(check_seed, trial)`, where
//! `check_seed` mixes the master seed with the check's label, so serial
//! and parallel runs produce the same records in trial order.

use std::path::PathBuf;

pub mod config;
pub mod report;
mod runner;
mod suites;

pub use config::{parse_m_range, ConfigFile, Suite, SuiteConfig};
pub use report::{emit_report, Check, Report, Status};
pub use runner::check_seed;
pub use suites::run_suite;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("cannot read config {}: {msg}", path.display())]
    Config { path: PathBuf, msg: String },
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] nilaut::Error),
}

impl HarnessError {
    /// 2 for usage errors, 3 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Usage(_) | HarnessError::Config { .. } => 2,
            HarnessError::Io { .. } | HarnessError::Core(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(HarnessError::Usage(msg.into()))
}
