//! Batch front-end for the stability library: run configurations,
//! commands and CSV reports.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::path::PathBuf;

use thiserror::Error;

pub use commands::run_command;
pub use config::{parse_config, Command, RunConfig};
pub use output::emit_csv;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] fdtd_stab::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// 2 for invalid input, 3 for numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(fdtd_stab::Error::NumericalFailure(_) | fdtd_stab::Error::Overflow(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A verification or table comparison found a mismatch.
    Mismatch,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::Mismatch => 1,
        }
    }
}

/// Version line followed by the physical constants used for conversions.
pub fn version_text() -> String {
    format!(
        "fdtd-stab {}\neps0 = {:e} F/m\nmu0 = {:e} H/m\n",
        env!("CARGO_PKG_VERSION"),
        fdtd_stab::schemes::EPS0,
        fdtd_stab::schemes::MU0
    )
}
