//! Sweeps, reports and command-line plumbing for the `homcert` binary.

pub mod config;
pub mod input;
pub mod report;
pub mod sweep;

use homcert::Limits;

pub use config::{Check, SweepConfig};
pub use report::{Record, Status, SweepReport};
pub use sweep::run_sweep;

/// Environment variable overriding the default resource guards.
pub const GUARD_ENV: &str = "HOMCERT_GUARD_LIMIT";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] homcert::Error),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Usage(String),
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
}

impl HarnessError {
    /// Process exit status: 64 for usage errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            HarnessError::Usage(_) | HarnessError::Config(_) => 64,
            _ => 1,
        }
    }
}

/// Guards from, in priority order, an explicit cap, the environment, a
/// config value, or the defaults. One cap applies to every guard.
pub fn resolve_limits(flag: Option<u64>, config: Option<u64>) -> Result<Limits, HarnessError> {
    if let Some(cap) = flag {
        return Ok(Limits::uniform(cap));
    }
    if let Ok(text) = std::env::var(GUARD_ENV) {
        let cap = text
            .trim()
            .parse()
            .map_err(|_| HarnessError::Usage(format!("{GUARD_ENV}={text} is not a nonnegative integer")))?;
        return Ok(Limits::uniform(cap));
    }
    Ok(config.map(Limits::uniform).unwrap_or_default())
}
