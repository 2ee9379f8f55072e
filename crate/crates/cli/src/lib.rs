//! Library side of the `lclab` command: argument definitions, custom-function
//! ingestion, the triangle cache, and output rendering.
//!
//! Exit codes: `0` every check passed, `1` a check found failures, `2` usage
//! or runtime error.

pub mod args;
pub mod cache;
pub mod commands;
pub mod ingest;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

pub use args::Cli;
pub use commands::{execute, Outcome, RunConfig};

pub const CACHE_ENV: &str = "LCLAB_CACHE";

impl RunConfig {
    /// A non-empty `env_cache` (the value of `LCLAB_CACHE`) beats `--cache`.
    pub fn from_cli(cli: &Cli, env_cache: Option<OsString>) -> Self {
        let cache_dir = env_cache
            .filter(|v| !v.is_empty())
            .map(Into::into)
            .or_else(|| cli.cache.clone());
        RunConfig {
            format: Some(cli.format),
            cache_dir,
        }
    }
}

/// Runs a parsed command line and writes its output; returns the verdict.
pub fn run(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(usize::from(jobs))
            .build_global()?;
    }
    let cfg = RunConfig::from_cli(cli, std::env::var_os(CACHE_ENV));
    let outcome = execute(&cli.command, &cfg)?;
    match &cli.out {
        Some(path) => fs::write(path, &outcome.body)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(outcome.body.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(outcome.passed)
}
