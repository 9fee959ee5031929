//! Experiment drivers for the `checkers` binary.
//!
//! [`config`] holds the flags, [`commands`] turns a config into a
//! [`report::Report`], and [`execute`] writes the report where the config
//! says.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

use std::path::PathBuf;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde_json::json;

pub use config::{Cli, Command, Format, RunConfig};
pub use error::CliError;
pub use report::Report;

/// Where the rendered report went.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    /// `None` when written to stdout.
    pub path: Option<PathBuf>,
}

/// Output file for `config`: `--out`, else `$CHECKERS_OUT_DIR/<command>.<ext>`.
pub fn output_path(config: &RunConfig) -> Option<PathBuf> {
    config.out.clone().or_else(|| {
        let dir = std::env::var_os(config::OUT_DIR_VAR).filter(|d| !d.is_empty())?;
        Some(PathBuf::from(dir).join(format!(
            "{}.{}",
            config.command.name(),
            config.format.extension()
        )))
    })
}

/// Sidecar path holding run metadata next to a data file.
pub fn metadata_path(data: &std::path::Path) -> PathBuf {
    let mut name = data.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    data.with_file_name(name)
}

/// Runs the command and writes its report. The data file is deterministic;
/// timing goes into the sidecar only.
pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let started = Instant::now();
    let report = commands::run(&config.command)?;
    let text = report.render(config.format);
    let path = output_path(config);
    match &path {
        None => print!("{text}"),
        Some(path) => {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| CliError::Io(dir.to_path_buf(), e))?;
            }
            std::fs::write(path, &text).map_err(|e| CliError::Io(path.clone(), e))?;
            let unix_time = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0);
            let meta = json!({
                "command": report.command,
                "version": env!("CARGO_PKG_VERSION"),
                "config": config,
                "finished_unix": unix_time,
                "elapsed_seconds": started.elapsed().as_secs_f64(),
                "passed": report.passed(),
                "failure": report.failure,
                "summary": report.summary,
            });
            let meta_path = metadata_path(path);
            let meta_text =
                serde_json::to_string_pretty(&meta).expect("metadata serializes") + "\n";
            std::fs::write(&meta_path, meta_text).map_err(|e| CliError::Io(meta_path, e))?;
        }
    }
    Ok(Outcome { report, path })
}
