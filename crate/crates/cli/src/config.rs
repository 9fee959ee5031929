//! Command-line flags and their JSON form.
//!
//! Every flag lives in [`RunConfig`], which serializes to the file read by
//! `--config`, so a saved config replays the invocation that produced it.

use std::f64::consts::FRAC_PI_3;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_VAR: &str = "CHECKERS_OUT_DIR";

#[derive(Debug, Parser)]
#[command(
    name = "checkers",
    version,
    about = "Thin-film reflection on the checkers lattice"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Output file; defaults to `$CHECKERS_OUT_DIR/<command>.<ext>`, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Replay a saved configuration instead of a subcommand.
    #[arg(long, conflicts_with = "save_config")]
    pub config: Option<PathBuf>,

    /// Write the effective configuration as JSON before running.
    #[arg(long)]
    pub save_config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Option<Command>,
}

impl Cli {
    /// Resolves flags and an optional config file into one [`RunConfig`].
    /// `--format` and `--out` on the command line override the file.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut config = match (self.config, self.command) {
            (Some(_), Some(_)) => {
                return Err(CliError::InvalidConfig(
                    "--config replaces the subcommand; give one or the other".into(),
                ))
            }
            (None, None) => return Err(CliError::InvalidConfig("no subcommand given".into())),
            (Some(path), None) => RunConfig::load(&path)?,
            (None, Some(command)) => RunConfig {
                format: Format::Csv,
                out: None,
                command,
            },
        };
        if let Some(format) = self.format {
            config.format = format;
        }
        if self.out.is_some() {
            config.out = self.out;
        }
        if let Some(path) = self.save_config {
            config.save(&path)?;
        }
        Ok(config)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// One fully specified invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(default)]
    pub format: Format,
    #[serde(default)]
    pub out: Option<PathBuf>,
    pub command: Command,
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, CliError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::InvalidConfig(format!("{}: {e}", path.display())))
    }

    pub fn save(&self, path: &std::path::Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self).expect("config serializes");
        std::fs::write(path, text + "\n").map_err(|e| CliError::Io(path.to_path_buf(), e))
    }
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "lowercase")]
pub enum Command {
    /// Reflection probability for one film, against the continuum formula.
    Reflect(ReflectArgs),
    /// Reflection probability as a function of film thickness.
    Sweep(SweepArgs),
    /// Error against the continuum formula as the lattice step is refined.
    Converge(ConvergeArgs),
    /// Spectral radius of the one-step transfer operator.
    Spectral(SpectralArgs),
    /// Cross-checks between path sums, time evolution and vertex weights.
    Oracle(OracleArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Reflect(_) => "reflect",
            Command::Sweep(_) => "sweep",
            Command::Converge(_) => "converge",
            Command::Spectral(_) => "spectral",
            Command::Oracle(_) => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Args, Serialize, Deserialize)]
pub struct Medium {
    /// Emitted frequency.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    /// Scattering strength of the film.
    #[arg(long, default_value_t = 0.625)]
    pub m: f64,
}

/// Lattice step: either raw (snapped to the film) or `L / k`.
#[derive(Debug, Clone, Copy, PartialEq, Args, Serialize, Deserialize)]
#[group(multiple = false)]
pub struct Step {
    /// Raw lattice step; `L` is snapped down to a multiple of it.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Lattice step `L / k`, so the film is exactly `k` columns.
    #[arg(long = "eps-div")]
    pub eps_div: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Args, Serialize, Deserialize)]
pub struct ReflectArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub medium: Medium,
    /// Film thickness.
    #[arg(long = "L", default_value_t = FRAC_PI_3)]
    #[serde(rename = "L")]
    pub length: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub step: Step,
    /// Also sum the time series (slow for fine lattices).
    #[arg(long)]
    #[serde(default)]
    pub series: bool,
    /// Tail bound at which the time series stops.
    #[arg(long, default_value_t = 1e-12)]
    pub tail_tol: f64,
    /// Time-step budget for the series.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub medium: Medium,
    #[arg(long = "L-start", default_value_t = 0.01)]
    #[serde(rename = "L_start")]
    pub start: f64,
    /// Defaults to four periods of the continuum curve.
    #[arg(long = "L-stop")]
    #[serde(rename = "L_stop")]
    pub stop: Option<f64>,
    #[arg(long = "L-count", default_value_t = 400)]
    #[serde(rename = "L_count")]
    pub count: usize,
    /// Columns per film, `eps = L / k` at every point.
    #[arg(long = "eps-div", default_value_t = 256)]
    pub eps_div: u64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ConvergeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub medium: Medium,
    #[arg(long = "L", default_value_t = FRAC_PI_3)]
    #[serde(rename = "L")]
    pub length: f64,
    /// Coarsest lattice, `eps = L / k`.
    #[arg(long = "eps-div", default_value_t = 64)]
    pub eps_div: u64,
    /// Number of lattices, each with half the step of the previous one.
    #[arg(long, default_value_t = 7)]
    pub halvings: usize,
    /// Explicit lattice steps, overriding `--eps-div` and `--halvings`.
    #[arg(long, value_delimiter = ',')]
    #[serde(default)]
    pub eps_list: Vec<f64>,
    /// Exit with status 1 when the error column is not decreasing.
    #[arg(long)]
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SpectralArgs {
    #[arg(long = "m-eps", value_delimiter = ',', default_values_t = [0.1, 0.3, 0.5])]
    pub m_eps: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 4, 8, 16, 32])]
    pub columns: Vec<usize>,
    /// Relative tolerance for the eigenvalue iteration.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct OracleArgs {
    #[arg(long = "m-eps", default_value_t = 0.3)]
    pub m_eps: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3])]
    pub columns: Vec<usize>,
    /// Last time step compared, in units of eps.
    #[arg(long, default_value_t = 8)]
    pub t_max: i64,
    /// Agreement required of every comparison.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    /// Scales the turning entries of the scattering matrix by `1 + delta`.
    #[arg(long, hide = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturb: Option<f64>,
}
