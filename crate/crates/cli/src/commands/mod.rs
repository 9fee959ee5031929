//! One driver per subcommand. Each returns a [`Report`]; writing it out is
//! left to the caller.

mod converge;
mod oracle;
mod reflect;
mod spectral;
mod sweep;

pub use converge::converge;
pub use oracle::oracle;
pub use reflect::reflect;
pub use spectral::spectral;
pub use sweep::{estimate_period, sweep};

use checkers_core::{Model, ModelParams};

use crate::config::{Command, Medium, Step};
use crate::error::CliError;
use crate::report::Report;

pub fn run(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Reflect(args) => reflect(args),
        Command::Sweep(args) => sweep(args),
        Command::Converge(args) => converge(args),
        Command::Spectral(args) => spectral(args),
        Command::Oracle(args) => oracle(args),
    }
}

/// Columns used when neither `--eps` nor `--eps-div` is given.
const DEFAULT_DIVISIONS: u64 = 1024;

/// Builds the film model, with a notice when a raw `eps` forced `L` down.
fn film_model(
    medium: Medium,
    length: f64,
    step: Step,
) -> Result<(Model, Option<String>), CliError> {
    let eps = match (step.eps, step.eps_div) {
        (Some(eps), _) => eps,
        (None, Some(0)) => {
            return Err(CliError::InvalidRange(
                "--eps-div must be at least 1".into(),
            ))
        }
        (None, div) => length / div.unwrap_or(DEFAULT_DIVISIONS) as f64,
    };
    let model = Model::new(ModelParams::new(medium.omega, medium.m, length, eps))?;
    let notice = (model.length() != length).then(|| {
        format!(
            "notice: L = {length} is not a multiple of eps = {eps}; snapped to {} ({} columns)",
            model.length(),
            model.columns()
        )
    });
    Ok((model, notice))
}
