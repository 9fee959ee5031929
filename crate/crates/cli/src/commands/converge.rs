use checkers_core::steady::{limit_probability, solve_steady};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::film_model;
use crate::config::{ConvergeArgs, Step};
use crate::error::CliError;
use crate::report::Report;

/// Allowed growth of the error from one lattice to the next finer one.
pub const STEP_SLACK: f64 = 0.10;

pub fn converge(args: &ConvergeArgs) -> Result<Report, CliError> {
    let steps = lattice_steps(args)?;
    let solved = steps
        .par_iter()
        .map(|&step| {
            let (model, notice) = film_model(args.medium, args.length, step)?;
            let p_steady = solve_steady(&model)?.probability();
            let p_limit = limit_probability(model.omega(), model.m(), model.length());
            Ok((model, p_steady, p_limit, notice))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut report = Report::new(
        "converge",
        serde_json::to_value(args).expect("args serialize"),
        vec!["eps", "N", "P_steady", "P_limit", "abs_err"],
    );
    let mut errors = Vec::with_capacity(solved.len());
    for (model, p_steady, p_limit, notice) in solved {
        let err = (p_steady - p_limit).abs();
        errors.push(err);
        report.rows.push(vec![
            model.eps().into(),
            model.columns().into(),
            p_steady.into(),
            p_limit.into(),
            err.into(),
        ]);
        report.notices.extend(notice);
    }

    let ratios: Vec<f64> = errors.windows(2).map(|w| w[1] / w[0]).collect();
    let strict = errors.windows(2).all(|w| w[1] < w[0]);
    let with_slack = errors.windows(2).all(|w| w[1] <= (1.0 + STEP_SLACK) * w[0]);
    report
        .tolerances
        .insert("step_slack".into(), Value::from(STEP_SLACK));
    report.summary.insert("error_ratios".into(), json!(ratios));
    report
        .summary
        .insert("strictly_decreasing".into(), json!(strict));
    report
        .summary
        .insert("decreasing_with_slack".into(), json!(with_slack));
    if args.strict && !with_slack {
        let at = errors
            .windows(2)
            .position(|w| w[1] > (1.0 + STEP_SLACK) * w[0])
            .unwrap_or(0);
        report.failure = Some(format!("error grows between rows {} and {}", at, at + 1));
    }
    Ok(report)
}

/// Lattice steps from coarse to fine.
fn lattice_steps(args: &ConvergeArgs) -> Result<Vec<Step>, CliError> {
    if !args.eps_list.is_empty() {
        let mut list = args.eps_list.clone();
        if list.len() < 2 {
            return Err(CliError::InvalidRange(
                "--eps-list needs at least two values".into(),
            ));
        }
        list.sort_by(|a, b| b.total_cmp(a));
        if list.windows(2).any(|w| w[0] == w[1]) {
            return Err(CliError::InvalidRange(
                "--eps-list contains a repeated value".into(),
            ));
        }
        return Ok(list
            .into_iter()
            .map(|eps| Step {
                eps: Some(eps),
                eps_div: None,
            })
            .collect());
    }
    if args.halvings < 2 {
        return Err(CliError::InvalidRange(format!(
            "--halvings must be at least 2, got {}",
            args.halvings
        )));
    }
    if args.eps_div == 0 {
        return Err(CliError::InvalidRange(
            "--eps-div must be at least 1".into(),
        ));
    }
    (0..args.halvings)
        .map(|i| {
            let div = args
                .eps_div
                .checked_shl(i as u32)
                .filter(|d| d >> i == args.eps_div);
            div.map(|d| Step {
                eps: None,
                eps_div: Some(d),
            })
            .ok_or_else(|| CliError::InvalidRange("too many halvings".into()))
        })
        .collect()
}
