use checkers_core::steady::{
    limit_period, limit_probability, max_limit_probability, refractive_index, solve_steady,
};
use checkers_core::{Model, ModelParams};
use rayon::prelude::*;
use serde_json::json;

use crate::config::SweepArgs;
use crate::error::CliError;
use crate::report::Report;

pub fn sweep(args: &SweepArgs) -> Result<Report, CliError> {
    let SweepArgs {
        medium,
        start,
        stop,
        count,
        eps_div,
    } = *args;
    let stop = stop.unwrap_or(4.0 * limit_period(medium.omega, medium.m));
    if count < 2 {
        return Err(CliError::InvalidRange(format!(
            "L-count must be at least 2, got {count}"
        )));
    }
    if !(start > 0.0 && stop > start && stop.is_finite()) {
        return Err(CliError::InvalidRange(format!(
            "need 0 < L-start < L-stop, got [{start}, {stop}]"
        )));
    }
    if eps_div == 0 {
        return Err(CliError::InvalidRange(
            "--eps-div must be at least 1".into(),
        ));
    }
    let step = (stop - start) / (count - 1) as f64;
    let lengths: Vec<f64> = (0..count)
        .map(|i| {
            if i + 1 == count {
                stop
            } else {
                start + i as f64 * step
            }
        })
        .collect();

    let points = lengths
        .par_iter()
        .map(|&length| {
            let model = Model::new(ModelParams::new(
                medium.omega,
                medium.m,
                length,
                length / eps_div as f64,
            ))?;
            let p_steady = solve_steady(&model)?.probability();
            let p_limit = limit_probability(model.omega(), model.m(), model.length());
            Ok((model, p_steady, p_limit))
        })
        .collect::<Result<Vec<_>, checkers_core::Error>>()?;

    let mut report = Report::new(
        "sweep",
        serde_json::to_value(args).expect("args serialize"),
        vec!["L", "eps", "N", "P_steady", "P_limit"],
    );
    for (model, p_steady, p_limit) in &points {
        report.rows.push(vec![
            model.length().into(),
            model.eps().into(),
            model.columns().into(),
            (*p_steady).into(),
            (*p_limit).into(),
        ]);
    }

    let limit: Vec<f64> = points.iter().map(|p| p.2).collect();
    let steady: Vec<f64> = points.iter().map(|p| p.1).collect();
    let n = refractive_index(medium.omega, medium.m);
    let summary = &mut report.summary;
    summary.insert(
        "P_limit_min".into(),
        json!(limit.iter().copied().fold(f64::INFINITY, f64::min)),
    );
    summary.insert(
        "P_limit_max".into(),
        json!(limit.iter().copied().fold(0.0, f64::max)),
    );
    summary.insert(
        "P_limit_peak_expected".into(),
        json!(max_limit_probability(n)),
    );
    summary.insert(
        "period_expected".into(),
        json!(limit_period(medium.omega, medium.m)),
    );
    summary.insert(
        "period_estimate_limit".into(),
        json!(estimate_period(&lengths, &limit)),
    );
    summary.insert(
        "period_estimate_steady".into(),
        json!(estimate_period(&lengths, &steady)),
    );
    Ok(report)
}

/// Mean spacing of the interior local minima of `ys` sampled at equally
/// spaced `xs`, each located by a parabola through its neighbours. `None`
/// with fewer than two minima.
pub fn estimate_period(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let minima: Vec<f64> = (1..ys.len().saturating_sub(1))
        .filter(|&i| ys[i] < ys[i - 1] && ys[i] <= ys[i + 1])
        .map(|i| {
            let h = xs[i + 1] - xs[i];
            let (l, c, r) = (ys[i - 1], ys[i], ys[i + 1]);
            let curvature = l - 2.0 * c + r;
            let shift = if curvature > 0.0 {
                0.5 * (l - r) / curvature
            } else {
                0.0
            };
            xs[i] + shift * h
        })
        .collect();
    match minima.as_slice() {
        [first, .., last] => Some((last - first) / (minima.len() - 1) as f64),
        _ => None,
    }
}
