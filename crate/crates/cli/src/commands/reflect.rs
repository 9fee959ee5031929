use checkers_core::steady::{limit_probability, solve_steady};
use checkers_core::transfer::reflection_amplitude_series_with_budget;
use serde_json::{json, Value};

use super::film_model;
use crate::config::ReflectArgs;
use crate::error::CliError;
use crate::report::{Cell, Report};

pub fn reflect(args: &ReflectArgs) -> Result<Report, CliError> {
    let (model, notice) = film_model(args.medium, args.length, args.step)?;
    let steady = solve_steady(&model)?;
    let p_steady = steady.probability();
    let p_limit = limit_probability(model.omega(), model.m(), model.length());

    let mut columns = vec!["omega", "m", "L", "eps", "N", "P_steady"];
    let mut row: Vec<Cell> = vec![
        model.omega().into(),
        model.m().into(),
        model.length().into(),
        model.eps().into(),
        model.columns().into(),
        p_steady.into(),
    ];
    let mut report = Report::new(
        "reflect",
        serde_json::to_value(args).expect("args serialize"),
        Vec::new(),
    );
    if args.series {
        let series =
            reflection_amplitude_series_with_budget(&model, args.tail_tol, args.max_steps)?;
        columns.push("P_series");
        row.push(series.amplitude.norm_sqr().into());
        report
            .summary
            .insert("series_steps".into(), json!(series.steps));
        report
            .summary
            .insert("series_tail_bound".into(), json!(series.tail_bound));
        report
            .summary
            .insert("series_decay_ratio".into(), json!(series.decay_ratio));
        report
            .tolerances
            .insert("series_tail".into(), Value::from(args.tail_tol));
    }
    columns.extend(["P_limit", "abs_err"]);
    row.extend([p_limit.into(), (p_steady - p_limit).abs().into()]);

    report.columns = columns;
    report.rows.push(row);
    report.notices.extend(notice);
    Ok(report)
}
