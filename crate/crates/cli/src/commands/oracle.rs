use checkers_core::paths::{amplitude_checker, amplitude_free, conventional_summand, StepSign};
use checkers_core::sixvertex::{free_paths_at_time, product_weight, vertex_weight_sum};
use checkers_core::transfer::{emission_field, Emission, ScatteringMatrix, TransferOperator};
use checkers_core::{Amplitude, Model};
use serde_json::{json, Value};

use crate::config::OracleArgs;
use crate::error::CliError;
use crate::report::{Cell, Report};

/// Enumeration budget: free paths grow like `2^t`.
pub const MAX_TIME: i64 = 12;

/// Largest discrepancy of one comparison and where it occurred.
#[derive(Debug, Default)]
struct Tally {
    worst: f64,
    at: Option<(i64, i64)>,
    first_failure: Option<(i64, i64)>,
}

impl Tally {
    fn record(&mut self, x: i64, t: i64, a: Amplitude, b: Amplitude, tol: f64) {
        let d = (a - b).norm();
        if d > self.worst || self.at.is_none() {
            self.worst = self.worst.max(d);
            self.at = Some((x, t));
        }
        if !(d <= tol) && self.first_failure.is_none() {
            self.first_failure = Some((x, t));
        }
    }
}

pub fn oracle(args: &OracleArgs) -> Result<Report, CliError> {
    if !(1..=MAX_TIME).contains(&args.t_max) {
        return Err(CliError::InvalidRange(format!(
            "t-max must be in 1..={MAX_TIME}, got {}",
            args.t_max
        )));
    }
    if args.columns.is_empty() {
        return Err(CliError::InvalidRange("no film widths given".into()));
    }
    let models = args
        .columns
        .iter()
        .map(|&n| Model::with_columns(1.0, args.m_eps, 1.0, n))
        .collect::<Result<Vec<_>, _>>()?;

    let mut report = Report::new(
        "oracle",
        serde_json::to_value(args).expect("args serialize"),
        vec!["check", "N", "max_discrepancy", "x", "t", "status"],
    );
    report
        .tolerances
        .insert("abs".into(), Value::from(args.tol));
    let push = |report: &mut Report, check: &str, n: Cell, tally: Tally| {
        let (x, t) = tally.at.unwrap_or((0, 0));
        let status = if tally.first_failure.is_some() {
            "fail"
        } else {
            "pass"
        };
        if let (Some((fx, ft)), None) = (tally.first_failure, &report.failure) {
            let (n_text, n_json) = match &n {
                Cell::Int(v) => (v.to_string(), json!(v)),
                _ => ("-".to_string(), json!("-")),
            };
            report.failure = Some(format!(
                "{check}: discrepancy above {:e} at (x={fx}, t={ft}, N={n_text})",
                args.tol
            ));
            report.summary.insert(
                "failing_triple".into(),
                json!({ "x": fx, "t": ft, "N": n_json }),
            );
        }
        report.rows.push(vec![
            check.into(),
            n,
            tally.worst.into(),
            x.into(),
            t.into(),
            status.into(),
        ]);
    };

    for model in &models {
        let n = model.columns();
        let operator = match args.perturb {
            Some(delta) => TransferOperator::with_matrix(model, perturbed(model.m_eps(), delta)),
            None => TransferOperator::new(model),
        };
        let mut tally = Tally::default();
        let mut off_cone = Tally::default();
        let fields =
            Emission::with_operator(operator, emission_field(model)).take(args.t_max as usize);
        for (k, field) in fields.enumerate() {
            let t = k as i64 + 1;
            for x in 0..=(n as i64 + 1) {
                let c = x as usize;
                tally.record(
                    x,
                    t,
                    field.minus[c],
                    amplitude_checker(x, t, 0, model, StepSign::Minus),
                    args.tol,
                );
                tally.record(
                    x,
                    t,
                    field.plus[c],
                    amplitude_checker(x, t, 0, model, StepSign::Plus),
                    args.tol,
                );
                if args.m_eps == 0.0 && x != t {
                    let zero = Amplitude::new(0.0, 0.0);
                    off_cone.record(x, t, field.minus[c], zero, args.tol);
                    off_cone.record(x, t, field.plus[c], zero, args.tol);
                }
            }
        }
        push(&mut report, "transfer-vs-paths", n.into(), tally);
        if args.m_eps == 0.0 {
            push(&mut report, "massless-light-cone", n.into(), off_cone);
        }
    }

    let mut summand = Tally::default();
    let mut free = Tally::default();
    for t in 1..=args.t_max {
        for path in free_paths_at_time(t) {
            let end = path.end();
            let expected = conventional_summand(path.turns(), path.layovers(), args.m_eps);
            summand.record(
                end.col,
                end.time,
                product_weight(&path, args.m_eps),
                expected,
                args.tol,
            );
        }
        for x in -t..=t {
            for sign in [StepSign::Minus, StepSign::Plus] {
                free.record(
                    x,
                    t,
                    vertex_weight_sum(x, t, args.m_eps, sign),
                    amplitude_free(x, t, args.m_eps, sign),
                    args.tol,
                );
            }
        }
    }
    push(&mut report, "sixvertex-vs-summand", "-".into(), summand);
    push(&mut report, "sixvertex-vs-free", "-".into(), free);

    let worst = report
        .column("max_discrepancy")
        .into_iter()
        .flatten()
        .fold(0.0, f64::max);
    report
        .summary
        .insert("max_discrepancy".into(), json!(worst));
    Ok(report)
}

/// Scattering matrix with its turning entries scaled by `1 + delta`.
fn perturbed(m_eps: f64, delta: f64) -> ScatteringMatrix {
    let mut entries = ScatteringMatrix::new(m_eps).entries();
    entries[0][1] *= 1.0 + delta;
    entries[1][0] *= 1.0 + delta;
    ScatteringMatrix::from_entries(entries)
}
