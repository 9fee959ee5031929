use checkers_core::transfer::spectral_radius;
use checkers_core::Model;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::SpectralArgs;
use crate::error::CliError;
use crate::report::Report;

pub fn spectral(args: &SpectralArgs) -> Result<Report, CliError> {
    if args.m_eps.is_empty() || args.columns.is_empty() {
        return Err(CliError::InvalidRange("empty m-eps or columns grid".into()));
    }
    let mut grid = Vec::new();
    for &m_eps in &args.m_eps {
        for &columns in &args.columns {
            // validates m_eps < 1 and columns >= 1 up front
            grid.push(Model::with_columns(1.0, m_eps, 1.0, columns)?);
        }
    }
    let radii: Vec<_> = grid
        .par_iter()
        .map(|model| spectral_radius(model, args.tol))
        .collect();

    let mut report = Report::new(
        "spectral",
        serde_json::to_value(args).expect("args serialize"),
        vec!["m_eps", "N", "rho", "status"],
    );
    report
        .tolerances
        .insert("eigen_tol".into(), Value::from(args.tol));
    let mut worst: f64 = 0.0;
    for (model, rho) in grid.iter().zip(radii) {
        let (rho, status) = match rho {
            Ok(rho) => (rho, "ok"),
            Err(e) => (f64::NAN, e.code()),
        };
        if rho.is_finite() {
            worst = worst.max(rho);
        }
        if report.failure.is_none() {
            if status != "ok" {
                report.failure = Some(format!(
                    "m_eps = {}, N = {}: {status}",
                    model.m_eps(),
                    model.columns()
                ));
            } else if rho >= 1.0 {
                report.failure = Some(format!(
                    "m_eps = {}, N = {}: rho = {rho} >= 1",
                    model.m_eps(),
                    model.columns()
                ));
            }
        }
        report.rows.push(vec![
            model.m_eps().into(),
            model.columns().into(),
            rho.into(),
            status.into(),
        ]);
    }
    report.summary.insert("rho_max".into(), json!(worst));
    Ok(report)
}
