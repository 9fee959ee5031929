use thiserror::Error;

use crate::model::LatticePoint;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` must be positive, got {value}")]
    NonPositiveParameter { name: &'static str, value: f64 },

    #[error("scattering too strong: m*eps = {m_eps} must be below 1")]
    ScatteringTooStrong { m_eps: f64 },

    #[error("film thinner than one lattice step: L = {length}, eps = {eps}")]
    DegenerateFilm { length: f64, eps: f64 },

    #[error("field has {found} columns, operator expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("time series decays too slowly: ratio {ratio} after {steps} steps")]
    SlowDecay { ratio: f64, steps: usize },

    #[error("singular linear system (pivot {pivot} at row {row})")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("no real lattice wavenumber: cos(k eps) would be {cos_k_eps}")]
    EvanescentRegime { cos_k_eps: f64 },

    #[error("more than two path segments meet at {point:?}")]
    DoubleOccupancy { point: LatticePoint },

    #[error("path point {point:?} lies outside the window")]
    PathOutsideWindow { point: LatticePoint },
}

impl Error {
    /// Stable kebab-case identifier, used in machine-readable reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPositiveParameter { .. } => "non-positive-parameter",
            Error::ScatteringTooStrong { .. } => "scattering-too-strong",
            Error::DegenerateFilm { .. } => "degenerate-film",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NoConvergence { .. } => "no-convergence",
            Error::SlowDecay { .. } => "slow-decay",
            Error::SingularSystem { .. } => "singular-system",
            Error::EvanescentRegime { .. } => "evanescent-regime",
            Error::DoubleOccupancy { .. } => "double-occupancy",
            Error::PathOutsideWindow { .. } => "path-outside-window",
        }
    }
}
