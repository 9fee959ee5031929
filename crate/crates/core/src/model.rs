//! Model parameters, lattice coordinates and two-component wave fields.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A complex "arrow". Its probability is the squared modulus.
pub type Amplitude = Complex64;

/// Squared modulus of an amplitude.
pub fn probability(a: Amplitude) -> f64 {
    a.norm_sqr()
}

/// Relative slack when deciding whether `L / eps` is an integer, so that
/// `eps = L / k` does not lose a column to rounding in the division.
const SNAP_SLACK: f64 = 1e-9;

/// Raw physical parameters as supplied by a caller.
///
/// `omega` is the emitted frequency, `m` the scattering strength, `length`
/// the film thickness and `eps` the lattice step, all in units where the
/// speed of light is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega: f64,
    pub m: f64,
    #[serde(rename = "L")]
    pub length: f64,
    pub eps: f64,
}

impl ModelParams {
    pub fn new(omega: f64, m: f64, length: f64, eps: f64) -> Self {
        Self {
            omega,
            m,
            length,
            eps,
        }
    }

    /// Checks the parameters and snaps `length` down to a whole number of
    /// lattice steps.
    pub fn validate(&self) -> Result<ModelParams> {
        Model::new(*self).map(|model| model.params())
    }
}

/// Validated parameters with the film snapped to `columns` lattice steps.
///
/// Column `j` of the lattice sits at `x = j * eps`; the film occupies
/// columns `1..=columns` and the absorbing faces are columns `0` and
/// `columns + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Model {
    omega: f64,
    m: f64,
    eps: f64,
    columns: usize,
}

impl Model {
    /// `m = 0` is accepted: it is the scattering-free limit where the film is
    /// transparent.
    pub fn new(params: ModelParams) -> Result<Self> {
        let ModelParams {
            omega,
            m,
            length,
            eps,
        } = params;
        for (name, value) in [("omega", omega), ("L", length), ("eps", eps)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositiveParameter { name, value });
            }
        }
        if !(m >= 0.0) || !m.is_finite() {
            return Err(Error::NonPositiveParameter {
                name: "m",
                value: m,
            });
        }
        let m_eps = m * eps;
        if m_eps >= 1.0 {
            return Err(Error::ScatteringTooStrong { m_eps });
        }
        let ratio = length / eps;
        let columns = (ratio + SNAP_SLACK * ratio.max(1.0)).floor();
        if columns < 1.0 {
            return Err(Error::DegenerateFilm { length, eps });
        }
        Ok(Self {
            omega,
            m,
            eps,
            columns: columns as usize,
        })
    }

    /// Builds a model directly from a column count, `L = columns * eps`.
    pub fn with_columns(omega: f64, m: f64, eps: f64, columns: usize) -> Result<Self> {
        Self::new(ModelParams::new(omega, m, columns as f64 * eps, eps))
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.omega, self.m, self.length(), self.eps)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// Snapped film thickness `columns * eps`.
    pub fn length(&self) -> f64 {
        self.columns as f64 * self.eps
    }

    /// Number of film columns `N = L / eps`.
    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn m_eps(&self) -> f64 {
        self.m * self.eps
    }

    /// Dimension `2N + 4` of the wave-field space.
    pub fn dimension(&self) -> usize {
        2 * self.columns + 4
    }

    /// Same model with a different frequency.
    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(ModelParams {
            omega,
            ..self.params()
        })
    }
}

/// A lattice point in integer units: `x = col * eps`, `t = time * eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint {
    pub col: i64,
    pub time: i64,
}

impl LatticePoint {
    pub const fn new(col: i64, time: i64) -> Self {
        Self { col, time }
    }
}

/// Field values `(a_-(x), a_+(x))` on columns `0..=N+1` at a fixed time.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveField {
    pub minus: Vec<Amplitude>,
    pub plus: Vec<Amplitude>,
}

impl WaveField {
    pub fn zeros(columns: usize) -> Self {
        let n = columns + 2;
        Self {
            minus: vec![Amplitude::new(0.0, 0.0); n],
            plus: vec![Amplitude::new(0.0, 0.0); n],
        }
    }

    /// Film columns `N` this field is laid out for.
    pub fn columns(&self) -> usize {
        self.minus.len().saturating_sub(2)
    }

    pub fn dimension(&self) -> usize {
        self.minus.len() + self.plus.len()
    }

    pub fn squared_norm(&self) -> f64 {
        self.minus
            .iter()
            .chain(&self.plus)
            .map(|a| a.norm_sqr())
            .sum()
    }

    /// Flattens to `[a_-(0), .., a_-(L+eps), a_+(0), .., a_+(L+eps)]`.
    pub fn to_vec(&self) -> Vec<Amplitude> {
        self.minus.iter().chain(&self.plus).copied().collect()
    }

    /// Inverse of [`WaveField::to_vec`]; `values.len()` must be even.
    pub fn from_slice(values: &[Amplitude]) -> Self {
        let half = values.len() / 2;
        Self {
            minus: values[..half].to_vec(),
            plus: values[half..].to_vec(),
        }
    }

    pub fn max_abs_diff(&self, other: &WaveField) -> f64 {
        self.minus
            .iter()
            .zip(&other.minus)
            .chain(self.plus.iter().zip(&other.plus))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
