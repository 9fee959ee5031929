//! Time stepping with the transfer operator.
//!
//! At every film column the pair `(a_-(x), a_+(x))` is scattered by the 2x2
//! matrix `U` and sent to `(x - eps, x + eps)` one time step later. Columns
//! `0` and `N + 1` absorb. Starting from a single right-moving photon at
//! `(eps, eps)`, the left-moving value that reaches column 0 at time `Delta`
//! is the fixed-emission amplitude `a_-(0, Delta; 0)`, and the reflection
//! amplitude is the phase-weighted sum of these over `Delta`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Amplitude, Model, WaveField};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest dimension for which the spectral radius is taken from a full
/// Schur decomposition.
pub const DENSE_SPECTRUM_LIMIT: usize = 512;

/// `U = 1/(1 + i m eps) [[1, -i m eps], [-i m eps, 1]]`, acting on
/// `(a_-, a_+)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringMatrix {
    entries: [[Complex64; 2]; 2],
}

impl ScatteringMatrix {
    pub fn new(m_eps: f64) -> Self {
        let denom = Complex64::new(1.0, m_eps);
        let pass = Complex64::new(1.0, 0.0) / denom;
        let turn = Complex64::new(0.0, -m_eps) / denom;
        Self {
            entries: [[pass, turn], [turn, pass]],
        }
    }

    /// Arbitrary 2x2 matrix, for experiments with modified weights.
    pub fn from_entries(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> [[Complex64; 2]; 2] {
        self.entries
    }

    /// Returns `(b_-, b_+)` for the outgoing left- and right-movers.
    #[inline]
    pub fn apply(&self, minus: Complex64, plus: Complex64) -> (Complex64, Complex64) {
        let [[a, b], [c, d]] = self.entries;
        (a * minus + b * plus, c * minus + d * plus)
    }

    /// Largest entry of `|U U* - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let u = self.entries;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = u[i][0] * u[j][0].conj() + u[i][1] * u[j][1].conj();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// The transfer operator `T` on fields over columns `0..=N+1`.
///
/// `T` does not depend on the frequency.
#[derive(Debug, Clone, Copy)]
pub struct TransferOperator {
    columns: usize,
    scattering: ScatteringMatrix,
}

impl TransferOperator {
    pub fn new(model: &Model) -> Self {
        Self::with_matrix(model, ScatteringMatrix::new(model.m_eps()))
    }

    pub fn with_matrix(model: &Model, scattering: ScatteringMatrix) -> Self {
        Self {
            columns: model.columns(),
            scattering,
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn dimension(&self) -> usize {
        2 * self.columns + 4
    }

    pub fn scattering(&self) -> ScatteringMatrix {
        self.scattering
    }

    /// One time step: `(b_-(x - eps), b_+(x + eps)) = U (a_-(x), a_+(x))` for
    /// film columns `x`, zero everywhere else.
    pub fn apply(&self, field: &WaveField) -> Result<WaveField> {
        self.check(field)?;
        let mut out = WaveField::zeros(self.columns);
        self.apply_into(field, &mut out);
        Ok(out)
    }

    fn check(&self, field: &WaveField) -> Result<()> {
        let expected = self.columns + 2;
        for len in [field.minus.len(), field.plus.len()] {
            if len != expected {
                return Err(Error::DimensionMismatch {
                    expected: self.columns,
                    found: len.saturating_sub(2),
                });
            }
        }
        Ok(())
    }

    fn apply_into(&self, field: &WaveField, out: &mut WaveField) {
        let n = self.columns;
        out.minus[n] = ZERO;
        out.minus[n + 1] = ZERO;
        out.plus[0] = ZERO;
        out.plus[1] = ZERO;
        for x in 1..=n {
            let (left, right) = self.scattering.apply(field.minus[x], field.plus[x]);
            out.minus[x - 1] = left;
            out.plus[x + 1] = right;
        }
    }

    /// Explicit `D x D` matrix in the [`WaveField::to_vec`] layout.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.columns;
        let d = self.dimension();
        let half = n + 2;
        let [[u00, u01], [u10, u11]] = self.scattering.entries();
        let mut t = DMatrix::from_element(d, d, ZERO);
        for x in 1..=n {
            let (minus_in, plus_in) = (x, half + x);
            let (minus_out, plus_out) = (x - 1, half + x + 1);
            t[(minus_out, minus_in)] = u00;
            t[(minus_out, plus_in)] = u01;
            t[(plus_out, minus_in)] = u10;
            t[(plus_out, plus_in)] = u11;
        }
        t
    }

    fn apply_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let field = WaveField::from_slice(v);
        let mut out = WaveField::zeros(self.columns);
        self.apply_into(&field, &mut out);
        out.to_vec()
    }
}

/// `sum_{x = eps..L} |a_-(x)|^2 + |a_+(x)|^2`, the part of the field that is
/// still inside the film.
pub fn interior_mass(field: &WaveField) -> f64 {
    let n = field.columns();
    (1..=n)
        .map(|x| field.minus[x].norm_sqr() + field.plus[x].norm_sqr())
        .sum()
}

/// Field at time `eps` after emission at `(0, 0)`: one right-mover at
/// column 1.
pub fn emission_field(model: &Model) -> WaveField {
    let mut field = WaveField::zeros(model.columns());
    field.plus[1] = Complex64::new(1.0, 0.0);
    field
}

/// Iterator over the fields `a(., t; 0)` at `t = eps, 2 eps, ...`.
#[derive(Debug, Clone)]
pub struct Emission {
    operator: TransferOperator,
    current: WaveField,
    scratch: WaveField,
}

impl Emission {
    pub fn new(model: &Model) -> Self {
        Self::with_operator(TransferOperator::new(model), emission_field(model))
    }

    pub fn with_operator(operator: TransferOperator, start: WaveField) -> Self {
        let scratch = WaveField::zeros(operator.columns());
        Self {
            operator,
            current: start,
            scratch,
        }
    }
}

impl Iterator for Emission {
    type Item = WaveField;

    fn next(&mut self) -> Option<WaveField> {
        let out = self.current.clone();
        self.operator.apply_into(&self.current, &mut self.scratch);
        std::mem::swap(&mut self.current, &mut self.scratch);
        Some(out)
    }
}

/// Fields at times `eps, 2 eps, ..., t_max * eps`; entry `k` holds time
/// `(k + 1) eps`.
pub fn evolve_from_emission(model: &Model, t_max: usize) -> Vec<WaveField> {
    Emission::new(model).take(t_max).collect()
}

/// How [`spectral_radius_with`] finds the dominant eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralMethod {
    /// Dense Schur decomposition up to [`DENSE_SPECTRUM_LIMIT`], subspace
    /// iteration above it.
    Auto,
    Dense,
    Subspace,
}

/// Spectral radius of the transfer operator to within `tol`.
pub fn spectral_radius(model: &Model, tol: f64) -> Result<f64> {
    spectral_radius_with(model, tol, SpectralMethod::Auto)
}

pub fn spectral_radius_with(model: &Model, tol: f64, method: SpectralMethod) -> Result<f64> {
    let op = TransferOperator::new(model);
    // Without scattering T only shifts photons outward, and with a single
    // column everything lands on an absorbing face after one step. Both
    // cases are nilpotent.
    if model.m_eps() == 0.0 || model.columns() == 1 {
        return Ok(0.0);
    }
    let dense = match method {
        SpectralMethod::Auto => op.dimension() <= DENSE_SPECTRUM_LIMIT,
        SpectralMethod::Dense => true,
        SpectralMethod::Subspace => false,
    };
    if dense {
        dense_spectral_radius(&op, tol)
    } else {
        subspace_spectral_radius(&op, tol)
    }
}

fn dense_spectral_radius(op: &TransferOperator, tol: f64) -> Result<f64> {
    let max_iterations = 10_000;
    let schur = op
        .to_dense()
        .try_schur(tol.clamp(f64::EPSILON, 1e-14), max_iterations)
        .ok_or(Error::NoConvergence {
            iterations: max_iterations,
        })?;
    let eigenvalues = schur.eigenvalues().ok_or(Error::NoConvergence {
        iterations: max_iterations,
    })?;
    Ok(eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Block power iteration with Rayleigh-Ritz extraction. The block is wide
/// enough to separate the `+-lambda` pairs that the checkerboard structure of
/// `T` forces on the spectrum.
fn subspace_spectral_radius(op: &TransferOperator, tol: f64) -> Result<f64> {
    let d = op.dimension();
    let block = d.min(8);
    let max_iterations = 200 * d + 10_000;
    let mut basis = DMatrix::from_fn(d, block, |i, j| {
        let s = (i * (j + 3)) as f64;
        Complex64::new((0.37 * s + j as f64).sin() + 1.1, (0.91 * s).cos())
    });
    basis = basis.qr().q();
    let mut previous = f64::INFINITY;
    let mut settled = 0;
    for iteration in 0..max_iterations {
        let mut image = DMatrix::from_element(d, block, ZERO);
        for j in 0..block {
            let col: Vec<Complex64> = basis.column(j).iter().copied().collect();
            image.set_column(j, &DVector::from_vec(op.apply_vec(&col)));
        }
        let projected = basis.adjoint() * &image;
        let ritz = projected
            .try_schur(1e-15, 10_000)
            .and_then(|s| s.eigenvalues())
            .ok_or(Error::NoConvergence {
                iterations: iteration,
            })?;
        let radius = ritz.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if image.norm() == 0.0 {
            return Ok(0.0);
        }
        if (radius - previous).abs() < 0.1 * tol {
            settled += 1;
            if settled >= 5 {
                return Ok(radius);
            }
        } else {
            settled = 0;
        }
        previous = radius;
        basis = image.qr().q();
    }
    Err(Error::NoConvergence {
        iterations: max_iterations,
    })
}

/// `||T^k||_2^(1/k)` for `k = 1..=k_max`. By Gelfand's formula this tends to
/// the spectral radius.
pub fn gelfand_sequence(model: &Model, k_max: usize) -> Vec<f64> {
    let t = TransferOperator::new(model).to_dense();
    let mut power = t.clone();
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let norm = power
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max);
        out.push(norm.powf(1.0 / k as f64));
        power = &t * power;
    }
    out
}

/// Truncated reflection amplitude from the time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub amplitude: Amplitude,
    /// Estimated bound on the neglected tail.
    pub tail_bound: f64,
    /// Number of time steps summed.
    pub steps: usize,
    /// Measured per-step decay of the field norm over the last window.
    pub decay_ratio: f64,
}

/// `a = sum_{Delta > 0} e^{-i omega Delta} a_-(0, Delta; 0)`, summed until
/// the estimated tail is below `tail_tol`.
///
/// The field norm never grows under `T`, and over one round trip through
/// the film it shrinks by some factor `r^w`. The tail after step `n` is
/// bounded by `|a(., n+1)| / (1 - r)` once `r` is measured.
pub fn reflection_amplitude_series(model: &Model, tail_tol: f64) -> Result<SeriesSum> {
    let budget = 2_000 * (model.columns() + 2) + 10_000;
    reflection_amplitude_series_with_budget(model, tail_tol, budget)
}

pub fn reflection_amplitude_series_with_budget(
    model: &Model,
    tail_tol: f64,
    max_steps: usize,
) -> Result<SeriesSum> {
    let window = 2 * (model.columns() + 1);
    let phase_step = Complex64::from_polar(1.0, -model.omega() * model.eps());
    let mut phase = phase_step;
    let mut amplitude = ZERO;
    // norms[k] = |a(., (k + 1) eps)|
    let mut norms: Vec<f64> = Vec::new();
    let mut decay_ratio = 1.0;
    let mut emission = Emission::new(model);
    let mut current = emission.next().expect("emission is endless");
    for step in 1..=max_steps {
        amplitude += phase * current.minus[0];
        phase *= phase_step;
        let next = emission.next().expect("emission is endless");
        norms.push(current.squared_norm().sqrt());
        let next_norm = next.squared_norm().sqrt();
        if next_norm == 0.0 {
            return Ok(SeriesSum {
                amplitude,
                tail_bound: 0.0,
                steps: step,
                decay_ratio: 0.0,
            });
        }
        if step >= window {
            let earlier = norms[step - window];
            decay_ratio = (next_norm / earlier).powf(1.0 / window as f64);
            if decay_ratio < 1.0 {
                let tail_bound = next_norm / (1.0 - decay_ratio);
                if tail_bound < tail_tol {
                    return Ok(SeriesSum {
                        amplitude,
                        tail_bound,
                        steps: step,
                        decay_ratio,
                    });
                }
            }
        }
        current = next;
    }
    Err(Error::SlowDecay {
        ratio: decay_ratio,
        steps: max_steps,
    })
}
