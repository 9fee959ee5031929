//! Time-harmonic solution of the lattice model.
//!
//! Quasiperiodicity `a(x, t) = e^{i omega t} a(x, 0)` turns the transfer
//! recurrence into a banded linear system for `a(x, 0)` with boundary data
//! `a_+(eps) = e^{-i omega eps}` and `a_-(L) = 0`. Its entry `a_-(0)` is the
//! reflection amplitude. Inside the film the solution is a superposition of
//! plane waves `e^{+-i k x}`, which gives a second, independent route to the
//! same field and, as `eps -> 0`, the closed-form reflection probability.

pub mod banded;

use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{Amplitude, Model, WaveField};
use banded::BandMatrix;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `|sin(omega n L)|` below this is treated as a cotangent pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

/// Steady-state field and the reflection amplitude `a_-(0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyField {
    pub field: WaveField,
    pub reflection_amplitude: Amplitude,
}

impl SteadyField {
    pub fn probability(&self) -> f64 {
        self.reflection_amplitude.norm_sqr()
    }
}

fn index_minus(col: usize) -> usize {
    2 * col
}

fn index_plus(col: usize) -> usize {
    2 * col + 1
}

/// Solves the steady-state system by banded LU.
///
/// Unknowns are interleaved by column, `(a_-(0), a_+(0), a_-(eps), ...)`, so
/// every equation couples unknowns at most three positions apart.
pub fn solve_steady(model: &Model) -> Result<SteadyField> {
    let n = model.columns();
    let size = 2 * n + 4;
    let m_eps = model.m_eps();
    let denom = Complex64::new(1.0, m_eps);
    let pass = ONE / denom;
    let turn = Complex64::new(0.0, -m_eps) / denom;
    let advance = Complex64::from_polar(1.0, model.omega() * model.eps());

    let mut matrix = BandMatrix::zeros(size, 3, 3);
    let mut rhs = vec![ZERO; size];

    // left-mover recurrence at x = j + 1, stored in row 2j
    for j in 0..n {
        let row = 2 * j;
        matrix.set(row, index_minus(j), advance);
        matrix.set(row, index_minus(j + 1), -pass);
        matrix.set(row, index_plus(j + 1), -turn);
    }
    // right-mover recurrence at x = j, stored in row 2j + 3
    for j in 1..=n {
        let row = 2 * j + 3;
        matrix.set(row, index_plus(j + 1), advance);
        matrix.set(row, index_minus(j), -turn);
        matrix.set(row, index_plus(j), -pass);
    }
    // nothing arrives at the front face moving right
    matrix.set(1, index_plus(0), ONE);
    matrix.set(3, index_plus(1), ONE);
    rhs[3] = advance.conj();
    matrix.set(2 * n, index_minus(n), ONE);
    // nothing arrives at the back face moving left
    matrix.set(2 * n + 2, index_minus(n + 1), ONE);

    let solution = matrix.solve(&rhs)?;
    let mut field = WaveField::zeros(n);
    for col in 0..n + 2 {
        field.minus[col] = solution[index_minus(col)];
        field.plus[col] = solution[index_plus(col)];
    }
    let reflection_amplitude = field.minus[0];
    Ok(SteadyField {
        field,
        reflection_amplitude,
    })
}

/// Largest residual of the steady-state equations and boundary conditions.
pub fn steady_residual(model: &Model, field: &WaveField) -> f64 {
    let n = model.columns();
    let m_eps = model.m_eps();
    let denom = Complex64::new(1.0, m_eps);
    let advance = Complex64::from_polar(1.0, model.omega() * model.eps());
    let mut worst: f64 = 0.0;
    for x in 1..=n {
        let (am, ap) = (field.minus[x], field.plus[x]);
        let left = advance * field.minus[x - 1] - (am - Complex64::new(0.0, m_eps) * ap) / denom;
        let right = advance * field.plus[x + 1] - (ap - Complex64::new(0.0, m_eps) * am) / denom;
        worst = worst.max(left.norm()).max(right.norm());
    }
    worst
        .max((field.plus[1] - advance.conj()).norm())
        .max(field.minus[n].norm())
}

/// `cos(omega eps) - m eps sin(omega eps)`, half the trace of the
/// characteristic polynomial `chi^2 - 2 c chi + 1`.
pub fn characteristic_cosine(omega: f64, m: f64, eps: f64) -> f64 {
    (omega * eps).cos() - m * eps * (omega * eps).sin()
}

/// Both roots of `chi^2 - 2 c chi + 1`, by the quadratic formula.
pub fn characteristic_roots(omega: f64, m: f64, eps: f64) -> (Complex64, Complex64) {
    let c = Complex64::new(characteristic_cosine(omega, m, eps), 0.0);
    let disc = (c * c - 1.0).sqrt();
    (c + disc, c - disc)
}

/// Lattice wavenumber `k(eps) in (0, pi / eps)` with
/// `cos(k eps) = cos(omega eps) - m eps sin(omega eps)`.
pub fn lattice_wavenumber(omega: f64, m: f64, eps: f64) -> Result<f64> {
    // (1 - c) / 2 = sin^2(k eps / 2), written without cancellation
    let half_gap = (omega * eps / 2.0).sin().powi(2) + 0.5 * m * eps * (omega * eps).sin();
    if !(half_gap > 0.0 && half_gap < 1.0) {
        return Err(Error::EvanescentRegime {
            cos_k_eps: 1.0 - 2.0 * half_gap,
        });
    }
    Ok(2.0 * half_gap.sqrt().asin() / eps)
}

pub fn wavenumber(model: &Model) -> Result<f64> {
    lattice_wavenumber(model.omega(), model.m(), model.eps())
}

/// Refractive index `n = sqrt(1 + 2 m / omega)`.
pub fn refractive_index(omega: f64, m: f64) -> f64 {
    (1.0 + 2.0 * m / omega).sqrt()
}

/// Coefficients of `a_+(x) = a e^{ikx} + b e^{-ikx}`,
/// `a_-(x) = c e^{ikx} + d e^{-ikx}` and the wavenumber `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveCoeffs {
    pub a: Amplitude,
    pub b: Amplitude,
    pub c: Amplitude,
    pub d: Amplitude,
    pub k: f64,
}

impl PlaneWaveCoeffs {
    pub fn plus_at(&self, x: f64) -> Amplitude {
        let wave = Complex64::from_polar(1.0, self.k * x);
        self.a * wave + self.b * wave.conj()
    }

    pub fn minus_at(&self, x: f64) -> Amplitude {
        let wave = Complex64::from_polar(1.0, self.k * x);
        self.c * wave + self.d * wave.conj()
    }

    /// Reflection amplitude `a_-(0) = c + d`.
    pub fn reflection_amplitude(&self) -> Amplitude {
        self.c + self.d
    }

    /// Field on the lattice: `a_+` at columns `1..=N+1`, `a_-` at `0..=N`,
    /// and the two face values that no path reaches set to zero.
    pub fn reconstruct(&self, model: &Model) -> WaveField {
        let n = model.columns();
        let eps = model.eps();
        let mut field = WaveField::zeros(n);
        for col in 0..=n {
            field.minus[col] = self.minus_at(col as f64 * eps);
            field.plus[col + 1] = self.plus_at((col + 1) as f64 * eps);
        }
        field
    }
}

fn solve4(matrix: Matrix4<Complex64>, rhs: Vector4<Complex64>) -> Result<Vector4<Complex64>> {
    matrix
        .lu()
        .solve(&rhs)
        .ok_or(Error::SingularSystem { row: 0, pivot: 0.0 })
}

/// Plane-wave coefficients at finite `eps`, from the right-mover recurrence
/// and the two boundary conditions.
pub fn plane_wave_coeffs(model: &Model) -> Result<PlaneWaveCoeffs> {
    let k = wavenumber(model)?;
    let (omega, eps, length) = (model.omega(), model.eps(), model.length());
    let m_eps = model.m_eps();
    if m_eps == 0.0 {
        return Err(Error::SingularSystem { row: 1, pivot: 0.0 });
    }
    let i_m_eps = Complex64::new(0.0, m_eps);
    let scatter = Complex64::new(1.0, m_eps);
    let forward = ONE - Complex64::from_polar(1.0, (omega + k) * eps) * scatter;
    let backward = ONE - Complex64::from_polar(1.0, (omega - k) * eps) * scatter;
    let step = Complex64::from_polar(1.0, k * eps);
    let across = Complex64::from_polar(1.0, k * length);
    #[rustfmt::skip]
    let matrix = Matrix4::new(
        -forward, ZERO,      i_m_eps, ZERO,
        ZERO,     -backward, ZERO,    i_m_eps,
        step,     step.conj(), ZERO,  ZERO,
        ZERO,     ZERO,      across,  across.conj(),
    );
    let rhs = Vector4::new(ZERO, ZERO, Complex64::from_polar(1.0, -omega * eps), ZERO);
    let x = solve4(matrix, rhs)?;
    Ok(PlaneWaveCoeffs {
        a: x[0],
        b: x[1],
        c: x[2],
        d: x[3],
        k,
    })
}

/// Continuum (`eps -> 0`) coefficients with `k = omega n`.
pub fn limit_coeffs(omega: f64, m: f64, length: f64) -> Result<PlaneWaveCoeffs> {
    for (name, value) in [("omega", omega), ("m", m), ("L", length)] {
        if !(value > 0.0) {
            return Err(Error::NonPositiveParameter { name, value });
        }
    }
    let k = omega * refractive_index(omega, m);
    let across = Complex64::from_polar(1.0, k * length);
    let mc = Complex64::new(m, 0.0);
    let re = |v: f64| Complex64::new(v, 0.0);
    #[rustfmt::skip]
    let matrix = Matrix4::new(
        re(m + omega + k), ZERO,             mc,     ZERO,
        ZERO,              re(m + omega - k), ZERO,  mc,
        ONE,               ONE,              ZERO,   ZERO,
        ZERO,              ZERO,             across, across.conj(),
    );
    let rhs = Vector4::new(ZERO, ZERO, ONE, ZERO);
    let x = solve4(matrix, rhs)?;
    Ok(PlaneWaveCoeffs {
        a: x[0],
        b: x[1],
        c: x[2],
        d: x[3],
        k,
    })
}

/// Largest residual of the continuum coefficient equations.
pub fn limit_residual(omega: f64, m: f64, length: f64, coeffs: &PlaneWaveCoeffs) -> f64 {
    let k = coeffs.k;
    let across = Complex64::from_polar(1.0, k * length);
    let PlaneWaveCoeffs { a, b, c, d, .. } = *coeffs;
    [
        c - a * (-m - omega - k) / m,
        d - b * (-m - omega + k) / m,
        a + b - 1.0,
        c * across + d * across.conj(),
    ]
    .iter()
    .map(|r| r.norm())
    .fold(0.0, f64::max)
}

/// `c + d = -m / (m + omega - i k cot(k L))`, zero at the poles of the
/// cotangent.
pub fn limit_reflection_amplitude(omega: f64, m: f64, length: f64) -> Amplitude {
    let k = omega * refractive_index(omega, m);
    let (sin, cos) = (k * length).sin_cos();
    if sin.abs() < POLE_TOLERANCE {
        return ZERO;
    }
    -m / Complex64::new(m + omega, -k * cos / sin)
}

/// Continuum reflection probability
/// `(n^2 - 1)^2 / ((n^2 + 1)^2 + 4 n^2 cot^2(omega n L))`, zero where the
/// cotangent has a pole.
pub fn limit_probability(omega: f64, m: f64, length: f64) -> f64 {
    let n = refractive_index(omega, m);
    let n2 = n * n;
    let (sin, cos) = (omega * n * length).sin_cos();
    if sin.abs() < POLE_TOLERANCE {
        return 0.0;
    }
    let cot = cos / sin;
    (n2 - 1.0).powi(2) / ((n2 + 1.0).powi(2) + 4.0 * n2 * cot * cot)
}

/// Peak of [`limit_probability`] over the film thickness,
/// `(n^2 - 1)^2 / (n^2 + 1)^2`.
pub fn max_limit_probability(n: f64) -> f64 {
    let n2 = n * n;
    ((n2 - 1.0) / (n2 + 1.0)).powi(2)
}

/// Period of [`limit_probability`] in the film thickness, `pi / (omega n)`.
pub fn limit_period(omega: f64, m: f64) -> f64 {
    std::f64::consts::PI / (omega * refractive_index(omega, m))
}

/// Reflection by a single surface, `(n - 1)^2 / (n + 1)^2`.
pub fn single_surface_probability(n: f64) -> f64 {
    ((n - 1.0) / (n + 1.0)).powi(2)
}

/// Two-arrow toy model: front and back arrows of length 0.2, the front one
/// reversed, with relative phase `delta`.
pub fn two_arrow_probability(delta: f64) -> f64 {
    let back = Complex64::from_polar(0.2, delta);
    let front = Complex64::new(-0.2, 0.0);
    (back + front).norm_sqr()
}
