//! Reflection of light by a thin film in a checkerboard lattice model.
//!
//! A photon emitted at the left face of a film of thickness `L` travels
//! along diagonal lattice paths of step `eps`; every scattering inside the
//! film multiplies its arrow by `-i m eps`. The crate computes the resulting
//! reflection amplitude three ways that check each other:
//!
//! * [`paths`]: brute-force sums over checker paths and light paths,
//! * [`transfer`]: time stepping with the transfer operator and summing the
//!   phase-weighted time series,
//! * [`steady`]: the time-harmonic banded linear system, its plane-wave
//!   solution and the continuum closed form.
//!
//! [`sixvertex`] recasts each checker-path summand as a product of local
//! vertex weights.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod model;
pub mod paths;
pub mod sixvertex;
pub mod steady;
pub mod transfer;

pub use error::{Error, Result};
pub use model::{probability, Amplitude, LatticePoint, Model, ModelParams, WaveField};
