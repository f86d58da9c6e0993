//! Spectral theory, closed-form propagator kernels, and weighted
//! time-decay verification for the two-dimensional magnetic Schrödinger
//! operator combining an Aharonov-Bohm flux with a homogeneous field.
//!
//! The crate is organized along the pipeline:
//!
//! * [`specfun`] — log-Gamma, Laguerre polynomials, Gauss quadrature,
//!   modified Bessel functions of complex argument;
//! * [`spectrum`] — eigenvalues, multiplicities, eigenfunctions, and norms
//!   of the operator;
//! * [`kernels`] — the Mehler propagator at zero flux, the Bessel-series
//!   propagator at general flux, the Laguerre Poisson-kernel identity, and
//!   the heat-kernel dual route that pins the normalization;
//! * [`evolve`] — the Schrödinger flow applied to concrete data, by
//!   spectral phases and by kernel quadrature, with unitarity checks;
//! * [`decay`] — grid suprema certifying the weighted dispersive decay of
//!   the flow;
//! * [`cli`] — configuration, subcommand dispatch, CSV/JSON emission.

pub mod cli;
pub mod decay;
pub mod error;
pub mod evolve;
pub mod kernels;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
