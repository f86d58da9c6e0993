//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The flux must stay away from the integers; at integer flux the
    /// Aharonov-Bohm term is gauge-trivial and the spectral formulas here
    /// do not apply.
    #[error("flux alpha = {alpha} is within {tol} of an integer")]
    IntegerFlux { alpha: f64, tol: f64 },

    /// `b0 * t` is too close to a multiple of pi: the propagator kernel has
    /// no pointwise meaning at the trapped-well recurrence times.
    #[error("singular time: b0*t = {bt} is within {guard} of a multiple of pi")]
    SingularTime { bt: f64, guard: f64 },

    /// The angular series cannot meet the requested tail tolerance at the
    /// configured cutoff.
    #[error("truncation: estimated tail {est_tail:e} exceeds tolerance {tail_tol:e} at k_max = {k_max}")]
    Truncation {
        est_tail: f64,
        tail_tol: f64,
        k_max: usize,
    },

    /// The prefactor calibration failed to reach unitarity.
    #[error("calibration failed: {0}")]
    Calibration(String),

    /// Spectral cutoff too small for the requested data (Parseval defect
    /// above tolerance).
    #[error("cutoff insufficient: Parseval defect {defect:e} exceeds {tol:e} (k_max = {k_max}, m_max = {m_max})")]
    CutoffInsufficient {
        defect: f64,
        tol: f64,
        k_max: usize,
        m_max: usize,
    },

    /// A quadrature did not reach its accuracy target.
    #[error("accuracy: {0}")]
    Accuracy(String),

    /// Invalid run configuration (CLI / config file).
    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
