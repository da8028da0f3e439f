//! Numerical integration engine.
//!
//! Three entry points share one configuration and result type:
//!
//! * [`integrate_finite`] — globally adaptive 15-point Gauss–Kronrod on a
//!   bounded interval.
//! * [`integrate_oscillatory_semiinfinite`] — `∫ amplitude(k) cos(phase(k)) dk`
//!   over `[k_start, ∞)`, cut into panels at every multiple of π in phase
//!   and summed with iterated-averaging (Euler-type) acceleration.
//! * [`integrate_sqrt_endpoint`] — the same integral with an extra
//!   `(k² − ε²)^{-1/2}` factor on `[ε, ∞)`, regularised by `k = sqrt(ε² + s²)`.

mod kronrod;
mod oscillatory;

use thiserror::Error;

pub use kronrod::integrate_finite;
pub use oscillatory::{integrate_oscillatory_semiinfinite, integrate_sqrt_endpoint, phase_panels};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Cap on subintervals of a finite integral and on phase panels of a
    /// semi-infinite one.
    pub max_subdivisions: usize,
    /// Phase panels summed before the accelerated limit may be accepted.
    pub tail_min_periods: usize,
    /// Number of iterated-averaging levels applied to the partial sums.
    pub accel_terms: usize,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            tail_min_periods: 8,
            accel_terms: 6,
        }
    }
}

impl QuadratureConfig {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        Self { rel_tol, ..self }
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        let bad = |what: &str| Err(QuadratureError::InvalidConfig(what.to_string()));
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return bad("rel_tol must be positive");
        }
        if !(self.abs_tol >= 0.0 && self.abs_tol.is_finite()) {
            return bad("abs_tol must be non-negative");
        }
        if self.max_subdivisions < 1 {
            return bad("max_subdivisions must be at least 1");
        }
        if self.tail_min_periods < 4 {
            return bad("tail_min_periods must be at least 4");
        }
        if self.accel_terms < 2 {
            return bad("accel_terms must be at least 2");
        }
        Ok(())
    }

    /// Error target for a value: `max(abs_tol, rel_tol·|value|)`.
    pub fn tolerance_for(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    /// Gauss–Kronrod panels evaluated in the final partition.
    pub panels_used: usize,
    pub converged: bool,
}

impl QuadratureResult {
    /// Turns a non-converged result into [`QuadratureError::NonConvergence`].
    pub fn into_converged(self) -> Result<Self, QuadratureError> {
        if self.converged {
            Ok(self)
        } else {
            Err(QuadratureError::NonConvergence(self))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("integrand is not finite at {at}")]
    NonFinite { at: f64 },
    #[error("phase decreases between {from} and {to}")]
    PhaseNotMonotone { from: f64, to: f64 },
    #[error(
        "quadrature did not converge: value {} with error estimate {} after {} panels",
        .0.value, .0.error_estimate, .0.panels_used
    )]
    NonConvergence(QuadratureResult),
}
