//! Modal dispersion for a channel with constant buoyancy frequency.
//!
//! With rigid-lid boundaries on `z = 0` and `z = -H`, the vertical
//! eigenfunctions are `sin(nπz/H)` and the dispersion curve of mode `n` is
//!
//! ```text
//! ω(k) = N k / sqrt(k² + b²),   b = nπ/H
//! ```
//!
//! Everything in this module is a closed-form evaluation of that curve and
//! of the quantities derived from it (group velocity, Mach number, the
//! criticality parameter ε and the cutoff wavenumber).

use std::f64::consts::PI;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispersionError {
    #[error("buoyancy frequency must be finite and positive, got {0}")]
    BuoyancyFrequency(f64),
    #[error("channel depth must be finite and positive, got {0}")]
    Depth(f64),
    #[error("mode index must be at least 1, got {0}")]
    ModeIndex(u32),
    #[error("source speed must be finite and positive, got {0}")]
    Speed(f64),
    #[error("{name} = {value} lies outside the open channel (-{depth}, 0)")]
    DepthOutsideChannel {
        name: &'static str,
        value: f64,
        depth: f64,
    },
    #[error("traverse offset must be finite, got {0}")]
    Offset(f64),
}

/// Constant-N stratified channel of depth `H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stratification {
    n_freq: f64,
    depth: f64,
}

impl Stratification {
    pub fn new(n_freq: f64, depth: f64) -> Result<Self, DispersionError> {
        if !(n_freq.is_finite() && n_freq > 0.0) {
            return Err(DispersionError::BuoyancyFrequency(n_freq));
        }
        if !(depth.is_finite() && depth > 0.0) {
            return Err(DispersionError::Depth(depth));
        }
        Ok(Self { n_freq, depth })
    }

    /// Brunt–Väisälä frequency N.
    pub fn n_freq(&self) -> f64 {
        self.n_freq
    }

    /// Channel depth H.
    pub fn depth(&self) -> f64 {
        self.depth
    }
}

/// Vertical mode index, starting at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode(u32);

impl Mode {
    pub const FIRST: Mode = Mode(1);

    pub fn new(n: u32) -> Result<Self, DispersionError> {
        if n == 0 {
            return Err(DispersionError::ModeIndex(n));
        }
        Ok(Self(n))
    }

    pub fn index(&self) -> u32 {
        self.0
    }
}

/// Source track and observation point on the traverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceGeometry {
    /// Source speed V.
    pub speed: f64,
    /// Source depth z0, inside (-H, 0).
    pub source_depth: f64,
    /// Observer depth z, inside (-H, 0).
    pub observer_depth: f64,
    /// Horizontal offset y from the source track.
    pub offset: f64,
}

impl SourceGeometry {
    pub fn new(
        strat: &Stratification,
        speed: f64,
        source_depth: f64,
        observer_depth: f64,
        offset: f64,
    ) -> Result<Self, DispersionError> {
        if !(speed.is_finite() && speed > 0.0) {
            return Err(DispersionError::Speed(speed));
        }
        let inside = |v: f64| v.is_finite() && v < 0.0 && v > -strat.depth;
        if !inside(source_depth) {
            return Err(DispersionError::DepthOutsideChannel {
                name: "z0",
                value: source_depth,
                depth: strat.depth,
            });
        }
        if !inside(observer_depth) {
            return Err(DispersionError::DepthOutsideChannel {
                name: "z",
                value: observer_depth,
                depth: strat.depth,
            });
        }
        if !offset.is_finite() {
            return Err(DispersionError::Offset(offset));
        }
        Ok(Self {
            speed,
            source_depth,
            observer_depth,
            offset,
        })
    }
}

/// Derived constants of one mode's dispersion curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeDispersion {
    /// Modal wavenumber scale b = nπ/H.
    pub b: f64,
    /// Maximum group velocity c = N/b, the long-wave phase speed.
    pub c: f64,
    /// Cubic coefficient in ω(k) = ck − αk³ + O(k⁵).
    pub alpha: f64,
    n_freq: f64,
}

/// Mach number, criticality parameter and cutoff wavenumber of a source speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalParams {
    pub mach: f64,
    /// ε = b·sqrt(|1 − M⁻²|).
    pub epsilon: f64,
    /// Smallest propagating wavenumber: ε below critical speed, 0 otherwise.
    pub cutoff: f64,
}

impl CriticalParams {
    pub fn is_subcritical(&self) -> bool {
        self.mach < 1.0
    }

    pub fn is_critical(&self) -> bool {
        self.epsilon == 0.0
    }
}

pub fn mode_dispersion(strat: &Stratification, mode: Mode) -> ModeDispersion {
    let b = f64::from(mode.index()) * PI / strat.depth;
    let c = strat.n_freq / b;
    ModeDispersion {
        b,
        c,
        alpha: c / (2.0 * b * b),
        n_freq: strat.n_freq,
    }
}

impl ModeDispersion {
    pub fn n_freq(&self) -> f64 {
        self.n_freq
    }

    /// Frequency ω(k) = N k / sqrt(k² + b²).
    pub fn omega(&self, k: f64) -> f64 {
        self.n_freq * k / k.hypot(self.b)
    }

    /// dω/dk = N b² / (k² + b²)^{3/2}; equals `c` at k = 0.
    pub fn group_velocity(&self, k: f64) -> f64 {
        let r = k.hypot(self.b);
        self.n_freq * self.b * self.b / (r * r * r)
    }

    /// Returns `(λ², μ)` with μ = ω(k)/V and λ² = k² − μ².
    ///
    /// λ² is evaluated as k²(k² + b²(1 − M⁻²))/(k² + b²) so that it stays
    /// accurate near the cutoff, where the naive difference cancels.
    pub fn lambda_mu(&self, speed: f64, k: f64) -> (f64, f64) {
        let mu = self.omega(k) / speed;
        let shift = self.b * self.b - (self.n_freq / speed).powi(2);
        let k2 = k * k;
        let lambda_sq = k2 * (k2 + shift) / (k2 + self.b * self.b);
        (lambda_sq, mu)
    }

    pub fn critical_params(&self, speed: f64) -> CriticalParams {
        let mach = speed / self.c;
        let epsilon = self.b * (1.0 - mach.powi(-2)).abs().sqrt();
        let cutoff = if mach < 1.0 { epsilon } else { 0.0 };
        CriticalParams {
            mach,
            epsilon,
            cutoff,
        }
    }
}

/// Amplitude factor `sin(nπz/H)·cos(nπz0/H) / (V N² H²)`.
pub fn amplitude(
    strat: &Stratification,
    mode: Mode,
    speed: f64,
    observer_depth: f64,
    source_depth: f64,
) -> f64 {
    let h = strat.depth;
    let n = f64::from(mode.index());
    let vertical = sin_pi(n * observer_depth / h) * cos_pi(n * source_depth / h);
    vertical / (speed * strat.n_freq * strat.n_freq * h * h)
}

// sin(πt) and cos(πt) reduced on t, so nodes come out as exact zeros.
fn sin_pi(t: f64) -> f64 {
    let r = t - t.round();
    if r == 0.0 {
        return 0.0;
    }
    // sin(π t) = (-1)^round(t) · sin(π r)
    let sign = if (t.round() as i64).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    sign * (PI * r).sin()
}

fn cos_pi(t: f64) -> f64 {
    sin_pi(t + 0.5)
}
