//! Steady-state elevation of one mode on the traverse of the source.
//!
//! For a source at speed `V` with Mach number `M = V/c` and criticality
//! parameter ε, the exact elevation is
//!
//! ```text
//! η = A ∫ N² cos(y k T(k)) / S(k) dk
//! T(k) = sqrt(k² ± ε²) / sqrt(k² + b²),   S(k) = sqrt(k² ± ε²) · sqrt(k² + b²)
//! ```
//!
//! with the upper sign for `M > 1` (integral from 0) and the lower sign for
//! `M < 1` (integral from the cutoff ε; below it the integrand of the complex
//! form has no real part). Near `M = 1` the integral collapses onto
//! `A N²/(2b) · K₀(y ε²/(2b))`, and for strongly supercritical sources far
//! from the track it is approximated by an Airy function.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use thiserror::Error;

use crate::dispersion::{
    amplitude, mode_dispersion, CriticalParams, Mode, ModeDispersion, SourceGeometry,
    Stratification,
};
use crate::quadrature::{
    integrate_oscillatory_semiinfinite, integrate_sqrt_endpoint, QuadratureConfig, QuadratureError,
};
use crate::specfun::{airy_ai, bessel_k0, SpecfunError};

/// Mach numbers this close to 1 are treated as exactly critical.
pub const CRITICAL_MACH_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Exact,
    Macdonald,
    Airy,
    Auto,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Exact, Method::Macdonald, Method::Airy, Method::Auto];

    pub fn name(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Macdonald => "macdonald",
            Method::Airy => "airy",
            Method::Auto => "auto",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "macdonald" => Ok(Method::Macdonald),
            "airy" => Ok(Method::Airy),
            "auto" => Ok(Method::Auto),
            other => Err(format!("unknown method `{other}`")),
        }
    }
}

/// Which argument the Macdonald asymptotic feeds to K₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum K0Argument {
    /// `y ε² / (2b)`, from the sinh substitution in the small-k integral.
    #[default]
    Derived,
    /// `π y ε² / H`, an alternative scaling kept for comparison.
    Printed,
}

/// Regime boundaries used by [`eta_auto`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AutoThresholds {
    /// Use the Macdonald form when `|M − 1| ≤ delta_mac`.
    pub delta_mac: f64,
    /// Use the Airy form when `M ≥ m_airy` and `y/H ≥ y_airy`.
    pub m_airy: f64,
    pub y_airy: f64,
}

impl Default for AutoThresholds {
    fn default() -> Self {
        Self {
            delta_mac: 0.25,
            m_airy: 2.0,
            y_airy: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FieldOptions {
    pub k0_argument: K0Argument,
    pub auto: AutoThresholds,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRequest {
    pub strat: Stratification,
    pub mode: Mode,
    pub geometry: SourceGeometry,
    pub method: Method,
    pub quad_cfg: QuadratureConfig,
    pub options: FieldOptions,
}

impl FieldRequest {
    pub fn new(
        strat: Stratification,
        mode: Mode,
        geometry: SourceGeometry,
        method: Method,
    ) -> Self {
        Self {
            strat,
            mode,
            geometry,
            method,
            quad_cfg: QuadratureConfig::default(),
            options: FieldOptions::default(),
        }
    }

    pub fn with_method(self, method: Method) -> Self {
        Self { method, ..self }
    }

    pub fn dispersion(&self) -> ModeDispersion {
        mode_dispersion(&self.strat, self.mode)
    }

    pub fn critical_params(&self) -> CriticalParams {
        self.dispersion().critical_params(self.geometry.speed)
    }

    fn amplitude(&self) -> f64 {
        let g = &self.geometry;
        amplitude(
            &self.strat,
            self.mode,
            g.speed,
            g.observer_depth,
            g.source_depth,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regime {
    pub mach: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaValue {
    pub value: f64,
    pub method_used: Method,
    /// Numerical error of the evaluation (quadrature error for the exact
    /// integral; zero for the closed-form asymptotics).
    pub error_estimate: f64,
    pub regime: Regime,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FieldError {
    #[error("source moves at the critical speed (M = {mach}); the mode amplitude diverges")]
    CriticalSpeed { mach: f64 },
    #[error("invalid field request: {0}")]
    Domain(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error("{} mode(s) failed: {}", .0.len(), describe_modes(.0))]
    Modes(Vec<(u32, FieldError)>),
}

fn describe_modes(errs: &[(u32, FieldError)]) -> String {
    errs.iter()
        .map(|(n, e)| format!("mode {n}: {e}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Phase and amplitude kernels of the exact integrand for one Mach branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchKernels {
    b: f64,
    epsilon: f64,
    supercritical: bool,
}

pub fn branch_kernels(
    md: &ModeDispersion,
    cp: &CriticalParams,
) -> Result<BranchKernels, FieldError> {
    if is_critical(cp) {
        return Err(FieldError::CriticalSpeed { mach: cp.mach });
    }
    Ok(BranchKernels {
        b: md.b,
        epsilon: cp.epsilon,
        supercritical: cp.mach > 1.0,
    })
}

impl BranchKernels {
    pub fn is_supercritical(&self) -> bool {
        self.supercritical
    }

    // sqrt(k² ± ε²); NaN inside the evanescent band of the subcritical branch.
    fn shifted_root(&self, k: f64) -> f64 {
        if self.supercritical {
            k.hypot(self.epsilon)
        } else if k >= self.epsilon {
            ((k - self.epsilon) * (k + self.epsilon)).sqrt()
        } else {
            f64::NAN
        }
    }

    /// `T(k) = sqrt(k² ± ε²)/sqrt(k² + b²)`; NaN for `k < ε` when `M < 1`.
    pub fn t(&self, k: f64) -> f64 {
        self.shifted_root(k) / k.hypot(self.b)
    }

    /// `S(k) = sqrt(k² ± ε²)·sqrt(k² + b²)`; NaN for `k < ε` when `M < 1`.
    pub fn s(&self, k: f64) -> f64 {
        self.shifted_root(k) * k.hypot(self.b)
    }

    /// The complex integrand `N² exp(i y k T(k)) / S(k)` on the whole half
    /// axis, with principal square roots, as it appears before restricting
    /// to the real part.
    pub fn complex_integrand(&self, k: f64, offset: f64, n_freq: f64) -> Complex64 {
        let sign = if self.supercritical { 1.0 } else { -1.0 };
        let root = Complex64::new(k * k + sign * self.epsilon * self.epsilon, 0.0).sqrt();
        let r = k.hypot(self.b);
        let t = root / r;
        let s = root * r;
        let phase = Complex64::i() * offset * k * t;
        phase.exp() * (n_freq * n_freq) / s
    }
}

/// Coefficients of the far-field Airy form, defined for `M > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AiryCoefficients {
    /// `p = sqrt(M² − 1)`.
    pub p: f64,
    /// `β = V⁴ α (V² − c²)^{-5/2}`.
    pub beta: f64,
}

pub fn airy_coefficients(
    md: &ModeDispersion,
    cp: &CriticalParams,
    speed: f64,
) -> Result<AiryCoefficients, FieldError> {
    if cp.mach <= 1.0 || is_critical(cp) {
        return Err(FieldError::Domain(format!(
            "Airy asymptotic needs M > 1, got M = {}",
            cp.mach
        )));
    }
    let p = (cp.mach * cp.mach - 1.0).sqrt();
    let excess = (speed - md.c) * (speed + md.c);
    let beta = speed.powi(4) * md.alpha * excess.powf(-2.5);
    Ok(AiryCoefficients { p, beta })
}

fn is_critical(cp: &CriticalParams) -> bool {
    cp.epsilon == 0.0 || (cp.mach - 1.0).abs() <= CRITICAL_MACH_TOLERANCE
}

fn check_request(req: &FieldRequest) -> Result<(), FieldError> {
    let g = &req.geometry;
    if !(g.offset.is_finite() && g.offset > 0.0) {
        return Err(FieldError::Domain(format!(
            "traverse offset y must be positive, got {}",
            g.offset
        )));
    }
    if !(g.speed.is_finite() && g.speed > 0.0) {
        return Err(FieldError::Domain(format!(
            "source speed must be positive, got {}",
            g.speed
        )));
    }
    let h = req.strat.depth();
    for (name, z) in [("z", g.observer_depth), ("z0", g.source_depth)] {
        if !(z.is_finite() && (-h..=0.0).contains(&z)) {
            return Err(FieldError::Domain(format!(
                "{name} = {z} is outside [-{h}, 0]"
            )));
        }
    }
    Ok(())
}

fn regime(cp: &CriticalParams) -> Regime {
    Regime {
        mach: cp.mach,
        epsilon: cp.epsilon,
    }
}

/// Exact steady-state elevation from the oscillatory wavenumber integral.
pub fn eta_exact(req: &FieldRequest) -> Result<EtaValue, FieldError> {
    check_request(req)?;
    let md = req.dispersion();
    let cp = md.critical_params(req.geometry.speed);
    let kernels = branch_kernels(&md, &cp)?;
    let a = req.amplitude();
    let done = |value: f64, error_estimate: f64| EtaValue {
        value,
        method_used: Method::Exact,
        error_estimate,
        regime: regime(&cp),
    };
    if a == 0.0 {
        return Ok(done(0.0, 0.0));
    }

    let y = req.geometry.offset;
    let n2 = md.n_freq() * md.n_freq();
    let b = md.b;
    let result = if kernels.is_supercritical() {
        integrate_oscillatory_semiinfinite(
            |k| n2 / kernels.s(k),
            |k| y * k * kernels.t(k),
            0.0,
            &req.quad_cfg,
        )?
    } else {
        integrate_sqrt_endpoint(
            |k| n2 / k.hypot(b),
            |k| y * k * kernels.t(k),
            cp.epsilon,
            &req.quad_cfg,
        )?
    };
    let result = result.into_converged()?;
    Ok(done(a * result.value, a.abs() * result.error_estimate))
}

/// Near-critical asymptotic `A N²/(2b) · K₀(y ε²/(2b))`.
pub fn eta_macdonald(req: &FieldRequest) -> Result<EtaValue, FieldError> {
    check_request(req)?;
    let md = req.dispersion();
    let cp = md.critical_params(req.geometry.speed);
    if is_critical(&cp) {
        return Err(FieldError::CriticalSpeed { mach: cp.mach });
    }
    let y = req.geometry.offset;
    let eps2 = cp.epsilon * cp.epsilon;
    let arg = match req.options.k0_argument {
        K0Argument::Derived => y * eps2 / (2.0 * md.b),
        K0Argument::Printed => std::f64::consts::PI * y * eps2 / req.strat.depth(),
    };
    let k0 = bessel_k0(arg)?.value;
    let n2 = md.n_freq() * md.n_freq();
    Ok(EtaValue {
        value: req.amplitude() * n2 / (2.0 * md.b) * k0,
        method_used: Method::Macdonald,
        error_estimate: 0.0,
        regime: regime(&cp),
    })
}

/// Far-field asymptotic for `M > 1`:
/// `A N² / (2bε q) · Ai(y/q)` with `q = (3βyp)^{1/3}`.
pub fn eta_airy(req: &FieldRequest) -> Result<EtaValue, FieldError> {
    check_request(req)?;
    let md = req.dispersion();
    let v = req.geometry.speed;
    let cp = md.critical_params(v);
    let coeffs = airy_coefficients(&md, &cp, v)?;
    let y = req.geometry.offset;
    let q = (3.0 * coeffs.beta * y * coeffs.p).cbrt();
    let n2 = md.n_freq() * md.n_freq();
    let value = req.amplitude() * n2 / (2.0 * md.b * cp.epsilon * q) * airy_ai(y / q).value;
    Ok(EtaValue {
        value,
        method_used: Method::Airy,
        error_estimate: 0.0,
        regime: regime(&cp),
    })
}

/// Picks the method for a request's regime without evaluating it.
pub fn auto_method(req: &FieldRequest) -> Method {
    let t = &req.options.auto;
    let mach = req.critical_params().mach;
    let y_over_h = req.geometry.offset / req.strat.depth();
    if (mach - 1.0).abs() <= t.delta_mac {
        Method::Macdonald
    } else if mach >= t.m_airy && y_over_h >= t.y_airy {
        Method::Airy
    } else {
        Method::Exact
    }
}

/// Evaluates with the cheapest representation valid for the regime.
pub fn eta_auto(req: &FieldRequest) -> Result<EtaValue, FieldError> {
    let chosen = req.with_method(auto_method(req));
    evaluate(&chosen)
}

/// Dispatches on `req.method`.
pub fn evaluate(req: &FieldRequest) -> Result<EtaValue, FieldError> {
    match req.method {
        Method::Exact => eta_exact(req),
        Method::Macdonald => eta_macdonald(req),
        Method::Airy => eta_airy(req),
        Method::Auto => eta_auto(req),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModeContribution {
    pub mode: Mode,
    pub eta: EtaValue,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiModeValue {
    pub value: f64,
    pub error_estimate: f64,
    pub contributions: Vec<ModeContribution>,
    /// Modes whose Mach number is critical; they are left out of the sum.
    pub skipped: Vec<Mode>,
}

/// Sum of the steady per-mode fields for modes `1..=n_max`.
pub fn eta_multimode(
    strat: &Stratification,
    geometry: &SourceGeometry,
    n_max: u32,
    method: Method,
    quad_cfg: &QuadratureConfig,
    options: &FieldOptions,
) -> Result<MultiModeValue, FieldError> {
    if n_max < 1 {
        return Err(FieldError::Domain("n_max must be at least 1".into()));
    }
    let mut out = MultiModeValue {
        value: 0.0,
        error_estimate: 0.0,
        contributions: Vec::with_capacity(n_max as usize),
        skipped: Vec::new(),
    };
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let mode = Mode::new(n).expect("n >= 1");
        let req = FieldRequest {
            strat: *strat,
            mode,
            geometry: *geometry,
            method,
            quad_cfg: *quad_cfg,
            options: *options,
        };
        if is_critical(&req.critical_params()) {
            log::warn!(
                "mode {n} is exactly critical at V = {}; skipped",
                geometry.speed
            );
            out.skipped.push(mode);
            continue;
        }
        match evaluate(&req) {
            Ok(eta) => {
                out.value += eta.value;
                out.error_estimate += eta.error_estimate;
                out.contributions.push(ModeContribution { mode, eta });
            }
            Err(e) => failures.push((n, e)),
        }
    }
    if failures.is_empty() {
        Ok(out)
    } else {
        Err(FieldError::Modes(failures))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit_request(mach: f64, y_over_h: f64, method: Method) -> FieldRequest {
        let strat = Stratification::new(1.0, PI).unwrap();
        let md = mode_dispersion(&strat, Mode::FIRST);
        let geometry =
            SourceGeometry::new(&strat, mach * md.c, -PI / 4.0, -PI / 4.0, y_over_h * PI).unwrap();
        FieldRequest::new(strat, Mode::FIRST, geometry, method)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn kernels_at_special_points() {
        let sup = unit_request(2.0, 3.0, Method::Exact);
        let md = sup.dispersion();
        let cp = sup.critical_params();
        let k = branch_kernels(&md, &cp).unwrap();
        assert!((k.t(0.0) - cp.epsilon / md.b).abs() < 1e-15);
        assert!((k.s(0.0) - cp.epsilon * md.b).abs() < 1e-15);
        assert!((k.t(1.0) - 7f64.sqrt() / (2.0 * 2f64.sqrt())).abs() < 1e-15);

        let sub = unit_request(0.6, 3.0, Method::Exact);
        let cp = sub.critical_params();
        let k = branch_kernels(&md, &cp).unwrap();
        assert_eq!(k.t(cp.epsilon), 0.0);
        assert_eq!(k.s(cp.epsilon), 0.0);
        assert!(k.t(0.5 * cp.epsilon).is_nan());
    }

    #[test]
    fn kernels_approach_unity() {
        let req = unit_request(1.4, 1.0, Method::Exact);
        let k = branch_kernels(&req.dispersion(), &req.critical_params()).unwrap();
        assert!((k.t(1e6) - 1.0).abs() < 1e-11);
        assert!((k.s(1e6) / 1e12 - 1.0).abs() < 1e-11);
    }

    #[test]
    fn critical_speed_is_rejected() {
        let req = unit_request(1.0, 3.0, Method::Exact);
        assert!(matches!(
            eta_exact(&req),
            Err(FieldError::CriticalSpeed { .. })
        ));
        assert!(matches!(
            eta_macdonald(&req),
            Err(FieldError::CriticalSpeed { .. })
        ));
        assert!(matches!(eta_airy(&req), Err(FieldError::Domain(_))));
        let md = req.dispersion();
        assert!(branch_kernels(&md, &req.critical_params()).is_err());
    }

    #[test]
    fn zero_amplitude_short_circuits() {
        let mut req = unit_request(1.3, 2.0, Method::Exact);
        req.geometry.observer_depth = 0.0;
        for m in Method::ALL {
            assert_eq!(evaluate(&req.with_method(m)).unwrap().value, 0.0, "{m}");
        }
        let mut req = unit_request(0.7, 2.0, Method::Exact);
        req.geometry.source_depth = -PI / 2.0;
        assert_eq!(eta_exact(&req).unwrap().value, 0.0);
        assert_eq!(eta_macdonald(&req).unwrap().value, 0.0);
    }

    #[test]
    fn non_positive_offset_is_rejected() {
        let mut req = unit_request(1.3, 2.0, Method::Exact);
        req.geometry.offset = 0.0;
        assert!(matches!(eta_macdonald(&req), Err(FieldError::Domain(_))));
        assert!(matches!(eta_exact(&req), Err(FieldError::Domain(_))));
    }

    #[test]
    fn macdonald_diverges_towards_critical() {
        let v: Vec<f64> = [1.001, 1.01, 1.1]
            .iter()
            .map(|&m| {
                eta_macdonald(&unit_request(m, 3.0, Method::Macdonald))
                    .unwrap()
                    .value
                    .abs()
            })
            .collect();
        assert!(v[0] > v[1] && v[1] > v[2]);
    }

    #[test]
    fn macdonald_tracks_exact_near_critical() {
        for m in [1.05, 0.95] {
            let req = unit_request(m, 3.0, Method::Exact);
            let exact = eta_exact(&req).unwrap().value;
            let mac = eta_macdonald(&req).unwrap().value;
            assert!(rel(mac, exact) <= 0.10, "M = {m}");
        }
    }

    #[test]
    fn airy_needs_supercritical_source() {
        let req = unit_request(0.8, 3.0, Method::Airy);
        assert!(matches!(eta_airy(&req), Err(FieldError::Domain(_))));
        let md = req.dispersion();
        let sup = unit_request(2.0, 3.0, Method::Airy);
        let c = airy_coefficients(&md, &sup.critical_params(), 2.0).unwrap();
        assert!((c.p - 3f64.sqrt()).abs() < 1e-15);
        // β = 16 · ½ · 3^{-5/2}
        assert!((c.beta - 8.0 * 3f64.powf(-2.5)).abs() < 1e-15);
    }

    #[test]
    fn auto_dispatch() {
        let pick = |m: f64, y: f64| {
            eta_auto(&unit_request(m, y, Method::Auto))
                .unwrap()
                .method_used
        };
        assert_eq!(pick(1.1, 3.0), Method::Macdonald);
        assert_eq!(pick(2.5, 3.0), Method::Airy);
        assert_eq!(pick(1.6, 1.0), Method::Exact);
        assert_eq!(pick(2.5, 1.0), Method::Exact);
    }

    #[test]
    fn multimode_single_mode_matches() {
        let req = unit_request(1.3, 2.0, Method::Exact);
        let single = eta_exact(&req).unwrap();
        let multi = eta_multimode(
            &req.strat,
            &req.geometry,
            1,
            Method::Exact,
            &req.quad_cfg,
            &req.options,
        )
        .unwrap();
        assert_eq!(multi.value, single.value);
        assert_eq!(multi.contributions.len(), 1);
    }

    #[test]
    fn multimode_skips_critical_mode() {
        // V = c₂ makes the second mode exactly critical.
        let strat = Stratification::new(1.0, PI).unwrap();
        let c2 = mode_dispersion(&strat, Mode::new(2).unwrap()).c;
        let geometry = SourceGeometry::new(&strat, c2, -1.0, -0.7, 2.0 * PI).unwrap();
        let multi = eta_multimode(
            &strat,
            &geometry,
            3,
            Method::Exact,
            &QuadratureConfig::default(),
            &FieldOptions::default(),
        )
        .unwrap();
        assert_eq!(multi.skipped, vec![Mode::new(2).unwrap()]);
        assert_eq!(multi.contributions.len(), 2);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }
}
