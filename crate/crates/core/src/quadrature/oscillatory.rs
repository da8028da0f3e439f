use std::f64::consts::PI;

use super::{integrate_finite, QuadratureConfig, QuadratureError, QuadratureResult};

// A bracket search that covers this many multiples of the starting scale
// without gaining π of phase treats the remaining integrand as non-oscillatory.
const STALL_SPAN: f64 = 1e6;
const MAX_DOUBLINGS: usize = 200;

/// Walks a monotone phase function from `k_start`, yielding the points where
/// the phase crosses successive integer multiples of π.
struct PhaseCuts<P> {
    phase: P,
    k: f64,
    phase_k: f64,
    next_multiple: f64,
    step: f64,
}

impl<P: Fn(f64) -> f64> PhaseCuts<P> {
    fn new(phase: P, k_start: f64) -> Result<Self, QuadratureError> {
        let phase_k = phase(k_start);
        if !phase_k.is_finite() {
            return Err(QuadratureError::NonFinite { at: k_start });
        }
        Ok(Self {
            next_multiple: (phase_k / PI).floor() + 1.0,
            phase,
            k: k_start,
            phase_k,
            step: 0.125 * k_start.abs().max(1.0),
        })
    }

    fn eval(&self, k: f64) -> Result<f64, QuadratureError> {
        let p = (self.phase)(k);
        if p.is_finite() {
            Ok(p)
        } else {
            Err(QuadratureError::NonFinite { at: k })
        }
    }

    /// Next cut, or `None` if the phase stalls.
    fn advance(&mut self) -> Result<Option<f64>, QuadratureError> {
        let target = self.next_multiple * PI;
        let origin = self.k;
        let scale = self.step;
        let mut lo = self.k;
        let mut lo_phase = self.phase_k;
        let mut h = self.step;
        let mut hi;
        let mut doublings = 0;
        loop {
            hi = lo + h;
            let p = self.eval(hi)?;
            if p < lo_phase - 1e-12 * lo_phase.abs().max(1.0) {
                return Err(QuadratureError::PhaseNotMonotone { from: lo, to: hi });
            }
            if p >= target {
                break;
            }
            lo = hi;
            lo_phase = p;
            h *= 2.0;
            doublings += 1;
            if hi - origin > STALL_SPAN * scale || doublings > MAX_DOUBLINGS || !hi.is_finite() {
                return Ok(None);
            }
        }

        // Bisection on the bracket [lo, hi] with phase(lo) < target <= phase(hi).
        loop {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid)? >= target {
                hi = mid;
            } else {
                lo = mid;
            }
        }

        self.step = hi - self.k;
        self.k = hi;
        self.phase_k = self.eval(hi)?;
        self.next_multiple = (self.phase_k / PI).floor().max(self.next_multiple) + 1.0;
        Ok(Some(hi))
    }
}

/// The first `count` panel boundaries `[k_start, k₁, k₂, …]` used by the
/// oscillatory integrator. Stops early if the phase stalls.
pub fn phase_panels<P>(phase: P, k_start: f64, count: usize) -> Result<Vec<f64>, QuadratureError>
where
    P: Fn(f64) -> f64,
{
    let mut cuts = PhaseCuts::new(phase, k_start)?;
    let mut out = vec![k_start];
    while out.len() <= count {
        match cuts.advance()? {
            Some(k) => out.push(k),
            None => break,
        }
    }
    Ok(out)
}

// Repeated pairwise averaging of the trailing `levels + 1` partial sums.
fn averaged_limit(sums: &[f64], levels: usize) -> f64 {
    let mut row: Vec<f64> = sums[sums.len() - levels - 1..].to_vec();
    for _ in 0..levels {
        for i in 0..row.len() - 1 {
            row[i] = 0.5 * (row[i] + row[i + 1]);
        }
        row.pop();
    }
    row[0]
}

fn panel_config(cfg: &QuadratureConfig) -> QuadratureConfig {
    QuadratureConfig {
        rel_tol: 0.1 * cfg.rel_tol,
        abs_tol: 0.1 * cfg.abs_tol,
        ..*cfg
    }
}

// ∫_a^∞ f via k = a + u/(1 − u).
fn mapped_tail<F>(f: F, a: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    integrate_finite(
        |u| {
            let w = 1.0 - u;
            let v = f(a + u / w);
            if v == 0.0 {
                0.0
            } else {
                v / (w * w)
            }
        },
        0.0,
        1.0,
        cfg,
    )
}

/// `∫_{k_start}^∞ amplitude(k)·cos(phase(k)) dk`.
///
/// The axis is cut where the phase passes each multiple of π; every panel is
/// integrated with [`integrate_finite`] and the alternating partial sums are
/// extrapolated by `accel_terms` levels of iterated averaging. The error
/// estimate combines the panel errors with the larger of two acceleration
/// residuals: the change from the previous panel and the change from one
/// fewer averaging level. If the phase stops advancing (for instance a zero
/// phase), the remainder is integrated as an ordinary improper integral.
pub fn integrate_oscillatory_semiinfinite<A, P>(
    amplitude: A,
    phase: P,
    k_start: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    A: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !k_start.is_finite() {
        return Err(QuadratureError::InvalidInterval {
            a: k_start,
            b: f64::INFINITY,
        });
    }
    let integrand = |k: f64| {
        let a = amplitude(k);
        if a == 0.0 {
            0.0
        } else {
            a * phase(k).cos()
        }
    };
    let inner = panel_config(cfg);
    let levels = cfg.accel_terms;
    let min_panels = cfg.tail_min_periods.max(levels + 2);

    let mut cuts = PhaseCuts::new(&phase, k_start)?;
    let mut sums: Vec<f64> = Vec::new();
    let mut partial = 0.0;
    let mut panel_error = 0.0;
    let mut panels_used = 0;
    let mut lo = k_start;
    let mut last = QuadratureResult {
        value: 0.0,
        error_estimate: f64::INFINITY,
        panels_used: 0,
        converged: false,
    };

    while sums.len() < cfg.max_subdivisions {
        let Some(hi) = cuts.advance()? else {
            let tail = mapped_tail(integrand, lo, &inner)?;
            let value = partial + tail.value;
            let error_estimate = panel_error + tail.error_estimate;
            return Ok(QuadratureResult {
                value,
                error_estimate,
                panels_used: panels_used + tail.panels_used,
                converged: tail.converged && error_estimate <= cfg.tolerance_for(value),
            });
        };
        let panel = integrate_finite(integrand, lo, hi, &inner)?;
        partial += panel.value;
        panel_error += panel.error_estimate;
        panels_used += panel.panels_used;
        sums.push(partial);
        lo = hi;

        if sums.len() < min_panels {
            continue;
        }
        let value = averaged_limit(&sums, levels);
        let previous = averaged_limit(&sums[..sums.len() - 1], levels);
        let coarser = averaged_limit(&sums, levels - 1);
        let accel_error = (value - previous).abs().max((value - coarser).abs());
        let error_estimate = accel_error + panel_error;
        last = QuadratureResult {
            value,
            error_estimate,
            panels_used,
            converged: false,
        };
        if error_estimate <= cfg.tolerance_for(value) {
            last.converged = true;
            return Ok(last);
        }
    }
    Ok(last)
}

/// `∫_ε^∞ amplitude_reg(k)·(k² − ε²)^{-1/2}·cos(phase(k)) dk`.
///
/// With `k = sqrt(ε² + s²)` the measure `dk/sqrt(k² − ε²)` becomes
/// `ds/sqrt(ε² + s²)`, so the integrable endpoint singularity disappears and
/// the integral is handed to [`integrate_oscillatory_semiinfinite`] on `s ≥ 0`.
pub fn integrate_sqrt_endpoint<A, P>(
    amplitude_reg: A,
    phase: P,
    eps: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult, QuadratureError>
where
    A: Fn(f64) -> f64,
    P: Fn(f64) -> f64,
{
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(QuadratureError::InvalidInterval {
            a: eps,
            b: f64::INFINITY,
        });
    }
    integrate_oscillatory_semiinfinite(
        |s| {
            let k = eps.hypot(s);
            amplitude_reg(k) / k
        },
        |s| phase(eps.hypot(s)),
        0.0,
        cfg,
    )
}
