use std::f64::consts::PI;

use super::steed::scaled_bessel_k;
use super::{SpecfunError, SpecialValue};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Power series and continued fraction agree to ~1e-15 here.
const SERIES_LIMIT: f64 = 2.0;

/// Zero-order Macdonald function K₀(x), `x > 0`.
///
/// Power series in `x²/4` (coupled to I₀) up to `x = 2`, Steed's continued
/// fraction beyond. Results below the normal range are flagged
/// [`UnderflowToZero`](super::DomainFlag::UnderflowToZero).
pub fn bessel_k0(x: f64) -> Result<SpecialValue, SpecfunError> {
    if x.is_nan() || x <= 0.0 {
        return Err(SpecfunError::Domain(x, "K0"));
    }
    if x == f64::INFINITY {
        return Ok(SpecialValue::checked(0.0));
    }
    if x <= SERIES_LIMIT {
        return Ok(SpecialValue::normal(k0_series(x)));
    }
    Ok(SpecialValue::checked(k0_continued_fraction(x)))
}

// K₀(x) = −(ln(x/2) + γ) I₀(x) + Σ_{k≥1} H_k (x²/4)^k / (k!)²
fn k0_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut i0 = 1.0;
    let mut harmonic = 0.0;
    let mut tail = 0.0;
    for k in 1..200 {
        let fk = k as f64;
        term *= q / (fk * fk);
        harmonic += 1.0 / fk;
        i0 += term;
        let add = harmonic * term;
        tail += add;
        if add < 1e-17 * tail {
            break;
        }
    }
    -((0.5 * x).ln() + EULER_GAMMA) * i0 + tail
}

fn k0_continued_fraction(x: f64) -> f64 {
    let s = scaled_bessel_k(0.0, x);
    // split the exponential to delay underflow
    let half = (-0.5 * x).exp();
    (PI / (2.0 * x)).sqrt() * half * s * half
}
