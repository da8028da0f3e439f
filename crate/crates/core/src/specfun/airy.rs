use std::f64::consts::{FRAC_1_PI, FRAC_PI_4, PI};

use super::double_double::DoubleDouble;
use super::steed::scaled_bessel_k;
use super::SpecialValue;

// Ai(0) = 3^{-2/3}/Γ(2/3) and −Ai'(0) = 3^{-1/3}/Γ(1/3) as double-doubles.
const AI0: DoubleDouble = DoubleDouble::new(0.355_028_053_887_817_2, 2.052_336_324_362_12e-17);
const MINUS_AIP0: DoubleDouble =
    DoubleDouble::new(0.258_819_403_792_806_8, -2.522_243_111_610_832e-17);

/// Above this the decaying K_{1/3} form is used.
const POSITIVE_SWITCH: f64 = 3.0;
/// Below this the oscillatory asymptotic expansion is used.
const NEGATIVE_SWITCH: f64 = -10.0;

/// Airy function of the first kind for real `x`.
///
/// * `−10 ≤ x ≤ 3`: Maclaurin series summed in double-double arithmetic,
///   which absorbs the cancellation between the two series for negative x.
/// * `x > 3`: `Ai(x) = π⁻¹ sqrt(x/3) K_{1/3}(ζ)`, `ζ = 2x^{3/2}/3`.
/// * `x < −10`: Poincaré expansion in `1/ζ`, whose smallest term there is
///   below 1e−17.
pub fn airy_ai(x: f64) -> SpecialValue {
    if x.is_nan() {
        return SpecialValue::normal(f64::NAN);
    }
    if x > POSITIVE_SWITCH {
        return SpecialValue::checked(ai_decaying(x));
    }
    if x < NEGATIVE_SWITCH {
        return SpecialValue::normal(ai_oscillatory(-x));
    }
    SpecialValue::normal(ai_maclaurin(x))
}

// Ai(x) = Ai(0) f(x) + Ai'(0) g(x),
// f = Σ 3^k (1/3)_k x^{3k}/(3k)!,  g = Σ 3^k (2/3)_k x^{3k+1}/(3k+1)!
fn ai_maclaurin(x: f64) -> f64 {
    let xd = DoubleDouble::from_f64(x);
    let x3 = xd * xd * xd;

    let sum_series = |first: DoubleDouble, offset: f64| {
        let mut term = first;
        let mut sum = first;
        let mut peak = first.hi.abs();
        for k in 1..400 {
            let m = 3.0 * k as f64;
            term = (term * x3).div_f64((m + offset - 1.0) * (m + offset));
            sum = sum + term;
            peak = peak.max(term.hi.abs());
            if term.hi.abs() <= 1e-34 * peak {
                break;
            }
        }
        sum
    };
    let f = sum_series(DoubleDouble::from_f64(1.0), 0.0);
    let g = sum_series(xd, 1.0);
    (AI0 * f - MINUS_AIP0 * g).to_f64()
}

fn ai_decaying(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x * x.sqrt();
    let s = scaled_bessel_k(1.0 / 3.0, zeta);
    let half = (-0.5 * zeta).exp();
    FRAC_1_PI * (x / 3.0).sqrt() * (PI / (2.0 * zeta)).sqrt() * half * s * half
}

// Ai(−z) ~ π^{-1/2} z^{-1/4} [cos(ζ − π/4) Σ(−1)^k u_{2k} ζ^{-2k}
//                            + sin(ζ − π/4) Σ(−1)^k u_{2k+1} ζ^{-2k-1}]
fn ai_oscillatory(z: f64) -> f64 {
    let zeta = 2.0 / 3.0 * z * z.sqrt();
    let mut even = 0.0;
    let mut odd = 0.0;
    let mut u = 1.0;
    let mut power = 1.0;
    let mut last = f64::INFINITY;
    for k in 0..60usize {
        if k > 0 {
            let fk = k as f64;
            u *= (6.0 * fk - 5.0) * (6.0 * fk - 3.0) * (6.0 * fk - 1.0)
                / ((2.0 * fk - 1.0) * 216.0 * fk);
            power /= zeta;
        }
        let term = u * power;
        if term > last || term < 1e-18 {
            break;
        }
        last = term;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            even += sign * term;
        } else {
            odd += sign * term;
        }
    }
    let theta = zeta - FRAC_PI_4;
    (theta.cos() * even + theta.sin() * odd) / (PI.sqrt() * z.sqrt().sqrt())
}
