//! Reference implementations that share no code with the library.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn rel_err(got: f64, expect: f64) -> f64 {
    ((got - expect) / expect).abs()
}

// ---------------------------------------------------------------------------
// Airy function from its Maclaurin series in 320-bit fixed point.

const FRAC_BITS: u64 = 320;

fn one() -> BigInt {
    BigInt::one() << FRAC_BITS
}

fn fmul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> FRAC_BITS
}

fn fdiv(a: &BigInt, b: &BigInt) -> BigInt {
    (a << FRAC_BITS) / b
}

fn to_f64(a: &BigInt) -> f64 {
    // keep ~64 significant bits before converting
    let bits = a.bits();
    let shift = bits.saturating_sub(64);
    let top = (a >> shift).to_f64().expect("fits");
    top * 2f64.powi(shift as i32 - FRAC_BITS as i32)
}

/// Exact fixed-point image of a finite double.
fn from_f64(x: f64) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let mut mant = (bits & ((1 << 52) - 1)) as i64;
    if exp != 0 {
        mant |= 1 << 52;
    }
    let e = if exp == 0 { -1074 } else { exp - 1075 };
    let m = BigInt::from(mant);
    let shift = e + FRAC_BITS as i64;
    assert!(shift >= 0, "value too small for fixed point");
    let v = m << shift as u64;
    if x < 0.0 {
        -v
    } else {
        v
    }
}

// atan(1/q) by its alternating series
fn atan_inv(q: u64) -> BigInt {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut power = one() / &q;
    let mut sum = power.clone();
    let mut k = 1u64;
    while !power.is_zero() {
        power = &power / &q2;
        let term = &power / BigInt::from(2 * k + 1);
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

fn pi() -> BigInt {
    BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239)
}

// Γ(1/3) = γ(1/3, X) + Γ(1/3, X) with X = 125, so X^{1/3} = 5 and the
// upper part (~1e−56) is far below the working precision:
// γ(a, X) = X^a e^{−X} Σ X^n / (a (a+1) ⋯ (a+n)).
fn gamma_third() -> BigInt {
    let x = BigInt::from(125);
    let mut term = BigInt::from(3) * one(); // 1/a
    let mut series = term.clone();
    let mut n = 1u64;
    loop {
        // term *= X / (a + n) = 3X / (1 + 3n)
        term = term * BigInt::from(3) * &x / BigInt::from(1 + 3 * n);
        series += &term;
        if n > 400 && term.is_zero() {
            break;
        }
        n += 1;
    }
    let mut exp_term = one();
    let mut exp_sum = one();
    let mut k = 1u64;
    loop {
        exp_term = exp_term * &x / BigInt::from(k);
        exp_sum += &exp_term;
        if k > 400 && exp_term.is_zero() {
            break;
        }
        k += 1;
    }
    BigInt::from(5) * fdiv(&series, &exp_sum)
}

struct AiryConstants {
    // Ai(0) = 3^{-1/6} Γ(1/3) / (2π), −Ai'(0) = 3^{-1/3} / Γ(1/3)
    ai0: BigInt,
    minus_aip0: BigInt,
}

fn airy_constants() -> &'static AiryConstants {
    static CONSTS: OnceLock<AiryConstants> = OnceLock::new();
    CONSTS.get_or_init(|| {
        let g = gamma_third();
        let root6 = (BigInt::from(3) << (6 * FRAC_BITS)).nth_root(6);
        let root3 = (BigInt::from(3) << (3 * FRAC_BITS)).nth_root(3);
        let two_pi = BigInt::from(2) * pi();
        AiryConstants {
            ai0: fdiv(&g, &fmul(&root6, &two_pi)),
            minus_aip0: fdiv(&one(), &fmul(&root3, &g)),
        }
    })
}

pub fn airy_ai_f64_constants() -> (f64, f64) {
    let c = airy_constants();
    (to_f64(&c.ai0), to_f64(&c.minus_aip0))
}

/// `Ai(x)` at the exact binary value of `x`, good to ~1e−30 absolute for
/// `|x| ≤ 10`.
pub fn airy_ai_reference(x: f64) -> f64 {
    let c = airy_constants();
    let xf = from_f64(x);
    let x3 = fmul(&fmul(&xf, &xf), &xf);
    let series = |first: BigInt, offset: u64| {
        let mut term = first;
        let mut sum = term.clone();
        let mut k = 1u64;
        while !term.is_zero() || k < 4 {
            let m = 3 * k;
            term = fmul(&term, &x3) / BigInt::from((m + offset - 1) * (m + offset));
            sum += &term;
            k += 1;
        }
        sum
    };
    let f = series(one(), 0);
    let g = series(xf, 1);
    let ai = fmul(&c.ai0, &f) - fmul(&c.minus_aip0, &g);
    if ai.abs().is_zero() {
        0.0
    } else {
        to_f64(&ai)
    }
}

// ---------------------------------------------------------------------------
// K₀ from K₀(x) = ½ ∫_ℝ exp(−x cosh t) dt by the trapezoidal rule. The
// integrand is analytic and bounded in |Im t| < π/2, so the error of step
// h is O(exp(−π²/h)). For large x the peak narrows to width ~1/sqrt(x) and
// the usable strip shrinks with it, so h also scales as 1/sqrt(x).

pub fn bessel_k0_reference(x: f64) -> f64 {
    assert!(x > 0.0);
    let h = (1.0 / 32.0f64).min(0.5 / x.sqrt());
    let mut sum = 0.5 * (-x).exp();
    let mut j = 1u32;
    loop {
        let term = (-x * (j as f64 * h).cosh()).exp();
        sum += term;
        if term < 1e-20 * sum {
            break;
        }
        j += 1;
    }
    h * sum
}

// ---------------------------------------------------------------------------
// Dispersion by shooting: ω(k) of mode n solves the vertical problem
// φ'' + k²(N²/ω² − 1) φ = 0, φ(−H) = φ(0) = 0. With the Prüfer angle θ
// (φ = r sin θ, φ' = r cos θ), θ' = cos²θ + m² sin²θ, θ(−H) = 0, and the
// n-th mode has θ(0) = nπ.

fn prufer_end_angle(m2: f64, depth: f64) -> f64 {
    let steps = 4000;
    let h = depth / steps as f64;
    let rhs = |th: f64| th.cos().powi(2) + m2 * th.sin().powi(2);
    let mut th = 0.0;
    for _ in 0..steps {
        let k1 = rhs(th);
        let k2 = rhs(th + 0.5 * h * k1);
        let k3 = rhs(th + 0.5 * h * k2);
        let k4 = rhs(th + h * k3);
        th += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    th
}

pub fn omega_shooting(n_freq: f64, depth: f64, mode: u32, k: f64) -> f64 {
    let target = mode as f64 * std::f64::consts::PI;
    let (mut lo, mut hi) = (0.0_f64, n_freq);
    // θ(0) decreases as ω grows (m² = k²(N²/ω² − 1) falls).
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let m2 = k * k * (n_freq * n_freq / (mid * mid) - 1.0);
        if prufer_end_angle(m2, depth) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
