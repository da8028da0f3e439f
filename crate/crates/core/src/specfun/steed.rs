// Steed's continued fraction (CF2) for modified Bessel functions of the
// second kind, after Temme's formulation. Valid for |ν| ≤ 1/2; converges
// quickly once x ≳ 1.5.

const MAX_ITER: usize = 10_000;

/// `e^{x} sqrt(2x/π) K_ν(x)` for `|ν| ≤ 1/2`, `x > 0`.
pub(crate) fn scaled_bessel_k(nu: f64, x: f64) -> f64 {
    debug_assert!(nu.abs() <= 0.5 && x > 0.0);
    let a1 = 0.25 - nu * nu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 0.5 * f64::EPSILON {
            break;
        }
    }
    1.0 / s
}
