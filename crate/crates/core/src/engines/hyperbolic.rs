//! Overflow-free hyperbolic ratios. Every ratio is rewritten in terms of
//! `exp(-t)` with the dominant exponent cancelled, so arguments in the
//! thousands stay finite.

/// `coth(z)` for `z > 0`.
pub fn coth(z: f64) -> f64 {
    1.0 / z.tanh()
}

/// `cosh((n − 2ℓ)λ) / sinh(nλ)` for `0 ≤ ℓ ≤ n`, `λ > 0`.
pub fn cosh_shift_over_sinh(n: f64, ell: f64, lambda: f64) -> f64 {
    let num = (-2.0 * ell * lambda).exp() + (-2.0 * (n - ell) * lambda).exp();
    num / -(-2.0 * n * lambda).exp_m1()
}

/// `sinh(a) · sinh(b) / sinh(a + b)` for `a, b ≥ 0`, `a + b > 0`.
pub fn sinh_product_over_sinh_sum(a: f64, b: f64) -> f64 {
    (-2.0 * a).exp_m1() * (-2.0 * b).exp_m1() / (-2.0 * (-2.0 * (a + b)).exp_m1())
}
