//! Overflow-safe complex elementary functions used by the closed-form transforms.

use num_complex::Complex64;
use std::f64::consts::PI;

/// `e^z - 1` without cancellation near the origin.
pub fn expm1(z: Complex64) -> Complex64 {
    let (x, y) = (z.re, z.im);
    let half = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * half * half, x.exp() * y.sin())
}

/// `tanh z` evaluated through `e^{-2|Re z|}` so it never overflows.
pub fn tanh(z: Complex64) -> Complex64 {
    if z.re < 0.0 {
        return -tanh(-z);
    }
    let q = (-2.0 * z).exp();
    -expm1(-2.0 * z) / (1.0 + q)
}

/// `sech² z = 4q/(1+q)²`, `q = e^{-2z}`, for `Re z ≥ 0`.
pub fn sech2(z: Complex64) -> Complex64 {
    let z = if z.re < 0.0 { -z } else { z };
    let q = (-2.0 * z).exp();
    4.0 * q / ((1.0 + q) * (1.0 + q))
}

/// Principal power `|z|^e exp(i e θ)` with `θ` the argument of `z` unwrapped to
/// the branch closest to `ref_arg`. Returns the power and the unwrapped argument.
#[inline]
pub fn pow_tracked(z: Complex64, e: f64, ref_arg: f64) -> (Complex64, f64) {
    let r = z.norm();
    if r == 0.0 {
        return (Complex64::new(0.0, 0.0), ref_arg);
    }
    let theta = unwrap(z.arg(), ref_arg);
    (Complex64::from_polar(r.powf(e), e * theta), theta)
}

/// Shifts `theta` by a multiple of `2π` so it lies within `π` of `reference`.
#[inline]
pub fn unwrap(theta: f64, reference: f64) -> f64 {
    let k = ((reference - theta) / (2.0 * PI)).round();
    theta + 2.0 * PI * k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn expm1_small_and_large() {
        let z = Complex64::new(1e-9, -2e-9);
        assert!(close(
            expm1(z),
            Complex64::new(1e-9 + 0.5 * (1e-18 - 4e-18), -2e-9 - 2e-18),
            1e-12
        ));
        let z = Complex64::new(0.7, 2.3);
        assert!(close(expm1(z), z.exp() - 1.0, 1e-14));
    }

    #[test]
    fn tanh_matches_naive_in_safe_region_and_saturates() {
        let z = Complex64::new(0.3, 0.9);
        assert!(close(tanh(z), z.tanh(), 1e-14));
        let big = Complex64::new(800.0, 3.0);
        let t = tanh(big);
        assert!(t.re.is_finite() && (t - 1.0).norm() < 1e-300 + 1e-15);
        assert!(close(tanh(-z), -z.tanh(), 1e-14));
    }

    #[test]
    fn sech2_identity() {
        let z = Complex64::new(1.1, -0.4);
        let t = tanh(z);
        assert!(close(sech2(z), 1.0 - t * t, 1e-13));
    }

    #[test]
    fn tracked_power_crosses_cut_continuously() {
        let e = 1.5;
        let a = Complex64::from_polar(2.0, 3.1);
        let b = Complex64::from_polar(2.0, -3.1); // just across the negative axis
        let (_, ta) = pow_tracked(a, e, 3.1);
        let (pb, tb) = pow_tracked(b, e, ta);
        assert!((tb - (2.0 * PI - 3.1)).abs() < 1e-12);
        let expect = Complex64::from_polar(2f64.powf(e), e * (2.0 * PI - 3.1));
        assert!(close(pb, expect, 1e-13));
    }
}
