//! Numerical inversion of `F(λ) = ∫_0^∞ e^{-λy} f(y) dy` at a single point.

use crate::error::Result;
use num_complex::Complex64;
use std::f64::consts::{LN_2, PI};

/// Fixed Talbot contour (Abate–Valkó) with `M` nodes.
///
/// `f(t) ≈ (r/M)[½F(r)e^{rt} + Σ_{k=1}^{M-1} Re(e^{t s_k} F(s_k)(1 + iσ_k))]`,
/// `r = 2M/(5t)`, `s_k = rθ_k(cot θ_k + i)`, `θ_k = kπ/M`.
pub fn talbot<F>(f: F, t: f64, m: usize) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mf = m as f64;
    let r = 2.0 * mf / (5.0 * t);
    let mut sum = 0.5 * (f(Complex64::new(r, 0.0))? * (r * t).exp()).re;
    for k in 1..m {
        let theta = k as f64 * PI / mf;
        let cot = 1.0 / theta.tan();
        let s = Complex64::new(r * theta * cot, r * theta);
        let sigma = theta + (theta * cot - 1.0) * cot;
        let w = (t * s).exp() * Complex64::new(1.0, sigma);
        sum += (w * f(s)?).re;
    }
    Ok(r / mf * sum)
}

/// Parameters of the Euler-accelerated Bromwich series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerParams {
    /// Damping `A`; the discretisation error is about `e^{-A}` for `|f| ≤ 1`.
    pub a: f64,
    /// Terms summed before averaging.
    pub n: usize,
    /// Binomial averaging order.
    pub m: usize,
}

impl Default for EulerParams {
    fn default() -> Self {
        Self { a: 18.4, n: 15, m: 11 }
    }
}

/// Abate–Whitt EULER: trapezoidal rule on the Bromwich line `Re λ = A/(2t)`
/// with binomial (Euler) averaging of the alternating partial sums.
pub fn euler<F>(f: F, t: f64, p: EulerParams) -> Result<f64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let x = p.a / (2.0 * t);
    let h = PI / t;
    let pre = (0.5 * p.a).exp() / t;
    let mut partial = 0.5 * pre * f(Complex64::new(x, 0.0))?.re;
    let total = p.n + p.m;
    let mut sums = Vec::with_capacity(p.m + 1);
    for k in 1..=total {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        partial += sign * pre * f(Complex64::new(x, k as f64 * h))?.re;
        if k >= p.n {
            sums.push(partial);
        }
    }
    let scale = 0.5f64.powi(p.m as i32);
    let mut binom = 1.0;
    let mut out = 0.0;
    for (j, s) in sums.iter().enumerate() {
        out += binom * s;
        binom *= (p.m - j) as f64 / (j + 1) as f64;
    }
    Ok(out * scale)
}

/// Gaver–Stehfest weights `V_k`, `k = 1..2N`.
fn stehfest_weights(n: usize) -> Vec<f64> {
    let fact = |k: usize| (1..=k).fold(1.0, |a, i| a * i as f64);
    (1..=2 * n)
        .map(|k| {
            let lo = k.div_ceil(2);
            let hi = k.min(n);
            let mut v = 0.0;
            for j in lo..=hi {
                v += (j as f64).powi(n as i32) * fact(2 * j)
                    / (fact(n - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
            }
            if (n + k) % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// Gaver–Stehfest inversion from real samples only. Double precision limits
/// the usable `N` to about 8, and hence the accuracy to roughly `1e-5`.
pub fn stehfest<F>(f: F, t: f64, n: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let c = LN_2 / t;
    let mut sum = 0.0;
    for (i, v) in stehfest_weights(n).into_iter().enumerate() {
        sum += v * f((i + 1) as f64 * c)?;
    }
    Ok(c * sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    // F(λ) = 1/(λ+1) ↔ f(t) = e^{-t}
    fn exp_transform(z: Complex64) -> Result<Complex64> {
        Ok(1.0 / (z + 1.0))
    }

    #[test]
    fn talbot_exponential() {
        for t in [0.1, 1.0, 5.0] {
            let v = talbot(exp_transform, t, 32).unwrap();
            assert!((v - (-t).exp()).abs() < 1e-10, "t={t}: {v}");
        }
    }

    #[test]
    fn euler_exponential() {
        for t in [0.1, 1.0, 5.0] {
            let v = euler(exp_transform, t, EulerParams::default()).unwrap();
            assert!((v - (-t).exp()).abs() < 1e-8, "t={t}: {v}");
        }
    }

    #[test]
    fn stehfest_exponential() {
        let v = stehfest(|l| Ok(1.0 / (l + 1.0)), 1.0, 7).unwrap();
        assert!((v - (-1.0f64).exp()).abs() < 1e-5);
    }

    #[test]
    fn weights_sum_to_zero() {
        // Σ V_k = 0 because the inverse of a constant is a point mass at 0
        let s: f64 = stehfest_weights(7).iter().sum();
        assert!(s.abs() < 1e-6);
    }
}
