//! The constant `C_γ = ∫_0^1 u^{-1}((1-u)^{-(γ-1)/γ} - 1) du` and the power
//! series `h(y) = Σ a_n y^n`, `exp(-h(y)) = Σ c_n y^n`.

use crate::error::{Error, Result};
use crate::index::StableIndex;
use crate::numeric::quad::integrate;

/// `C_γ` by quadrature after `1 - u = t^γ`, which turns the integrand into
/// the bounded `γ (1 - t^{γ-1})/(1 - t^γ)`.
pub fn c_gamma_quadrature(idx: StableIndex) -> f64 {
    let g = idx.gamma();
    let f = |t: f64| {
        let lt = t.ln();
        g * ((g - 1.0) * lt).exp_m1() / (g * lt).exp_m1()
    };
    integrate(f, 0.0, 1.0, 1e-16, 1e-15, 2000).value
}

/// `C_γ = Σ_{n≥1} b_n/n`, `b_n = ∏_{k≤n}(1 - 1/(γk))`, with the tail
/// summed by its asymptotic expansion. Returns `(value, remainder_bound)`.
pub fn c_gamma_series(idx: StableIndex, n_terms: usize, tail_terms: usize) -> (f64, f64) {
    let g = idx.gamma();
    let p = idx.lambda_exponent();
    let mut b = 1.0;
    let mut sum = 0.0;
    // backwards summation would need the terms stored; the terms decrease
    // slowly so compensated summation is enough
    let mut comp = 0.0;
    for n in 1..=n_terms {
        b *= 1.0 - 1.0 / (g * n as f64);
        let y = b / n as f64 - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    let n = n_terms as f64;
    let mut tail = 0.0;
    let mut num = 1.0;
    let mut den = 1.0;
    for k in 0..tail_terms {
        if k > 0 {
            num *= p - k as f64;
            den *= n + p - k as f64;
        }
        tail += num / ((1.0 - p + k as f64) * den);
    }
    let k = tail_terms as f64;
    let bound = (b * num * (p - k) / ((1.0 - p + k) * den * (n + p - k))).abs();
    (sum + b * tail, bound)
}

/// `C_γ`, computed by quadrature and by series and required to agree.
pub fn c_gamma(idx: StableIndex, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::domain("c_gamma", format!("tol={tol} must be > 0")));
    }
    let quad = c_gamma_quadrature(idx);
    let (series, bound) = c_gamma_series(idx, 4096, 8);
    if bound > tol.max(1e-15) {
        return Err(Error::Tolerance {
            op: "c_gamma",
            achieved: bound,
            requested: tol,
        });
    }
    if (quad - series).abs() > 10.0 * tol {
        return Err(Error::Consistency {
            op: "c_gamma",
            first: quad,
            second: series,
        });
    }
    Ok(quad)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable {
    pub gamma: StableIndex,
    /// `a[n-1] = a_n`.
    pub a: Vec<f64>,
    /// `c[n-1] = c_n`; `c_0 = 1` is implicit.
    pub c: Vec<f64>,
    pub c_gamma: f64,
}

impl CoeffTable {
    /// `Σ_{n≤N} |c_n|`, including `c_0`.
    pub fn abs_c_sum(&self) -> f64 {
        1.0 + self.c.iter().map(|c| c.abs()).sum::<f64>()
    }

    /// `Σ_{n=0}^N c_n y^n` by Horner.
    pub fn exp_minus_h(&self, y: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, &c| (acc + c) * y) + 1.0
    }
}

/// The coefficients `a_n = (1/n) ∏_{k≤n}(1 - 1/(γk))` and `c_n` from
/// `n c_n = -Σ_{k=1}^n k a_k c_{n-k}`.
pub fn expansion_coeffs(idx: StableIndex, n: usize) -> Result<CoeffTable> {
    if n == 0 {
        return Err(Error::domain("expansion_coeffs", "N must be ≥ 1"));
    }
    let g = idx.gamma();
    let mut a = Vec::with_capacity(n);
    let mut b = 1.0;
    for k in 1..=n {
        b *= 1.0 - 1.0 / (g * k as f64);
        a.push(b / k as f64);
    }
    let mut c = vec![1.0];
    for m in 1..=n {
        let s: f64 = (1..=m).map(|k| k as f64 * a[k - 1] * c[m - k]).sum();
        c.push(-s / m as f64);
    }
    c.remove(0);
    Ok(CoeffTable {
        gamma: idx,
        a,
        c,
        c_gamma: c_gamma(idx, 1e-12)?,
    })
}
