//! Certified series for the Brownian (`γ = 2`) laws of `m(B(ρ, 1+c))` under
//! `N_1` and of `M*`.
//!
//! Each law has a direct series in `e^{-π² y}` (fast for large `y`) and a
//! dual one in `e^{-1/y}` obtained from the Jacobi modular transformation
//! `Σ_{n∈ℤ} e^{-π² n² y} = (π y)^{-1/2} Σ_{k∈ℤ} e^{-k²/y}`. The dual forms give
//! the lower tail `P(X ≤ y)` directly, so probabilities of size `e^{-1/y}`
//! keep full relative precision.

use crate::error::{Error, Result};
use crate::numeric::special::erfc;
use std::f64::consts::PI;
use std::sync::OnceLock;

use super::SeriesAccumulator;

const MAX_TERMS: usize = 100_000;

/// Sums `Σ_{k≥k0} term(k)` until the tail bound `rest(k+1)` (a bound on
/// `Σ_{j>k} |term(j)|`) and the next term are both below `tol` relative to
/// the partial sum (absolute once the sum exceeds 1).
fn sum_certified<T, R>(op: &'static str, k0: usize, term: T, rest: R, tol: f64) -> Result<SeriesAccumulator>
where
    T: Fn(usize) -> f64,
    R: Fn(usize) -> f64,
{
    let mut sum = 0.0;
    let mut k = k0;
    loop {
        sum += term(k);
        let bound = rest(k + 1);
        let scale = sum.abs().min(1.0);
        if bound <= tol * scale && term(k + 1).abs() <= tol * scale {
            return Ok(SeriesAccumulator {
                value: sum,
                terms_used: k + 1 - k0,
                remainder_bound: bound,
            });
        }
        if k - k0 >= MAX_TERMS || !bound.is_finite() {
            return Err(Error::Tolerance {
                op,
                achieved: bound,
                requested: tol,
            });
        }
        k += 1;
    }
}

/// `Σ_{m ≥ m0, m ≡ m0 mod 2} e^{-α m²} ≤ e^{-α m0²}/(1 - e^{-4 α m0})`.
fn odd_step_gaussian_tail(alpha: f64, m0: f64) -> f64 {
    (-alpha * m0 * m0).exp() / -(-4.0 * alpha * m0).exp_m1()
}

/// `Σ_{j ≥ k0} e^{-β j²} ≤ e^{-β k0²}/(1 - e^{-2 β k0})`.
fn unit_step_gaussian_tail(beta: f64, k0: f64) -> f64 {
    (-beta * k0 * k0).exp() / -(-2.0 * beta * k0).exp_m1()
}

fn check_y(op: &'static str, y: f64, tol: f64) -> Result<()> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::domain(op, format!("y={y} must be finite and > 0")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(op, format!("tol={tol} must be > 0")));
    }
    Ok(())
}

/// `A(y) = Σ_{n≥0} e^{-π²(2n+1)² y/4}` summed directly.
pub fn a_direct(y: f64, tol: f64) -> Result<SeriesAccumulator> {
    let alpha = PI * PI * y / 4.0;
    sum_certified(
        "a_direct",
        0,
        |n| (-alpha * ((2 * n + 1) as f64).powi(2)).exp(),
        |n| odd_step_gaussian_tail(alpha, (2 * n + 1) as f64),
        tol,
    )
}

/// `A(y) = (4πy)^{-1/2} (1 + 2 Σ_{k≥1} (-1)^k e^{-k²/y})`.
pub fn a_dual(y: f64, tol: f64) -> Result<SeriesAccumulator> {
    let beta = 1.0 / y;
    let inner = sum_certified(
        "a_dual",
        1,
        |k| if k % 2 == 0 { 1.0 } else { -1.0 } * 2.0 * (-beta * (k * k) as f64).exp(),
        |k| 2.0 * unit_step_gaussian_tail(beta, k as f64),
        tol * 0.5,
    )?;
    let pre = 1.0 / (4.0 * PI * y).sqrt();
    Ok(SeriesAccumulator {
        value: pre * (1.0 + inner.value),
        terms_used: inner.terms_used + 1,
        remainder_bound: pre * inner.remainder_bound,
    })
}

/// One-time check that the modular transformation is wired correctly: the
/// direct and dual forms of `A(1)` must agree to `1e-12`.
fn dual_validated() -> Result<()> {
    static CHECK: OnceLock<Result<()>> = OnceLock::new();
    CHECK
        .get_or_init(|| {
            let d = a_direct(1.0, 1e-15)?.value;
            let t = a_dual(1.0, 1e-15)?.value;
            if (d - t).abs() <= 1e-12 * d {
                Ok(())
            } else {
                Err(Error::Consistency {
                    op: "theta dual of A at y=1",
                    first: d,
                    second: t,
                })
            }
        })
        .clone()
}

/// `N_1(m(B(ρ, 1+c)) ≥ y)` from the direct series
/// `(2/(1+c)) Σ_{n≥0} e^{-π²(2n+1)² y/(4(1+c)²)} - 2 Σ_{n≥1} e^{-π² n² y}`.
pub fn ball_tail_direct(c: f64, y: f64, tol: f64) -> Result<SeriesAccumulator> {
    let d = 1.0 + c;
    let a1 = PI * PI * y / (4.0 * d * d);
    let a2 = PI * PI * y;
    let first = sum_certified(
        "brownian_ball_tail",
        0,
        |n| (2.0 / d) * (-a1 * ((2 * n + 1) as f64).powi(2)).exp(),
        |n| (2.0 / d) * odd_step_gaussian_tail(a1, (2 * n + 1) as f64),
        tol * 0.5,
    )?;
    let second = sum_certified(
        "brownian_ball_tail",
        1,
        |n| 2.0 * (-a2 * (n * n) as f64).exp(),
        |n| 2.0 * unit_step_gaussian_tail(a2, n as f64),
        tol * 0.5,
    )?;
    Ok(SeriesAccumulator {
        value: (first.value - second.value).clamp(0.0, 1.0),
        terms_used: first.terms_used + second.terms_used,
        remainder_bound: first.remainder_bound + second.remainder_bound,
    })
}

/// `N_1(m(B(ρ, 1+c)) ≤ y)` from the dual series
/// `(πy)^{-1/2} · 2 [Σ_{k≥1} e^{-k²/y} - Σ_{k≥1} (-1)^k e^{-k²(1+c)²/y}]`.
pub fn ball_cdf_dual(c: f64, y: f64, tol: f64) -> Result<SeriesAccumulator> {
    dual_validated()?;
    let d = 1.0 + c;
    let pre = 2.0 / (PI * y).sqrt();
    let b1 = 1.0 / y;
    let b2 = d * d / y;
    // the two sums are interleaved so the relative stopping rule sees the
    // full value; c = 0 makes the odd terms of the second cancel the first
    let term = |k: usize| {
        let kk = (k * k) as f64;
        let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
        pre * ((-b1 * kk).exp() + sign * (-b2 * kk).exp())
    };
    let rest = |k: usize| pre * (unit_step_gaussian_tail(b1, k as f64) + unit_step_gaussian_tail(b2, k as f64));
    let s = sum_certified("brownian_ball_cdf", 1, term, rest, tol)?;
    Ok(SeriesAccumulator {
        value: s.value.clamp(0.0, 1.0),
        ..s
    })
}

/// Below this `y` the dual (small-`y`) representation is used.
fn ball_switch(c: f64) -> f64 {
    2.0 * (1.0 + c) / PI
}

/// `N_1(m(B(ρ, 1+c)) ≥ y)`, choosing the representation without cancellation.
pub fn brownian_ball_tail(c: f64, y: f64, tol: f64) -> Result<SeriesAccumulator> {
    check_y("brownian_ball_tail", y, tol)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::domain(
            "brownian_ball_tail",
            format!("c={c} must be finite and ≥ 0"),
        ));
    }
    if y >= ball_switch(c) {
        ball_tail_direct(c, y, tol)
    } else {
        let f = ball_cdf_dual(c, y, tol)?;
        Ok(SeriesAccumulator {
            value: 1.0 - f.value,
            ..f
        })
    }
}

/// `N_1(m(B(ρ, 1+c)) ≤ y)`, choosing the representation without cancellation.
pub fn brownian_ball_cdf(c: f64, y: f64, tol: f64) -> Result<SeriesAccumulator> {
    check_y("brownian_ball_cdf", y, tol)?;
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::domain(
            "brownian_ball_cdf",
            format!("c={c} must be finite and ≥ 0"),
        ));
    }
    if y >= ball_switch(c) {
        let t = ball_tail_direct(c, y, tol)?;
        Ok(SeriesAccumulator {
            value: 1.0 - t.value,
            ..t
        })
    } else {
        ball_cdf_dual(c, y, tol)
    }
}

/// `P(M* ≥ y) = Σ_{n≥0} 4(2/(π²(2n+1)²) + y) e^{-π²(2n+1)² y/4}`.
pub fn brownian_mstar_tail(y: f64, tol: f64) -> Result<SeriesAccumulator> {
    check_y("brownian_mstar_tail", y, tol)?;
    let alpha = PI * PI * y / 4.0;
    let s = sum_certified(
        "brownian_mstar_tail",
        0,
        |n| {
            let m = (2 * n + 1) as f64;
            4.0 * (2.0 / (PI * PI * m * m) + y) * (-alpha * m * m).exp()
        },
        |n| {
            let m = (2 * n + 1) as f64;
            4.0 * (2.0 / (PI * PI * m * m) + y) * odd_step_gaussian_tail(alpha, m)
        },
        tol,
    )?;
    Ok(SeriesAccumulator {
        value: s.value.clamp(0.0, 1.0),
        ..s
    })
}

/// `P(M* ≤ y)` from `2∫_0^y A - 4yA(y)` with `A` in its dual form. Termwise
/// integration leaves `4 Σ_{k≥1} (-1)^{k+1} k erfc(k/√y)`.
pub fn brownian_mstar_cdf_small(y: f64, tol: f64) -> Result<SeriesAccumulator> {
    check_y("brownian_mstar_cdf_small", y, tol)?;
    dual_validated()?;
    let sy = y.sqrt();
    let term = |k: usize| {
        let kf = k as f64;
        let sign = if k.is_multiple_of(2) { -1.0 } else { 1.0 };
        sign * 4.0 * kf * erfc(kf / sy)
    };
    // k erfc(k/√y) ≤ √(y/π) e^{-k²/y}
    let rest = |k: usize| 4.0 * (y / PI).sqrt() * unit_step_gaussian_tail(1.0 / y, k as f64);
    let s = sum_certified("brownian_mstar_cdf_small", 1, term, rest, tol)?;
    Ok(SeriesAccumulator {
        value: s.value.clamp(0.0, 1.0),
        ..s
    })
}

/// `P(M* ≤ y)` for any `y > 0`.
pub fn brownian_mstar_cdf(y: f64, tol: f64) -> Result<f64> {
    if y <= 1.0 {
        Ok(brownian_mstar_cdf_small(y, tol)?.value)
    } else {
        Ok(1.0 - brownian_mstar_tail(y, tol)?.value)
    }
}
