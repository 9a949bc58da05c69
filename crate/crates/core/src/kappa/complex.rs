//! Analytic continuation of the κ-based transforms to complex `λ`.
//!
//! The κ equation is integrated in `a` along the real segment `[0, a]` with
//! complex state. `κ^γ` is evaluated on the branch obtained by tracking the
//! argument of `κ` continuously from its initial value, which reproduces the
//! principal branch on the positive real axis and continues it analytically
//! into `ℂ \ (-∞, 0]`.
//!
//! For `μ = 0` the state is `(κ, log L)` with `L = 1 - κ^γ/λ`; the second
//! component obeys `(log L)' = -γ κ^{γ-1}` and gives `L` without cancellation.
//! For `μ = ∞` the state is `w = κ^{-(γ-1)}`, which starts at 0 and solves
//! `w' = (γ-1)(1 - λ w^{γ/(γ-1)})`.

use crate::error::{Error, Result};
use crate::index::StableIndex;
use crate::kappa::v_height;
use crate::numeric::cplx::{self, pow_tracked};
use crate::numeric::ode::{integrate, OdeOptions, State};
use num_complex::Complex64;

fn check(op: &'static str, lambda: Complex64) -> Result<()> {
    if !(lambda.re.is_finite() && lambda.im.is_finite()) {
        return Err(Error::domain(op, format!("λ={lambda} is not finite")));
    }
    if lambda.im == 0.0 && lambda.re <= 0.0 {
        return Err(Error::domain(op, format!("λ={lambda} on the cut (-∞, 0]")));
    }
    Ok(())
}

/// `(κ_a(λ, 0), 1 - κ_a(λ,0)^γ/λ)`.
pub fn kappa_zero_mu(idx: StableIndex, a: f64, lambda: Complex64) -> Result<(Complex64, Complex64)> {
    check("kappa_zero_mu", lambda)?;
    let g = idx.gamma();
    let zero = Complex64::new(0.0, 0.0);
    if a == 0.0 {
        return Ok((zero, Complex64::new(1.0, 0.0)));
    }
    let rhs = |y: &State<2>, arg: f64| {
        let (kg1, _) = pow_tracked(y[0], g - 1.0, arg);
        [lambda - kg1 * y[0], -g * kg1]
    };
    let end = integrate(rhs, [zero, zero], lambda.arg(), a, OdeOptions::default())?;
    Ok((end.y[0], end.y[1].exp()))
}

/// `κ_a(λ, ∞)`.
pub fn kappa_infinite_mu(idx: StableIndex, a: f64, lambda: Complex64) -> Result<Complex64> {
    check("kappa_infinite_mu", lambda)?;
    if !(a > 0.0) {
        return Err(Error::domain("kappa_infinite_mu", format!("a={a} must be > 0")));
    }
    let g1 = idx.gamma() - 1.0;
    let q = idx.alpha_mass();
    let rhs = |y: &State<1>, arg: f64| {
        let (wq, _) = pow_tracked(y[0], q, arg);
        [g1 * (1.0 - lambda * wq)]
    };
    let end = integrate(rhs, [Complex64::new(0.0, 0.0)], 0.0, a, OdeOptions::default())?;
    let (k, _) = pow_tracked(end.y[0], -idx.alpha_inv(), end.arg);
    Ok(k)
}

/// `E[e^{-λ M*}]` for a shell of width `w`, continued to complex `λ`.
pub fn shell(idx: StableIndex, width: f64, lambda: Complex64) -> Result<Complex64> {
    if idx.is_brownian() {
        check("shell", lambda)?;
        return Ok(cplx::sech2(width * lambda.sqrt()));
    }
    Ok(kappa_zero_mu(idx, width, lambda)?.1)
}

/// `Φ_{a,b}(λ)` continued to complex `λ`.
pub fn phi(idx: StableIndex, a: f64, b: f64, lambda: Complex64) -> Result<Complex64> {
    check("phi", lambda)?;
    if !(a > 0.0) || !(b >= 0.0) {
        return Err(Error::domain("phi", format!("need a>0, b≥0 (a={a}, b={b})")));
    }
    if idx.is_brownian() {
        return Ok(phi_brownian(a, b, lambda));
    }
    let top = kappa_infinite_mu(idx, a, lambda)?;
    let (bottom, _) = kappa_zero_mu(idx, a + b, lambda)?;
    Ok((top - bottom) / v_height(idx, a)?)
}

/// `a s (coth(a s) - tanh((a+b) s))`, `s = √λ`, as `2 a s (q₁+q₂)/((1-q₁)(1+q₂))`.
pub fn phi_brownian(a: f64, b: f64, lambda: Complex64) -> Complex64 {
    let s = lambda.sqrt();
    let x = a * s;
    let q1 = (-2.0 * x).exp();
    let q2 = (-2.0 * (a + b) * s).exp();
    let one_minus_q1 = -cplx::expm1(-2.0 * x);
    x * 2.0 * (q1 + q2) / (one_minus_q1 * (1.0 + q2))
}

/// `exp(-γ λ^{(γ-1)/γ})`, the transform of the positive stable law `S`.
pub fn stable(idx: StableIndex, lambda: Complex64) -> Complex64 {
    (-idx.gamma() * lambda.powf(idx.lambda_exponent())).exp()
}
