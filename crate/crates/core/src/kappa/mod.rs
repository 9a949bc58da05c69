//! The Laplace-exponent semigroup `κ_a(λ, μ)` of the stable CSBP with
//! branching mechanism `ψ(u) = u^γ`, i.e. the solution of
//! `∂_a κ = λ - κ^γ`, `κ_0 = μ`, together with the transforms built from it.
//!
//! Real arguments are solved through the integral equation
//! `∫_μ^κ du/(λ - u^γ) = a`, rescaled by the fixed point `λ^{1/γ}` onto the
//! radial potential of [`potential`]. Complex `λ` (needed by contour
//! inversion) goes through [`complex`].
//!
//! The ball transform follows the scaling `Φ_{a,b}(λ) = Φ_{1,b/a}(a^{γ/(γ-1)} λ)`,
//! which corresponds to the ball `B(ρ, 1 + b/a)` after rescaling heights by `a`.

pub mod complex;
pub mod potential;
pub mod transform;

use crate::error::{Error, Result};
use crate::index::StableIndex;
use crate::numeric::quad::integrate_tight;
use crate::numeric::roots::newton_bracketed;
use potential::{Position, RadialPotential};

pub use transform::TransformHandle;

/// Local-time argument, with `+∞` kept as a distinct value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mu {
    Finite(f64),
    Infinite,
}

impl Mu {
    pub fn from_f64(mu: f64) -> Self {
        if mu == f64::INFINITY {
            Mu::Infinite
        } else {
            Mu::Finite(mu)
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Mu::Finite(m) => m,
            Mu::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaQuery {
    pub a: f64,
    pub lambda: f64,
    pub mu: Mu,
}

impl KappaQuery {
    pub fn new(a: f64, lambda: f64, mu: Mu) -> Result<Self> {
        if !(a.is_finite() && a >= 0.0) {
            return Err(Error::domain(
                "KappaQuery",
                format!("level a={a} must be finite and ≥ 0"),
            ));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::domain(
                "KappaQuery",
                format!("lambda={lambda} must be finite and ≥ 0"),
            ));
        }
        if let Mu::Finite(m) = mu {
            if !(m.is_finite() && m >= 0.0) {
                return Err(Error::domain(
                    "KappaQuery",
                    format!("mu={m} must be ≥ 0 (use Mu::Infinite for +∞)"),
                ));
            }
        }
        Ok(Self { a, lambda, mu })
    }
}

/// `v(a) = N(sup H > a) = ((γ-1)a)^{-1/(γ-1)}`.
pub fn v_height(idx: StableIndex, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain("v_height", format!("a={a} must be > 0")));
    }
    Ok(((idx.gamma() - 1.0) * a).powf(-idx.alpha_inv()))
}

/// `κ_a(0, μ) = ((γ-1)a + μ^{-(γ-1)})^{-1/(γ-1)}`.
pub fn kappa_zero_lambda(idx: StableIndex, a: f64, mu: Mu) -> Result<f64> {
    if !(a >= 0.0) {
        return Err(Error::domain("kappa_zero_lambda", format!("a={a} must be ≥ 0")));
    }
    let g1 = idx.gamma() - 1.0;
    match mu {
        Mu::Infinite if a == 0.0 => Ok(f64::INFINITY),
        Mu::Infinite => v_height(idx, a),
        Mu::Finite(m) if a == 0.0 || m == 0.0 => Ok(m),
        // μ (1 + (γ-1) a μ^{γ-1})^{-1/(γ-1)}
        Mu::Finite(m) => Ok(m * (-idx.alpha_inv() * (g1 * a * m.powf(g1)).ln_1p()).exp()),
    }
}

/// Closed-form Brownian (`γ = 2`) semigroup.
pub fn kappa_brownian(a: f64, lambda: f64, mu: Mu) -> Result<f64> {
    KappaQuery::new(a, lambda, mu)?;
    let s = lambda.sqrt();
    if a == 0.0 {
        return Ok(mu.as_f64());
    }
    if lambda == 0.0 {
        return Ok(match mu {
            Mu::Infinite => 1.0 / a,
            Mu::Finite(m) => m / a.mul_add(m, 1.0),
        });
    }
    // tanh saturates to exactly 1 for large arguments, so no overflow
    let t = (a * s).tanh();
    Ok(match mu {
        Mu::Infinite => s / t,
        Mu::Finite(m) if m == s => s,
        Mu::Finite(m) => s * s.mul_add(t, m) / m.mul_add(t, s),
    })
}

/// Location of `κ` relative to the fixed point `λ^{1/γ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Branch {
    /// `λ = 0`: the value itself.
    Degenerate(f64),
    /// `κ = λ^{1/γ}`.
    Fixed,
    /// `κ = λ^{1/γ} x`, potential index `q = γ`.
    Below(Position),
    /// `κ = λ^{1/γ} x^{-1/(γ-1)}`, potential index `q = γ/(γ-1)`.
    Above(Position),
}

/// The `Q_0`/`Q_1` quantities of the large-`λ` analysis at level 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QDiagnostics {
    /// `a(λ) = log(κ_1(λ,∞)^γ/λ - 1)`.
    pub a_lambda: f64,
    /// `Q_0(λ) = γ λ^{(γ-1)/γ} + a(λ)`.
    pub q0: f64,
    /// `b(λ) = -log(1 - κ_{1+c}(λ,0)^γ/λ)`.
    pub b_lambda: f64,
    /// `Q_1(λ) = (1+c) γ λ^{(γ-1)/γ} - b(λ)`.
    pub q1: f64,
}

/// Real-argument κ solver for one stable index. Holds the two rescaled
/// potentials so repeated evaluations do not rebuild them.
#[derive(Debug, Clone, Copy)]
pub struct Kappa {
    idx: StableIndex,
    below: RadialPotential,
    above: RadialPotential,
}

impl Kappa {
    pub fn new(idx: StableIndex) -> Self {
        Self {
            idx,
            below: RadialPotential::new(idx.gamma()),
            above: RadialPotential::new(idx.alpha_mass()),
        }
    }

    pub fn index(&self) -> StableIndex {
        self.idx
    }

    fn fixed_point(&self, lambda: f64) -> f64 {
        lambda.powf(1.0 / self.idx.gamma())
    }

    /// The time `γ λ^{(γ-1)/γ} a` on the rescaled potential.
    fn potential_time(&self, a: f64, lambda: f64) -> f64 {
        self.idx.gamma() * lambda.powf(self.idx.lambda_exponent()) * a
    }

    /// Solves the integral equation and returns where `κ` sits.
    pub fn branch(&self, q: &KappaQuery) -> Result<Branch> {
        let KappaQuery { a, lambda, mu } = *q;
        if a == 0.0 {
            return Ok(Branch::Degenerate(mu.as_f64()));
        }
        if lambda == 0.0 {
            return match mu {
                Mu::Infinite => v_height(self.idx, a).map(Branch::Degenerate),
                Mu::Finite(m) => self.solve_zero_lambda(a, m).map(Branch::Degenerate),
            };
        }
        let s = self.fixed_point(lambda);
        let t = self.potential_time(a, lambda);
        match mu {
            Mu::Finite(m) if m == s => Ok(Branch::Fixed),
            Mu::Finite(m) if m < s => {
                let start = self.below.position_from_x(m / s);
                let target = self.below.psi(start) + t;
                Ok(Branch::Below(self.below.invert(target)?))
            }
            Mu::Finite(m) => {
                let g1 = self.idx.gamma() - 1.0;
                let xm = ((s.ln() - m.ln()) * g1).exp();
                let start = self.above.position_from_x(xm);
                let target = self.above.psi(start) + t;
                Ok(Branch::Above(self.above.invert(target)?))
            }
            Mu::Infinite => Ok(Branch::Above(self.above.invert(t)?)),
        }
    }

    /// `λ = 0`, finite `μ`: root of `∫_κ^μ u^{-γ} du = a` found in `log u`.
    fn solve_zero_lambda(&self, a: f64, mu: f64) -> Result<f64> {
        if a == 0.0 || mu == 0.0 {
            return Ok(mu);
        }
        let g1 = self.idx.gamma() - 1.0;
        let scale = mu.powf(-g1);
        // G(t) = μ^{1-γ} ∫_t^0 e^{(1-γ)τ} dτ - a, decreasing in t ≤ 0
        let big_g = |t: f64| scale * integrate_tight(|tau| (-g1 * tau).exp(), t, 0.0) - a;
        let mut lo = -1.0;
        while big_g(lo) < 0.0 {
            lo *= 2.0;
            if lo < -1e4 {
                return Err(Error::NonConvergence {
                    op: "kappa_solve",
                    iterations: 0,
                    residual: big_g(lo),
                });
            }
        }
        let t = newton_bracketed(
            "kappa_solve",
            |t| (big_g(t), -scale * (-g1 * t).exp()),
            lo,
            0.0,
            0.5 * lo,
            1e-16,
            200,
        )?;
        Ok(mu * t.exp())
    }

    /// `κ` from a solved branch.
    pub fn value(&self, lambda: f64, b: Branch) -> f64 {
        let s = self.fixed_point(lambda);
        match b {
            Branch::Degenerate(v) => v,
            Branch::Fixed => s,
            Branch::Below(p) => s * self.below.ln_x(p).exp(),
            Branch::Above(p) => s * (-self.above.ln_x(p) * self.idx.alpha_inv()).exp(),
        }
    }

    /// `κ/λ^{1/γ} - 1` at full relative precision.
    fn rel_excess(&self, b: Branch) -> f64 {
        match b {
            Branch::Degenerate(_) | Branch::Fixed => 0.0,
            Branch::Below(p) => self.below.ln_x(p).exp_m1(),
            Branch::Above(p) => (-self.above.ln_x(p) * self.idx.alpha_inv()).exp_m1(),
        }
    }

    pub fn solve(&self, q: &KappaQuery) -> Result<f64> {
        Ok(self.value(q.lambda, self.branch(q)?))
    }

    pub fn at_infinity(&self, a: f64, lambda: f64) -> Result<f64> {
        if !(a > 0.0) {
            return Err(Error::domain("kappa_at_infinity", format!("a={a} must be > 0")));
        }
        self.solve(&KappaQuery::new(a, lambda, Mu::Infinite)?)
    }

    /// `1 - κ_w(λ,0)^γ/λ`, the Laplace transform of the shell mass of width `w`.
    pub fn shell(&self, width: f64, lambda: f64) -> Result<f64> {
        if !(width >= 0.0) {
            return Err(Error::domain(
                "mstar_shell_transform",
                format!("width={width} must be ≥ 0"),
            ));
        }
        if lambda == 0.0 || width == 0.0 {
            return Ok(1.0);
        }
        match self.branch(&KappaQuery::new(width, lambda, Mu::Finite(0.0))?)? {
            Branch::Below(p) => Ok(self.below.one_minus_xq(p)),
            other => Err(Error::domain(
                "mstar_shell_transform",
                format!("unexpected branch {other:?}"),
            )),
        }
    }

    /// `Φ_{a,b}(λ) = (κ_a(λ,∞) - κ_{a+b}(λ,0))/v(a)`.
    pub fn phi(&self, a: f64, b: f64, lambda: f64) -> Result<f64> {
        if !(a > 0.0) || !(b >= 0.0) || !(lambda >= 0.0) {
            return Err(Error::domain(
                "phi_ball_transform",
                format!("need a>0, b≥0, λ≥0 (a={a}, b={b}, λ={lambda})"),
            ));
        }
        if lambda == 0.0 {
            return Ok(1.0);
        }
        let v = v_height(self.idx, a)?;
        let s = self.fixed_point(lambda);
        let top = self.branch(&KappaQuery::new(a, lambda, Mu::Infinite)?)?;
        let bottom = self.branch(&KappaQuery::new(a + b, lambda, Mu::Finite(0.0))?)?;
        let diff = s * (self.rel_excess(top) - self.rel_excess(bottom));
        Ok((diff / v).clamp(0.0, 1.0))
    }

    /// The `Q_0`, `Q_1` quantities at `a = 1` and level `1 + c`.
    pub fn q_diagnostics(&self, lambda: f64, c: f64) -> Result<QDiagnostics> {
        if !(lambda > 0.0) || !(c >= 0.0) {
            return Err(Error::domain(
                "q_diagnostics",
                format!("need λ>0, c≥0 (λ={lambda}, c={c})"),
            ));
        }
        let t1 = self.potential_time(1.0, lambda);
        let a_lambda = match self.branch(&KappaQuery::new(1.0, lambda, Mu::Infinite)?)? {
            // κ^γ/λ - 1 = (1 - x^q)/x^q
            Branch::Above(p) => self.above.one_minus_xq(p).ln() - self.above.q() * self.above.ln_x(p),
            other => return Err(Error::domain("q_diagnostics", format!("unexpected branch {other:?}"))),
        };
        let b_lambda = match self.branch(&KappaQuery::new(1.0 + c, lambda, Mu::Finite(0.0))?)? {
            Branch::Below(p) => -self.below.one_minus_xq(p).ln(),
            other => return Err(Error::domain("q_diagnostics", format!("unexpected branch {other:?}"))),
        };
        Ok(QDiagnostics {
            a_lambda,
            q0: t1 + a_lambda,
            b_lambda,
            q1: (1.0 + c) * t1 - b_lambda,
        })
    }
}

/// Numerical solution of the integral equation for any `γ` (including 2).
pub fn kappa_solve(idx: StableIndex, q: &KappaQuery) -> Result<f64> {
    Kappa::new(idx).solve(q)
}

/// `κ_a(λ, ∞)`, solved directly from `∫_κ^∞ du/(u^γ - λ) = a`.
pub fn kappa_at_infinity(idx: StableIndex, a: f64, lambda: f64) -> Result<f64> {
    Kappa::new(idx).at_infinity(a, lambda)
}

/// `Φ_{a,b}(λ) = N_a(e^{-λ m(B(ρ, a+b))})`. Closed form when `γ = 2`.
pub fn phi_ball_transform(idx: StableIndex, a: f64, b: f64, lambda: f64) -> Result<f64> {
    if idx.is_brownian() {
        if !(a > 0.0) || !(b >= 0.0) || !(lambda >= 0.0) {
            return Err(Error::domain(
                "phi_ball_transform",
                format!("need a>0, b≥0, λ≥0 (a={a}, b={b}, λ={lambda})"),
            ));
        }
        return Ok(phi_brownian(a, b, lambda));
    }
    Kappa::new(idx).phi(a, b, lambda)
}

/// `a √λ (coth(a√λ) - tanh((a+b)√λ))` without cancellation.
pub(crate) fn phi_brownian(a: f64, b: f64, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 1.0;
    }
    let s = lambda.sqrt();
    let x = a * s;
    let q1 = (-2.0 * x).exp();
    let q2 = (-2.0 * (a + b) * s).exp();
    let one_minus_q1 = -(-2.0 * x).exp_m1();
    (x * 2.0 * (q1 + q2) / (one_minus_q1 * (1.0 + q2))).clamp(0.0, 1.0)
}

/// `sech²(w√λ)`.
pub(crate) fn shell_brownian(width: f64, lambda: f64) -> f64 {
    let q = (-2.0 * width * lambda.sqrt()).exp();
    4.0 * q / ((1.0 + q) * (1.0 + q))
}

/// `(N_a(e^{-μ⟨ℓ^a⟩}), N_a(⟨ℓ^a⟩))`.
pub fn local_time_transform(idx: StableIndex, a: f64, mu: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !(mu >= 0.0) {
        return Err(Error::domain(
            "local_time_transform",
            format!("need a>0, μ≥0 (a={a}, μ={mu})"),
        ));
    }
    let g1 = idx.gamma() - 1.0;
    let mean = (g1 * a).powf(idx.alpha_inv());
    if mu == 0.0 {
        return Ok((1.0, mean));
    }
    // 1 - (1 + 1/((γ-1)aμ^{γ-1}))^{-1/(γ-1)}
    let z = 1.0 / (g1 * a * mu.powf(g1));
    let value = -(-idx.alpha_inv() * z.ln_1p()).exp_m1();
    Ok((value, mean))
}

/// `E[e^{-λ M*_{r',r}(a)}] = 1 - κ_{r-r'}(λ,0)^γ/λ`. Closed form when `γ = 2`.
pub fn mstar_shell_transform(idx: StableIndex, width: f64, lambda: f64) -> Result<f64> {
    if !(width >= 0.0) || !(lambda >= 0.0) {
        return Err(Error::domain(
            "mstar_shell_transform",
            format!("need width≥0, λ≥0 (width={width}, λ={lambda})"),
        ));
    }
    if idx.is_brownian() {
        return Ok(shell_brownian(width, lambda));
    }
    Kappa::new(idx).shell(width, lambda)
}
