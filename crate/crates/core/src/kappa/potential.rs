//! The radial potential `Ψ_q(x) = q ∫_0^x dv / (1 - v^q)` on `[0, 1)`.
//!
//! Both branches of the κ integral equation reduce to it after rescaling by
//! the fixed point `λ^{1/γ}`:
//!
//! * below the fixed point (`μ < λ^{1/γ}`) with `x = u/λ^{1/γ}` and `q = γ`;
//! * above it (`μ > λ^{1/γ}`, including `μ = ∞`) with `x = (λ^{1/γ}/u)^{γ-1}`
//!   and `q = γ/(γ-1)`.
//!
//! In both cases `∫ du/(λ - u^γ) = a` becomes `Ψ_q(x_κ) - Ψ_q(x_μ) = γ λ^{(γ-1)/γ} a`.
//! Near `x = 1` the potential diverges logarithmically; there the position is
//! carried by `y = -log(1 - x^q)`, in which `Ψ_q` is `y` plus a bounded,
//! exponentially converging correction.

use crate::error::Result;
use crate::numeric::quad::integrate_tight;
use crate::numeric::roots::newton_bracketed;

/// Beyond this `y` the correction integrand is below `e^{-60}`.
const Y_CAP: f64 = 60.0;
/// Positions with `y ≤ Y_SPLIT` are handled in the `x` coordinate.
const Y_SPLIT: f64 = 1.0;

/// A point of `[0, 1)` stored in whichever coordinate keeps full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Position {
    /// `x` itself, used while `x^q ≤ 1 - e^{-1}`.
    X(f64),
    /// `y = -log(1 - x^q) > 1`.
    Y(f64),
}

#[derive(Debug, Clone, Copy)]
pub struct RadialPotential {
    q: f64,
    /// `1 - 1/q`, the exponent of the `y`-form integrand.
    e: f64,
    x_split: f64,
    psi_split: f64,
    /// `∫_1^∞ [(1-e^{-s})^{-e} - 1] ds`.
    tail_total: f64,
}

impl RadialPotential {
    pub fn new(q: f64) -> Self {
        let e = 1.0 - 1.0 / q;
        let x_split = (-(-Y_SPLIT).exp_m1()).powf(1.0 / q);
        let mut p = Self {
            q,
            e,
            x_split,
            psi_split: 0.0,
            tail_total: 0.0,
        };
        p.psi_split = p.psi_x(x_split);
        p.tail_total = p.correction(Y_CAP);
        p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Stored value of `Ψ` at the coordinate switch `y = 1`.
    pub fn psi_split(&self) -> f64 {
        self.psi_split
    }

    /// `lim_{y→∞} [Ψ(y) - y]`.
    pub fn offset_at_infinity(&self) -> f64 {
        self.psi_split - Y_SPLIT + self.tail_total
    }

    /// `Ψ(x)` written as `q x ∫_0^1 dt/(1-(xt)^q)` so small `x` keeps relative precision.
    fn psi_x(&self, x: f64) -> f64 {
        if x == 0.0 {
            return 0.0;
        }
        let q = self.q;
        let lx = x.ln();
        q * x * integrate_tight(|t| 1.0 / (-(q * (lx + t.ln())).exp_m1()), 0.0, 1.0)
    }

    fn correction_integrand(&self, s: f64) -> f64 {
        // (1 - e^{-s})^{-e} - 1
        (-self.e * (-(-s).exp()).ln_1p()).exp_m1()
    }

    /// `∫_1^y [(1-e^{-s})^{-e} - 1] ds` for `y ≥ 1`.
    fn correction(&self, y: f64) -> f64 {
        let top = y.min(Y_CAP);
        if top <= Y_SPLIT {
            return 0.0;
        }
        integrate_tight(|s| self.correction_integrand(s), Y_SPLIT, top)
    }

    pub fn position_from_x(&self, x: f64) -> Position {
        debug_assert!((0.0..1.0).contains(&x));
        if x <= self.x_split {
            Position::X(x)
        } else {
            Position::Y(-(-(x.powf(self.q))).ln_1p())
        }
    }

    /// Position from `x^q` given directly; avoids the `q`-th root near 1.
    pub fn position_from_xq(&self, xq: f64) -> Position {
        let y = -(-xq).ln_1p();
        if y <= Y_SPLIT {
            Position::X(xq.powf(1.0 / self.q))
        } else {
            Position::Y(y)
        }
    }

    pub fn psi(&self, pos: Position) -> f64 {
        match pos {
            Position::X(x) => self.psi_x(x),
            Position::Y(y) => self.psi_split + (y - Y_SPLIT) + self.correction(y),
        }
    }

    /// `log x` at full relative precision.
    pub fn ln_x(&self, pos: Position) -> f64 {
        match pos {
            Position::X(x) => x.ln(),
            Position::Y(y) => (-(-y).exp()).ln_1p() / self.q,
        }
    }

    /// `1 - x^q`.
    pub fn one_minus_xq(&self, pos: Position) -> f64 {
        match pos {
            Position::X(x) => -(self.q * x.ln()).exp_m1(),
            Position::Y(y) => (-y).exp(),
        }
    }

    /// The position `p` with `Ψ(p) = target` (`target ≥ 0`).
    pub fn invert(&self, target: f64) -> Result<Position> {
        if target <= 0.0 {
            return Ok(Position::X(0.0));
        }
        let q = self.q;
        if target <= self.psi_split {
            // q x ≤ Ψ(x) ≤ e q x on the x-branch; solve for x/hi so the
            // tolerance is relative even for tiny targets.
            let hi = (target / q).min(self.x_split);
            let lo = target / (q * std::f64::consts::E) / hi;
            let f = |u: f64| {
                let x = u * hi;
                (self.psi_x(x) - target, hi * q / (-(q * x.ln()).exp_m1()))
            };
            let u = solve_in_bracket(f, lo.min(1.0), 1.0)?;
            return Ok(Position::X(u * hi));
        }
        let base = target - self.psi_split + Y_SPLIT;
        if base - self.tail_total >= Y_CAP {
            return Ok(Position::Y(base - self.tail_total));
        }
        let lo = (base - self.tail_total).max(Y_SPLIT);
        let hi = base.max(Y_SPLIT);
        let f = |y: f64| (self.psi(Position::Y(y)) - target, 1.0 + self.correction_integrand(y));
        let y = solve_in_bracket(f, lo, hi)?;
        Ok(Position::Y(y))
    }
}

/// Root of an increasing `f` on `[lo, hi]`. The bracket comes from analytic
/// bounds, so an endpoint whose residual has the wrong sign only by quadrature
/// rounding is itself the answer.
fn solve_in_bracket<F: Fn(f64) -> (f64, f64)>(f: F, lo: f64, hi: f64) -> Result<f64> {
    if f(lo).0 >= 0.0 {
        return Ok(lo);
    }
    if f(hi).0 <= 0.0 {
        return Ok(hi);
    }
    newton_bracketed("RadialPotential::invert", f, lo, hi, 0.5 * (lo + hi), 4e-16, 200)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_two_closed_form() {
        // q = 2: Ψ(x) = 2 artanh(x) = log((1+x)/(1-x))
        let p = RadialPotential::new(2.0);
        for x in [0.1f64, 0.5, 0.7, 0.9, 0.999_999] {
            let exact = ((1.0 + x) / (1.0 - x)).ln();
            let got = p.psi(p.position_from_x(x));
            assert!((got - exact).abs() < 1e-12 * exact.max(1.0), "x={x}: {got} vs {exact}");
        }
        // offset: Ψ - y → log 4 as x → 1 (y = -log(1-x²))
        assert!((p.offset_at_infinity() - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn inversion_round_trip() {
        for q in [1.2, 1.5, 2.0, 3.0, 6.0] {
            let p = RadialPotential::new(q);
            for t in [1e-8, 0.01, 0.3, 1.0, 2.5, 7.0, 40.0, 100.0] {
                let pos = p.invert(t).unwrap();
                let back = p.psi(pos);
                assert!((back - t).abs() <= 1e-12 * t.max(1.0), "q={q} t={t}: {back}");
            }
        }
    }

    #[test]
    fn coordinates_agree_at_split() {
        let p = RadialPotential::new(1.5);
        let x = p.x_split * (1.0 + 1e-12);
        let via_y = p.psi(p.position_from_x(x));
        let via_x = p.psi(Position::X(x));
        assert!((via_y - via_x).abs() < 1e-11);
    }
}
