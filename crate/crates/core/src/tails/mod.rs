//! Explicit tails: the Brownian series, the small-ball constant `C_γ` and its
//! expansion coefficients, the Skorohod stable-law asymptotic, and the gauge
//! functions.

pub mod brownian;
pub mod coeffs;
pub mod gauge;

use crate::error::{Error, Result};
use crate::index::StableIndex;
use crate::kappa::{mstar_shell_transform, TransformHandle};
use crate::laplace::invert_cdf_at;
use crate::numeric::special::erfc;
use std::f64::consts::PI;

pub use brownian::{
    brownian_ball_cdf, brownian_ball_tail, brownian_mstar_cdf, brownian_mstar_cdf_small, brownian_mstar_tail,
};
pub use coeffs::{c_gamma, expansion_coeffs, CoeffTable};
pub use gauge::{gauge_eval, GaugeKind};

/// A truncated series value with its error certificate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesAccumulator {
    pub value: f64,
    pub terms_used: usize,
    /// Bound on the absolute value of the omitted terms.
    pub remainder_bound: f64,
}

/// Which law the small-ball approximation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallBallLaw {
    /// `P(M* ≤ (γ-1)y)`, carrying the factor `e^{C_γ}`.
    MStar,
    /// `P(S ≤ (γ-1)y)` for `E e^{-λS} = exp(-γλ^{(γ-1)/γ})` (Skorohod).
    Stable,
}

/// `e^{C_γ} √(γ(γ-1)/(2π)) y^{(γ-1)/2} e^{-1/y^{γ-1}}`, or the same without
/// `e^{C_γ}` for the stable law.
pub fn small_ball_asymptotic(idx: StableIndex, y: f64, law: SmallBallLaw) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::domain("small_ball_asymptotic", format!("y={y} must be > 0")));
    }
    let g = idx.gamma();
    let base = (g * (g - 1.0) / (2.0 * PI)).sqrt() * y.powf(0.5 * (g - 1.0)) * (-y.powf(1.0 - g)).exp();
    Ok(match law {
        SmallBallLaw::Stable => base,
        SmallBallLaw::MStar => c_gamma(idx, 1e-12)?.exp() * base,
    })
}

/// `P(S ≤ y) = erfc(y^{-1/2})` for the `γ = 2` stable law with transform `e^{-2√λ}`.
pub fn stable_cdf_gamma2(y: f64) -> Result<f64> {
    if !(y > 0.0) {
        return Err(Error::domain("stable_cdf_gamma2", format!("y={y} must be > 0")));
    }
    Ok(erfc(1.0 / y.sqrt()))
}

/// `|L - e^{C_γ} e^{-γλ^{(γ-1)/γ}} Σ_{n≤N} c_n L^n|` with `L = 1 - κ_1(λ,0)^γ/λ`.
pub fn fixed_point_residual(idx: StableIndex, lambda: f64, n: usize) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain("fixed_point_residual", format!("λ={lambda} must be > 0")));
    }
    let table = expansion_coeffs(idx, n)?;
    fixed_point_residual_with(&table, lambda)
}

/// As [`fixed_point_residual`] with a prebuilt coefficient table.
pub fn fixed_point_residual_with(table: &CoeffTable, lambda: f64) -> Result<f64> {
    let idx = table.gamma;
    let l = mstar_shell_transform(idx, 1.0, lambda)?;
    let rhs = (table.c_gamma - idx.gamma() * lambda.powf(idx.lambda_exponent())).exp() * table.exp_minus_h(l);
    Ok((l - rhs).abs())
}

/// `-log N_1(m(B(ρ,1+c)) ≤ y) / ((γ-1)/y)^{γ-1}`.
///
/// At `γ = 2` the probability comes from the dual theta series; otherwise the
/// ball transform is inverted numerically.
pub fn debruijn_ratio(idx: StableIndex, c: f64, y: f64) -> Result<f64> {
    if !(y > 0.0) || !(c >= 0.0) {
        return Err(Error::domain("debruijn_ratio", format!("need y>0, c≥0 (y={y}, c={c})")));
    }
    let p = if idx.is_brownian() {
        brownian_ball_cdf(c, y, 1e-12)?.value
    } else {
        invert_cdf_at(&TransformHandle::ball(idx, 1.0, c), y)?
    };
    if !(p > 0.0) {
        return Err(Error::Tolerance {
            op: "debruijn_ratio",
            achieved: p,
            requested: f64::MIN_POSITIVE,
        });
    }
    let g1 = idx.gamma() - 1.0;
    Ok(-p.ln() / (g1 / y).powf(g1))
}
