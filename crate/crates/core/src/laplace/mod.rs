//! Laplace inversion of law transforms into CDFs.
//!
//! `P(X ≤ y)` is the inverse transform of `t(λ)/λ`. Every node is computed
//! twice, on the Talbot contour and by the Euler-accelerated Bromwich series,
//! and rejected if the two disagree beyond the gate. Transforms without an
//! analytic continuation fall back to Gaver–Stehfest at two orders with a
//! wider gate.

pub mod methods;
pub mod table;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index::StableIndex;
use crate::kappa::TransformHandle;
use crate::numeric::special::gamma as gamma_fn;
use num_complex::Complex64;

pub use methods::{euler, stehfest, talbot, EulerParams};
pub use table::{isotonic, CdfTable, TailModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InversionOptions {
    pub talbot_nodes: usize,
    pub euler: EulerParams,
    /// Maximum allowed disagreement between the two complex methods.
    pub gate: f64,
    /// Gate used when only real-axis evaluations are available.
    pub real_gate: f64,
    pub stehfest_orders: (usize, usize),
}

impl Default for InversionOptions {
    fn default() -> Self {
        Self {
            talbot_nodes: 32,
            euler: EulerParams::default(),
            gate: 1e-6,
            real_gate: 1e-4,
            stehfest_orders: (7, 8),
        }
    }
}

/// Both estimates at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub y: f64,
    /// Talbot value (or the higher-order Stehfest value in the real fallback).
    pub contour: f64,
    /// Euler value (or the lower-order Stehfest value).
    pub accelerated: f64,
    pub gate: f64,
}

impl Inversion {
    pub fn disagreement(&self) -> f64 {
        (self.contour - self.accelerated).abs()
    }

    pub fn accepted(&self) -> bool {
        self.disagreement() <= self.gate
    }

    pub fn value(&self) -> f64 {
        self.contour.clamp(0.0, 1.0)
    }
}

/// Computes both estimates without judging them.
pub fn invert_pair(t: &TransformHandle, y: f64, opts: &InversionOptions) -> Result<Inversion> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::domain("invert_cdf_at", format!("y={y} must be finite and > 0")));
    }
    if !t.is_law() {
        return Err(Error::domain(
            "invert_cdf_at",
            format!("{} is not a law transform", t.name()),
        ));
    }
    if t.has_continuation() {
        let f = |z: Complex64| Ok(t.eval_complex(z)? / z);
        let contour = talbot(f, y, opts.talbot_nodes)?;
        let accelerated = euler(f, y, opts.euler)?;
        Ok(Inversion {
            y,
            contour,
            accelerated,
            gate: opts.gate,
        })
    } else {
        let f = |l: f64| Ok(t.eval(l)? / l);
        let (lo, hi) = opts.stehfest_orders;
        Ok(Inversion {
            y,
            contour: stehfest(f, y, hi)?,
            accelerated: stehfest(f, y, lo)?,
            gate: opts.real_gate,
        })
    }
}

/// `P(X ≤ y)` for the law with transform `t`, cross-validated by two methods.
pub fn invert_cdf_at(t: &TransformHandle, y: f64) -> Result<f64> {
    invert_cdf_with(t, y, &InversionOptions::default())
}

pub fn invert_cdf_with(t: &TransformHandle, y: f64, opts: &InversionOptions) -> Result<f64> {
    let inv = invert_pair(t, y, opts)?;
    if !inv.accepted() {
        return Err(Error::CrossValidation {
            y,
            contour: inv.contour,
            accelerated: inv.accelerated,
            gate: inv.gate,
        });
    }
    Ok(inv.value())
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i == n - 1 {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Maximum share of nodes that may fail cross-validation.
pub const MAX_REJECTED_SHARE: f64 = 0.05;

/// Inverts `t` on a log-spaced grid and assembles a monotone table.
pub fn build_cdf_table(
    t: &TransformHandle,
    y_min: f64,
    y_max: f64,
    n_points: usize,
    tails: TailModel,
    opts: &InversionOptions,
    exec: Exec,
) -> Result<CdfTable> {
    if !(y_min > 0.0 && y_min < y_max) {
        return Err(Error::domain(
            "build_cdf_table",
            format!("need 0 < y_min < y_max (got {y_min}, {y_max})"),
        ));
    }
    if n_points < 16 {
        return Err(Error::domain(
            "build_cdf_table",
            format!("n_points={n_points} must be ≥ 16"),
        ));
    }
    let grid = log_grid(y_min, y_max, n_points);
    let nodes = exec.try_map(grid.len(), |i| invert_pair(t, grid[i], opts))?;
    let failed = nodes.iter().filter(|n| !n.accepted()).count();
    if failed as f64 > MAX_REJECTED_SHARE * n_points as f64 {
        return Err(Error::Table {
            failed,
            total: n_points,
        });
    }
    let kept: Vec<&Inversion> = nodes.iter().filter(|n| n.accepted()).collect();
    let method = if t.has_continuation() {
        "talbot+euler"
    } else {
        "stehfest"
    };
    CdfTable::from_nodes(
        kept.iter().map(|n| n.y).collect(),
        kept.iter().map(|n| n.value()).collect(),
        kept.iter().map(|n| n.disagreement()).collect(),
        method,
        tails,
    )
}

/// Default grid for the `M*` table: `[0.05, 8]` at `γ = 2`; otherwise from
/// where the small-ball form reaches about `1e-6` to where the Pareto tail
/// `y^{-(γ-1)}/Γ(2-γ)` falls below `0.005`.
pub fn mstar_range(idx: StableIndex) -> (f64, f64, usize) {
    if idx.is_brownian() {
        return (0.05, 8.0, 128);
    }
    let g1 = idx.gamma() - 1.0;
    let y_min = g1 * 14f64.powf(-1.0 / g1);
    let y_max = (0.005 * gamma_fn(2.0 - idx.gamma())).powf(-1.0 / g1);
    let decades = (y_max / y_min).log10();
    let n = ((24.0 * decades).ceil() as usize).max(128);
    (y_min, y_max, n)
}

/// The `M*` table for `idx` on its default grid.
pub fn mstar_table(idx: StableIndex, exec: Exec) -> Result<CdfTable> {
    let (lo, hi, n) = mstar_range(idx);
    build_cdf_table(
        &TransformHandle::mstar(idx),
        lo,
        hi,
        n,
        TailModel::MStar(idx),
        &InversionOptions::default(),
        exec,
    )
}

/// The `γ = 2` table filled from the certified series instead of inversion.
pub fn mstar_series_table() -> Result<CdfTable> {
    let idx = StableIndex::brownian();
    let (lo, hi, n) = mstar_range(idx);
    let grid = log_grid(lo, hi, n);
    let cdf = grid
        .iter()
        .map(|&y| crate::tails::brownian_mstar_cdf(y, 1e-14))
        .collect::<Result<Vec<_>>>()?;
    CdfTable::from_nodes(grid, cdf, vec![0.0; n], "series", TailModel::MStar(idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tails::{brownian_mstar_cdf, stable_cdf_gamma2};

    #[test]
    fn brownian_mstar_point() {
        let t = TransformHandle::mstar(StableIndex::brownian());
        let v = invert_cdf_at(&t, 1.0).unwrap();
        assert!((v - brownian_mstar_cdf(1.0, 1e-14).unwrap()).abs() < 1e-6);
        assert!((v - 0.592_039_787_671_367_7).abs() < 1e-6);
    }

    #[test]
    fn stable_point() {
        let t = TransformHandle::stable(StableIndex::brownian());
        let v = invert_cdf_at(&t, 1.0).unwrap();
        assert!((v - stable_cdf_gamma2(1.0).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn unit_mass() {
        for y in [0.01, 1.0, 30.0] {
            assert!((invert_cdf_at(&TransformHandle::unit_mass(), y).unwrap() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn real_fallback_uses_wider_gate() {
        let b = StableIndex::brownian();
        let real_only = TransformHandle::new(
            "sech2-real",
            std::sync::Arc::new(|l: f64| Ok(1.0 / l.sqrt().cosh().powi(2))),
            None,
            true,
            true,
        );
        let inv = invert_pair(&real_only, 1.0, &InversionOptions::default()).unwrap();
        assert_eq!(inv.gate, 1e-4);
        assert!((inv.value() - brownian_mstar_cdf(1.0, 1e-14).unwrap()).abs() < 1e-4);
        let _ = b;
    }

    #[test]
    fn brownian_table_matches_series() {
        let idx = StableIndex::brownian();
        let t = mstar_table(idx, Exec::default()).unwrap();
        assert!(t.max_abs_disagreement() <= 1e-6);
        let (lo, hi) = t.range();
        for &y in t.grid() {
            assert!((t.cdf(y) - brownian_mstar_cdf(y, 1e-14).unwrap()).abs() <= 1e-6);
        }
        let mut prev = 0.0;
        for i in 0..=1280 {
            let y = lo * (hi / lo).powf(i as f64 / 1280.0);
            let c = t.cdf(y);
            assert!(c >= prev);
            assert!((c - brownian_mstar_cdf(y, 1e-14).unwrap()).abs() <= 1e-6, "y={y}");
            prev = c;
        }
    }

    #[test]
    fn series_table_agrees_with_inversion() {
        let a = mstar_series_table().unwrap();
        let b = mstar_table(StableIndex::brownian(), Exec::default()).unwrap();
        for y in log_grid(0.01, 20.0, 300) {
            assert!((a.cdf(y) - b.cdf(y)).abs() < 1e-6, "y={y}");
        }
    }

    #[test]
    fn table_rejects_bad_arguments() {
        let t = TransformHandle::unit_mass();
        let o = InversionOptions::default();
        assert!(build_cdf_table(&t, 1.0, 0.5, 32, TailModel::Flat, &o, Exec::Sequential).is_err());
        assert!(build_cdf_table(&t, 0.5, 1.0, 8, TailModel::Flat, &o, Exec::Sequential).is_err());
    }
}
