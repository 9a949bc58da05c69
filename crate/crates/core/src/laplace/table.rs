//! Monotone CDF tables with analytic tail extensions.

use crate::error::{Error, Result};
use crate::index::StableIndex;
use crate::numeric::special::gamma as gamma_fn;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Analytic continuation of a table beyond its grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel {
    /// Clamp to the end values.
    Flat,
    /// `M*`-type law: small-ball form on the left; `1 - K y e^{-π²y/4}` on the
    /// right at `γ = 2`, Pareto `1 - K y^{-(γ-1)}` otherwise.
    MStar(StableIndex),
}

impl TailModel {
    fn left_shape(&self, y: f64) -> f64 {
        match self {
            TailModel::Flat => 1.0,
            TailModel::MStar(idx) => {
                let g1 = idx.gamma() - 1.0;
                let x = y / g1;
                x.powf(0.5 * g1) * (-x.powf(-g1)).exp()
            }
        }
    }

    fn right_shape(&self, y: f64) -> f64 {
        match self {
            TailModel::Flat => 1.0,
            TailModel::MStar(idx) if idx.is_brownian() => y * (-PI * PI * y / 4.0).exp(),
            TailModel::MStar(idx) => y.powf(1.0 - idx.gamma()),
        }
    }

    /// Leading coefficient of `P(M* > y)` for `γ < 2`: `1/Γ(2-γ)`.
    pub fn pareto_constant(idx: StableIndex) -> f64 {
        1.0 / gamma_fn(2.0 - idx.gamma())
    }
}

/// Pool-adjacent-violators projection onto nondecreasing sequences (equal weights).
pub fn isotonic(values: &[f64]) -> Vec<f64> {
    let mut blocks: Vec<(f64, usize)> = Vec::with_capacity(values.len());
    for &v in values {
        blocks.push((v, 1));
        while blocks.len() > 1 {
            let (m2, w2) = blocks[blocks.len() - 1];
            let (m1, w1) = blocks[blocks.len() - 2];
            if m1 <= m2 {
                break;
            }
            blocks.pop();
            let w = w1 + w2;
            *blocks.last_mut().expect("two blocks") = ((m1 * w1 as f64 + m2 * w2 as f64) / w as f64, w);
        }
    }
    blocks
        .into_iter()
        .flat_map(|(m, w)| std::iter::repeat_n(m, w))
        .collect()
}

/// Derivative at `x[i]` of the polynomial through `x[lo..lo+len]`.
fn lagrange_slope(x: &[f64], y: &[f64], i: usize, lo: usize, len: usize) -> f64 {
    let idx = lo..lo + len;
    let mut d = 0.0;
    for j in idx.clone() {
        let w = if j == i {
            idx.clone()
                .filter(|&m| m != i)
                .map(|m| 1.0 / (x[i] - x[m]))
                .sum::<f64>()
        } else {
            let num: f64 = idx.clone().filter(|&m| m != j && m != i).map(|m| x[i] - x[m]).product();
            let den: f64 = idx.clone().filter(|&m| m != j).map(|m| x[j] - x[m]).product();
            num / den
        };
        d += w * y[j];
    }
    d
}

/// Hermite slopes for nondecreasing data: five-point derivatives (fourth
/// order on smooth data) clipped to `[0, 3·min(adjacent secants)]`, which
/// keeps every cubic piece monotone (Hyman's filter).
fn monotone_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n < 2 {
        return vec![0.0; n];
    }
    let del: Vec<f64> = (0..n - 1).map(|i| (y[i + 1] - y[i]) / (x[i + 1] - x[i])).collect();
    let len = n.min(5);
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(len / 2).min(n - len);
            let raw = lagrange_slope(x, y, i, lo, len);
            let cap = match i {
                0 => del[0],
                _ if i == n - 1 => del[n - 2],
                _ => del[i - 1].min(del[i]),
            };
            raw.clamp(0.0, 3.0 * cap.max(0.0))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdfTable {
    grid: Vec<f64>,
    cdf: Vec<f64>,
    disagreement: Vec<f64>,
    method: String,
    max_abs_disagreement: f64,
    tails: TailModel,
    ln_grid: Vec<f64>,
    slopes: Vec<f64>,
    k_left: f64,
    k_right: f64,
}

impl CdfTable {
    /// Builds a table from raw node values; the CDF column is projected onto
    /// nondecreasing sequences and clamped to `[0, 1]`.
    pub fn from_nodes(
        grid: Vec<f64>,
        raw: Vec<f64>,
        disagreement: Vec<f64>,
        method: impl Into<String>,
        tails: TailModel,
    ) -> Result<Self> {
        if grid.len() < 2 || grid.len() != raw.len() || grid.len() != disagreement.len() {
            return Err(Error::Config(
                "table needs at least two nodes and matching columns".into(),
            ));
        }
        if grid[0] <= 0.0 || grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config(
                "table grid must be positive and strictly increasing".into(),
            ));
        }
        let cdf: Vec<f64> = isotonic(&raw).into_iter().map(|v| v.clamp(0.0, 1.0)).collect();
        let ln_grid: Vec<f64> = grid.iter().map(|y| y.ln()).collect();
        let slopes = monotone_slopes(&ln_grid, &cdf);
        let max_abs_disagreement = disagreement.iter().cloned().fold(0.0, f64::max);
        let n = grid.len();
        let k_left = cdf[0] / tails.left_shape(grid[0]);
        let k_right = (1.0 - cdf[n - 1]) / tails.right_shape(grid[n - 1]);
        Ok(Self {
            grid,
            cdf,
            disagreement,
            method: method.into(),
            max_abs_disagreement,
            tails,
            ln_grid,
            slopes,
            k_left,
            k_right,
        })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.cdf
    }

    pub fn disagreement(&self) -> &[f64] {
        &self.disagreement
    }

    pub fn method(&self) -> &str {
        &self.method
    }

    pub fn max_abs_disagreement(&self) -> f64 {
        self.max_abs_disagreement
    }

    pub fn tails(&self) -> TailModel {
        self.tails
    }

    pub fn range(&self) -> (f64, f64) {
        (self.grid[0], self.grid[self.grid.len() - 1])
    }

    fn segment(&self, i: usize, lx: f64) -> f64 {
        let (x0, x1) = (self.ln_grid[i], self.ln_grid[i + 1]);
        let h = x1 - x0;
        let t = (lx - x0) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.cdf[i] + h10 * h * self.slopes[i] + h01 * self.cdf[i + 1] + h11 * h * self.slopes[i + 1]
    }

    /// Interpolated CDF; analytic tails outside the grid.
    pub fn cdf(&self, y: f64) -> f64 {
        let n = self.grid.len();
        if !(y > 0.0) {
            return 0.0;
        }
        if y < self.grid[0] {
            return (self.k_left * self.tails.left_shape(y)).clamp(0.0, self.cdf[0]);
        }
        if y > self.grid[n - 1] {
            if y == f64::INFINITY {
                return 1.0;
            }
            return (1.0 - self.k_right * self.tails.right_shape(y)).clamp(self.cdf[n - 1], 1.0);
        }
        let i = self.grid.partition_point(|&g| g <= y).clamp(1, n - 1) - 1;
        self.segment(i, y.ln()).clamp(self.cdf[i], self.cdf[i + 1])
    }

    /// Smallest `y` with `cdf(y) ≥ u`, for `u ∈ (0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        let n = self.grid.len();
        if u <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return f64::INFINITY;
        }
        if u < self.cdf[0] {
            return match self.tails {
                TailModel::Flat => self.grid[0],
                TailModel::MStar(_) => self.bisect_ln(
                    |y| self.k_left * self.tails.left_shape(y) - u,
                    self.grid[0] * 1e-6,
                    self.grid[0],
                ),
            };
        }
        if u > self.cdf[n - 1] {
            let top = self.grid[n - 1];
            return match self.tails {
                TailModel::Flat => top,
                TailModel::MStar(idx) if !idx.is_brownian() => {
                    (self.k_right / (1.0 - u)).powf(idx.alpha_inv()).max(top)
                }
                TailModel::MStar(_) => {
                    let mut hi = top * 2.0;
                    while self.k_right * self.tails.right_shape(hi) > 1.0 - u {
                        hi *= 2.0;
                    }
                    self.bisect_ln(|y| (1.0 - u) - self.k_right * self.tails.right_shape(y), top, hi)
                }
            };
        }
        // first node with cdf ≥ u, then solve inside the preceding segment
        let j = self.cdf.partition_point(|&c| c < u);
        if j == 0 {
            return self.grid[0];
        }
        let i = j - 1;
        if self.cdf[j] == self.cdf[i] {
            return self.grid[i];
        }
        let (lo, hi) = (self.ln_grid[i], self.ln_grid[j]);
        let (mut a, mut b) = (lo, hi);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if self.segment(i, m).clamp(self.cdf[i], self.cdf[j]) < u {
                a = m;
            } else {
                b = m;
            }
            if b - a <= 1e-15 * (1.0 + m.abs()) {
                break;
            }
        }
        b.exp()
    }

    /// Bisection in `log y` for an increasing `f` with a sign change on `[lo, hi]`.
    fn bisect_ln<F: Fn(f64) -> f64>(&self, f: F, lo: f64, hi: f64) -> f64 {
        let (mut a, mut b) = (lo.ln(), hi.ln());
        if f(a.exp()) >= 0.0 {
            return lo;
        }
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(m.exp()) < 0.0 {
                a = m;
            } else {
                b = m;
            }
            if b - a <= 1e-15 * (1.0 + m.abs()) {
                break;
            }
        }
        b.exp()
    }

    /// CSV with `#` provenance lines and columns `y,cdf,method_disagreement`.
    pub fn to_csv(&self, provenance: &[(&str, String)]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# method={}", self.method);
        match self.tails {
            TailModel::Flat => {
                let _ = writeln!(out, "# tails=flat");
            }
            TailModel::MStar(idx) => {
                let _ = writeln!(out, "# tails=mstar");
                let _ = writeln!(out, "# gamma={}", idx.gamma());
            }
        }
        let _ = writeln!(out, "# max_abs_disagreement={}", self.max_abs_disagreement);
        for (k, v) in provenance {
            let _ = writeln!(out, "# {k}={v}");
        }
        out.push_str("y,cdf,method_disagreement\n");
        for i in 0..self.grid.len() {
            let _ = writeln!(out, "{},{},{}", self.grid[i], self.cdf[i], self.disagreement[i]);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut method = String::from("unknown");
        let mut tails_kind = None;
        let mut gamma = None;
        let (mut grid, mut cdf, mut dis) = (Vec::new(), Vec::new(), Vec::new());
        let mut saw_header = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some((k, v)) = rest.trim().split_once('=') {
                    match k.trim() {
                        "method" => method = v.trim().to_string(),
                        "tails" => tails_kind = Some(v.trim().to_string()),
                        "gamma" => {
                            gamma = Some(
                                v.trim()
                                    .parse::<f64>()
                                    .map_err(|e| Error::Parse(format!("gamma: {e}")))?,
                            )
                        }
                        _ => {}
                    }
                }
                continue;
            }
            if !saw_header {
                if line != "y,cdf,method_disagreement" {
                    return Err(Error::Parse(format!(
                        "line {}: expected header y,cdf,method_disagreement",
                        lineno + 1
                    )));
                }
                saw_header = true;
                continue;
            }
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != 3 {
                return Err(Error::Parse(format!("line {}: expected 3 columns", lineno + 1)));
            }
            let p = |s: &str| {
                s.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
            };
            grid.push(p(cols[0])?);
            cdf.push(p(cols[1])?);
            dis.push(p(cols[2])?);
        }
        let tails = match tails_kind.as_deref() {
            Some("mstar") => {
                let g = gamma.ok_or_else(|| Error::Parse("mstar tails need a gamma line".into()))?;
                TailModel::MStar(StableIndex::new(g)?)
            }
            Some("flat") | None => TailModel::Flat,
            Some(other) => return Err(Error::Parse(format!("unknown tail model '{other}'"))),
        };
        Self::from_nodes(grid, cdf, dis, method, tails)
    }
}
