//! Brownian CRT simulation (`γ = 2`): the normalized excursion on a grid, the
//! coded tree metric, ball masses, local times and excursion counts.
//!
//! The height process of the `ψ(u) = u²` tree is `√2` times a standard
//! Brownian excursion, so bridge increments have variance `2/n` and
//! `N(sup H > a) = 1/a`. Besides the `n + 1` grid heights the grid stores,
//! for every cell, an exact draw of the bridge minimum between its endpoints;
//! distances between grid points therefore use the true minimum of the path.
//! A separate draw of each cell's maximum gives `Γ(T) = sup H` without the
//! `O(n^{-1/2})` bias of the grid maximum.

mod ball;
mod levels;
pub mod rmq;

use crate::error::{Error, Result};
use crate::sampler::RngStream;
use rand::Rng;
use rand_distr::{Open01, StandardNormal};
use rmq::SparseTable;
use std::fmt::Write as _;
use std::sync::OnceLock;

pub use ball::{
    ball_mass, ball_masses_at_random_centers, ball_profile, default_stride, extremal_ball_mass, extremal_profile,
    BallMassProfile, BallMassRow, Extremal, ExtremalStat,
};
pub use levels::{count_high_excursions, occupation_local_time};

/// Variance of the height process per unit time.
const SIGMA2: f64 = 2.0;

#[derive(Debug, Clone)]
pub struct ExcursionGrid {
    h: Vec<f64>,
    /// `gaps[i]` is the minimum of the path on `[i/n, (i+1)/n]`.
    gaps: Vec<f64>,
    /// `peaks[i]` is the maximum of the path on the same cell.
    peaks: Vec<f64>,
    rmq: OnceLock<SparseTable>,
    /// `(seed, stream_id, counter)` of the draw, if random.
    provenance: Option<(u64, u64, u64)>,
}

impl ExcursionGrid {
    /// A deterministic path; the path is taken linear between grid points.
    pub fn from_heights(h: Vec<f64>) -> Result<Self> {
        if h.len() < 3 {
            return Err(Error::domain("ExcursionGrid", "need at least three heights"));
        }
        if h[0] != 0.0 || h[h.len() - 1] != 0.0 || h.iter().any(|x| !(*x >= 0.0 && x.is_finite())) {
            return Err(Error::domain(
                "ExcursionGrid",
                "heights must be finite, ≥ 0 and zero at both ends",
            ));
        }
        let gaps = h.windows(2).map(|w| w[0].min(w[1])).collect();
        let peaks = h.windows(2).map(|w| w[0].max(w[1])).collect();
        Ok(Self::assemble(h, gaps, peaks, None))
    }

    fn assemble(h: Vec<f64>, gaps: Vec<f64>, peaks: Vec<f64>, provenance: Option<(u64, u64, u64)>) -> Self {
        Self {
            h,
            gaps,
            peaks,
            rmq: OnceLock::new(),
            provenance,
        }
    }

    /// Number of cells.
    pub fn n(&self) -> usize {
        self.gaps.len()
    }

    pub fn heights(&self) -> &[f64] {
        &self.h
    }

    pub fn cell_minima(&self) -> &[f64] {
        &self.gaps
    }

    pub fn provenance(&self) -> Option<(u64, u64, u64)> {
        self.provenance
    }

    /// `Γ(T) = sup H`, including the maxima inside cells.
    pub fn height(&self) -> f64 {
        self.peaks.iter().cloned().fold(0.0, f64::max)
    }

    fn rmq(&self) -> &SparseTable {
        self.rmq.get_or_init(|| SparseTable::new(&self.gaps))
    }

    /// `b(s, t)`: minimum of the path between grid points `s` and `t`.
    pub fn branch_height(&self, s: usize, t: usize) -> Result<f64> {
        self.check_index(s)?;
        self.check_index(t)?;
        if s == t {
            return Ok(self.h[s]);
        }
        Ok(self.rmq().min(s.min(t), s.max(t) - 1))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i > self.n() {
            return Err(Error::domain(
                "tree_distance",
                format!("index {i} outside 0..={}", self.n()),
            ));
        }
        Ok(())
    }

    /// The same path seen at `n / factor` cells; cell minima are exact minima
    /// of the fine path.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || !self.n().is_multiple_of(factor) || self.n() / factor < 2 {
            return Err(Error::domain(
                "coarsen",
                format!("factor {factor} must divide n={} leaving ≥ 2 cells", self.n()),
            ));
        }
        let h = self.h.iter().step_by(factor).cloned().collect();
        let gaps = self
            .gaps
            .chunks(factor)
            .map(|c| c.iter().cloned().fold(f64::INFINITY, f64::min))
            .collect();
        let peaks = self
            .peaks
            .chunks(factor)
            .map(|c| c.iter().cloned().fold(0.0, f64::max))
            .collect();
        Ok(Self::assemble(h, gaps, peaks, self.provenance))
    }
}

/// Minimum of a Brownian bridge from `x` to `y` with variance `s2`, given a
/// uniform `u`.
fn bridge_min(x: f64, y: f64, s2: f64, u: f64) -> f64 {
    0.5 * (x + y - ((x - y) * (x - y) - 2.0 * s2 * u.ln()).sqrt())
}

fn bridge_max(x: f64, y: f64, s2: f64, u: f64) -> f64 {
    -bridge_min(-x, -y, s2, u)
}

/// Normalized excursion by the Vervaat transform: a Brownian bridge with
/// increments of variance `2/n`, rotated at its argmin and shifted to zero.
/// Consumes one block of `stream`.
pub fn sample_normalized_excursion(n: usize, stream: &mut RngStream) -> Result<ExcursionGrid> {
    if n < 1024 || !n.is_power_of_two() {
        return Err(Error::domain(
            "sample_normalized_excursion",
            format!("n={n} must be a power of two ≥ 1024"),
        ));
    }
    let provenance = Some((stream.seed(), stream.stream_id(), stream.counter()));
    let mut rng = stream.next_rng();
    let s2 = SIGMA2 / n as f64;
    let sd = s2.sqrt();
    let mut w = Vec::with_capacity(n + 1);
    w.push(0.0);
    let mut acc = 0.0;
    for _ in 0..n {
        let z: f64 = rng.sample(StandardNormal);
        acc += sd * z;
        w.push(acc);
    }
    let end = w[n];
    let bridge: Vec<f64> = w
        .iter()
        .enumerate()
        .map(|(i, x)| x - end * i as f64 / n as f64)
        .collect();
    let k = (0..n).min_by(|&a, &b| bridge[a].total_cmp(&bridge[b])).expect("n > 0");
    let base = bridge[k];
    let mut h: Vec<f64> = (0..=n).map(|i| bridge[(k + i) % n] - base).collect();
    h[0] = 0.0;
    h[n] = 0.0;
    // minima and maxima are drawn separately; each is exact in law given the
    // endpoints, and they are never used jointly
    let mut gaps = Vec::with_capacity(n);
    let mut peaks = Vec::with_capacity(n);
    for c in h.windows(2) {
        let (u, v): (f64, f64) = (rng.sample(Open01), rng.sample(Open01));
        gaps.push(bridge_min(c[0], c[1], s2, u).max(0.0));
        peaks.push(bridge_max(c[0], c[1], s2, v));
    }
    Ok(ExcursionGrid::assemble(h, gaps, peaks, provenance))
}

/// `d(s, t) = H_s + H_t - 2 b(s, t)`.
pub fn tree_distance(g: &ExcursionGrid, s: usize, t: usize) -> Result<f64> {
    if s == t {
        g.check_index(s)?;
        return Ok(0.0);
    }
    let b = g.branch_height(s, t)?;
    Ok((g.h[s] + g.h[t] - 2.0 * b).max(0.0))
}

fn provenance_header(extra: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in extra {
        let _ = writeln!(out, "# {k}={v}");
    }
    out
}

/// Per-center ball masses as CSV (`tree_id,center,r,mass`).
pub fn ball_mass_csv(rows: &[BallMassRow], provenance: &[(&str, String)]) -> String {
    let mut out = provenance_header(provenance);
    out.push_str("tree_id,center,r,mass\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.tree_id, r.center, r.r, r.mass);
    }
    out
}

/// Extremal statistics as CSV (`r,inf_mass,sup_mass,n,centers_used`).
pub fn extremal_csv(stats: &[ExtremalStat], provenance: &[(&str, String)]) -> String {
    let mut out = provenance_header(provenance);
    out.push_str("r,inf_mass,sup_mass,n,centers_used\n");
    for s in stats {
        let _ = writeln!(out, "{},{},{},{},{}", s.r, s.inf_mass, s.sup_mass, s.n, s.centers_used);
    }
    out
}

/// Tent path rising at slope 2 to height 1 and back, on `n` cells.
pub fn tent(n: usize) -> ExcursionGrid {
    let h = (0..=n)
        .map(|i| 2.0 * (i as f64 / n as f64).min(1.0 - i as f64 / n as f64))
        .collect();
    ExcursionGrid::from_heights(h).expect("tent is a valid path")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn excursion_shape() {
        let mut s = RngStream::new(1, 0);
        let g = sample_normalized_excursion(1024, &mut s).unwrap();
        let h = g.heights();
        assert_eq!((h[0], h[1024]), (0.0, 0.0));
        assert!(h[1..1024].iter().all(|&x| x >= 0.0));
        assert!(g
            .cell_minima()
            .iter()
            .zip(h.windows(2))
            .all(|(m, w)| *m >= 0.0 && *m <= w[0].min(w[1])));
        assert_eq!(g.provenance(), Some((1, 0, 0)));
        assert_eq!(s.counter(), 1);
        assert!(sample_normalized_excursion(1000, &mut s).is_err());
        assert!(sample_normalized_excursion(512, &mut s).is_err());
    }

    #[test]
    fn same_stream_same_tree() {
        let a = sample_normalized_excursion(2048, &mut RngStream::new(5, 3)).unwrap();
        let b = sample_normalized_excursion(2048, &mut RngStream::new(5, 3)).unwrap();
        assert_eq!(a.heights(), b.heights());
        assert_eq!(a.cell_minima(), b.cell_minima());
    }

    #[test]
    fn distance_basics() {
        let g = tent(1000);
        assert_eq!(tree_distance(&g, 300, 300).unwrap(), 0.0);
        // monotone stretch: distance is the height difference
        assert!((tree_distance(&g, 100, 400).unwrap() - 0.6).abs() < 1e-12);
        // mirror points on the two sides meet at height 2·min
        assert!((tree_distance(&g, 200, 800).unwrap()).abs() < 1e-12);
        assert!(tree_distance(&g, 0, 1001).is_err());
    }

    #[test]
    fn coarsening_keeps_distances() {
        let g = sample_normalized_excursion(4096, &mut RngStream::new(2, 0)).unwrap();
        let c = g.coarsen(4).unwrap();
        assert_eq!(c.n(), 1024);
        for (s, t) in [(10, 500), (3, 1000), (700, 20)] {
            assert_eq!(
                tree_distance(&c, s, t).unwrap(),
                tree_distance(&g, 4 * s, 4 * t).unwrap()
            );
        }
        assert!(g.coarsen(3).is_err());
    }

    #[test]
    fn csv_headers() {
        let rows = [BallMassRow {
            tree_id: 0,
            center: 5,
            r: 0.5,
            mass: 0.25,
        }];
        assert_eq!(
            ball_mass_csv(&rows, &[("seed", "1".into())]),
            "# seed=1\ntree_id,center,r,mass\n0,5,0.5,0.25\n"
        );
        let s = [ExtremalStat {
            r: 0.1,
            inf_mass: 0.01,
            sup_mass: 0.2,
            n: 1024,
            centers_used: 256,
        }];
        assert_eq!(
            extremal_csv(&s, &[]),
            "r,inf_mass,sup_mass,n,centers_used\n0.1,0.01,0.2,1024,256\n"
        );
    }
}
