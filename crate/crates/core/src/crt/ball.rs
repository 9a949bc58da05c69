use super::ExcursionGrid;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::sampler::RngStream;
use rand::Rng;

/// `m(B(p(t), r))` for a list of radii.
#[derive(Debug, Clone, PartialEq)]
pub struct BallMassProfile {
    pub center: usize,
    pub radii: Vec<f64>,
    pub masses: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BallMassRow {
    pub tree_id: u64,
    pub center: usize,
    pub r: f64,
    pub mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Inf,
    Sup,
}

/// Bracketing estimate of `inf`/`sup` over centers of `m(B(σ, r))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalStat {
    pub r: f64,
    pub inf_mass: f64,
    pub sup_mass: f64,
    pub n: usize,
    pub centers_used: usize,
}

/// Counts of cells `s ∈ 0..n` with `d(s, t) < radii[j]`, radii nondecreasing.
///
/// Walks outwards from `t` with a running minimum `b`; once `H_t - b ≥ r_max`
/// every further point is at distance `≥ r_max` and the walk stops.
fn ball_counts(g: &ExcursionGrid, t: usize, radii: &[f64]) -> Vec<usize> {
    let n = g.n();
    let (h, gaps) = (&g.h, &g.gaps);
    let r_max = radii.last().copied().unwrap_or(0.0);
    let mut hist = vec![0usize; radii.len() + 1];
    let mut add = |d: f64| hist[radii.partition_point(|&r| r <= d)] += 1;
    let ht = h[t];
    if t < n {
        add(0.0);
    }
    let mut b = ht;
    for s in t + 1..n {
        b = b.min(gaps[s - 1]);
        if ht - b >= r_max {
            break;
        }
        add(h[s] + ht - 2.0 * b);
    }
    let mut b = ht;
    for s in (0..t.min(n)).rev() {
        b = b.min(gaps[s]);
        if ht - b >= r_max {
            break;
        }
        add(h[s] + ht - 2.0 * b);
    }
    let mut acc = 0;
    hist[..radii.len()]
        .iter()
        .map(|c| {
            acc += c;
            acc
        })
        .collect()
}

fn check_center(g: &ExcursionGrid, t: usize) -> Result<()> {
    if t > g.n() {
        return Err(Error::domain("ball_mass", format!("center {t} outside 0..={}", g.n())));
    }
    Ok(())
}

/// `(1/n) #{s : d(s, t) < r}`.
pub fn ball_mass(g: &ExcursionGrid, t: usize, r: f64) -> Result<f64> {
    check_center(g, t)?;
    if !(r >= 0.0) {
        return Err(Error::domain("ball_mass", format!("r={r} must be ≥ 0")));
    }
    Ok(ball_counts(g, t, &[r])[0] as f64 / g.n() as f64)
}

/// Masses at all `radii` (nondecreasing) from a single sweep.
pub fn ball_profile(g: &ExcursionGrid, t: usize, radii: &[f64]) -> Result<BallMassProfile> {
    check_center(g, t)?;
    if radii.iter().any(|r| !(*r >= 0.0)) || radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("ball_profile", "radii must be ≥ 0 and nondecreasing"));
    }
    let n = g.n() as f64;
    Ok(BallMassProfile {
        center: t,
        radii: radii.to_vec(),
        masses: ball_counts(g, t, radii).into_iter().map(|c| c as f64 / n).collect(),
    })
}

/// Ball masses at `count` uniform grid centers (`m`-random points).
pub fn ball_masses_at_random_centers(
    g: &ExcursionGrid,
    tree_id: u64,
    r: f64,
    count: usize,
    stream: &mut RngStream,
) -> Result<Vec<BallMassRow>> {
    let mut rng = stream.next_rng();
    let n = g.n();
    (0..count)
        .map(|_| {
            let t = rng.random_range(0..n);
            Ok(BallMassRow {
                tree_id,
                center: t,
                r,
                mass: ball_mass(g, t, r)?,
            })
        })
        .collect()
}

/// Center stride giving about 4096 centers.
pub fn default_stride(n: usize) -> usize {
    (n / 4096).max(1)
}

/// Smallest radius the grid resolves.
fn resolution_limit(n: usize) -> f64 {
    8.0 / n as f64
}

/// `inf` and `sup` of the ball mass over every `stride`-th center, for each
/// radius. The true `inf` is at most, and the true `sup` at least, the
/// reported value.
pub fn extremal_profile(g: &ExcursionGrid, radii: &[f64], stride: usize, exec: Exec) -> Result<Vec<ExtremalStat>> {
    let n = g.n();
    let limit = resolution_limit(n);
    if let Some(&r) = radii.iter().find(|&&r| !(r > limit)) {
        return Err(Error::Resolution { radius: r, limit, n });
    }
    if radii.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("extremal_ball_mass", "radii must be nondecreasing"));
    }
    if stride == 0 {
        return Err(Error::domain("extremal_ball_mass", "stride must be ≥ 1"));
    }
    let centers = n.div_ceil(stride);
    let counts = exec.map(centers, |k| ball_counts(g, k * stride, radii));
    Ok(radii
        .iter()
        .enumerate()
        .map(|(j, &r)| {
            let (lo, hi) = counts
                .iter()
                .fold((usize::MAX, 0), |(lo, hi), c| (lo.min(c[j]), hi.max(c[j])));
            ExtremalStat {
                r,
                inf_mass: lo as f64 / n as f64,
                sup_mass: hi as f64 / n as f64,
                n,
                centers_used: centers,
            }
        })
        .collect())
}

/// One side of [`extremal_profile`] at a single radius.
pub fn extremal_ball_mass(g: &ExcursionGrid, r: f64, mode: Extremal, stride: usize, exec: Exec) -> Result<f64> {
    let s = extremal_profile(g, &[r], stride, exec)?[0];
    Ok(match mode {
        Extremal::Inf => s.inf_mass,
        Extremal::Sup => s.sup_mass,
    })
}
