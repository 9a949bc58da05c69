//! CRT runs shared by the `crt-*` commands and the verify suite. Tree `k`
//! is drawn from stream `stream0 + k`, so any single tree can be
//! regenerated from `(seed, stream0 + k)`.

use stabletree::crt::{
    ball_masses_at_random_centers, extremal_profile, sample_normalized_excursion, BallMassRow, ExtremalStat,
};
use stabletree::sampler::RngStream;
use stabletree::{Exec, Result};
use std::fmt::Write as _;

/// Ball masses at `centers` uniform centers on each of `trees` trees.
pub fn ball_rows(
    cells: usize,
    trees: usize,
    centers: usize,
    r: f64,
    seed: u64,
    stream0: u64,
    exec: Exec,
) -> Result<Vec<BallMassRow>> {
    let per_tree = exec.try_map(trees, |k| {
        let mut s = RngStream::new(seed, stream0 + k as u64);
        let g = sample_normalized_excursion(cells, &mut s)?;
        ball_masses_at_random_centers(&g, k as u64, r, centers, &mut s)
    })?;
    Ok(per_tree.into_iter().flatten().collect())
}

/// Extremal statistics at `radii` (nondecreasing) for each replica tree.
pub fn extremal_rows(
    cells: usize,
    replicas: usize,
    radii: &[f64],
    stride: usize,
    seed: u64,
    stream0: u64,
    exec: Exec,
) -> Result<Vec<Vec<ExtremalStat>>> {
    exec.try_map(replicas, |k| {
        let g = sample_normalized_excursion(cells, &mut RngStream::new(seed, stream0 + k as u64))?;
        extremal_profile(&g, radii, stride, Exec::Sequential)
    })
}

/// `replica,r,inf_mass,sup_mass,n,centers_used` rows under `#` lines.
pub fn extremal_table_csv(rows: &[Vec<ExtremalStat>], provenance: &[(&str, String)]) -> String {
    let mut out = String::new();
    for (k, v) in provenance {
        let _ = writeln!(out, "# {k}={v}");
    }
    out.push_str("replica,r,inf_mass,sup_mass,n,centers_used\n");
    for (rep, stats) in rows.iter().enumerate() {
        for s in stats {
            let _ = writeln!(
                out,
                "{rep},{},{},{},{},{}",
                s.r, s.inf_mass, s.sup_mass, s.n, s.centers_used
            );
        }
    }
    out
}
