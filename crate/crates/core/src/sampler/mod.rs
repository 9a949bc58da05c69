//! Random variates for the spinal decomposition: one-sided stable laws, the
//! `(γ-1)`-stable subordinator, `M*` and independent shell masses.
//!
//! Every sampler takes an [`RngStream`] and draws in fixed-size blocks, so a
//! batch is a function of `(seed, stream_id, counter, n)` alone.

pub mod rng;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index::StableIndex;
use crate::laplace::{CdfTable, TailModel};
use rand::Rng;
use rand_distr::{Exp1, Open01};
use std::f64::consts::PI;
use std::fmt::Write as _;

pub use rng::RngStream;

/// Draws with their provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleBatch {
    pub values: Vec<f64>,
    pub seed: u64,
    pub stream_id: u64,
    /// Stream counter before the batch was drawn.
    pub counter: u64,
    pub tag: String,
    /// Extra `key=value` pairs for the header (γ, radii, ...).
    pub extra: Vec<(String, String)>,
}

impl SampleBatch {
    fn start(stream: &RngStream, tag: impl Into<String>) -> Self {
        Self {
            values: Vec::new(),
            seed: stream.seed(),
            stream_id: stream.stream_id(),
            counter: stream.counter(),
            tag: tag.into(),
            extra: Vec::new(),
        }
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn with_extra(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.extra.push((key.into(), value.to_string()));
        self
    }

    pub fn provenance_line(&self) -> String {
        let mut s = format!(
            "# dist={} seed={} stream={} counter={} count={}",
            self.tag,
            self.seed,
            self.stream_id,
            self.counter,
            self.count()
        );
        for (k, v) in &self.extra {
            let _ = write!(s, " {k}={v}");
        }
        s
    }

    /// `index,value` rows under the provenance line.
    pub fn to_csv(&self) -> String {
        let mut out = self.provenance_line();
        out.push_str("\nindex,value\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{i},{v}");
        }
        out
    }
}

/// `sin(πu)` accurate near both ends of `(0, 1)`.
fn sin_pi(u: f64) -> f64 {
    (PI * u.min(1.0 - u)).sin()
}

/// One draw with `E e^{-λX} = e^{-scale·λ^β}`.
///
/// Kanter's representation `X = (A(U)/E)^{(1-β)/β}` with
/// `A(u) = (sin(βπu)/sin(πu))^{1/(1-β)} sin((1-β)πu)/sin(βπu)`, `U` uniform and
/// `E` standard exponential, evaluated in logs. `β = 1` is the drift `scale`.
pub fn positive_stable_draw<R: Rng + ?Sized>(beta: f64, scale: f64, rng: &mut R) -> f64 {
    if beta == 1.0 {
        return scale;
    }
    let u: f64 = rng.sample(Open01);
    let e: f64 = rng.sample(Exp1);
    let sb = (beta * PI * u).sin().ln();
    let ln_x =
        (sb - sin_pi(u).ln()) / beta + (1.0 - beta) / beta * ((((1.0 - beta) * PI * u).sin()).ln() - sb - e.ln());
    (ln_x + scale.ln() / beta).exp()
}

fn check_stable(beta: f64, scale: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::domain(
            "sample_positive_stable",
            format!("β={beta} must lie in (0, 1]"),
        ));
    }
    if !(scale >= 0.0 && scale.is_finite()) {
        return Err(Error::domain(
            "sample_positive_stable",
            format!("scale={scale} must be finite and ≥ 0"),
        ));
    }
    Ok(())
}

/// `n` i.i.d. one-sided stable draws, `E e^{-λX} = e^{-scale·λ^β}`.
pub fn sample_positive_stable(
    beta: f64,
    scale: f64,
    stream: &mut RngStream,
    n: usize,
    exec: Exec,
) -> Result<SampleBatch> {
    check_stable(beta, scale)?;
    let mut batch = SampleBatch::start(stream, "positive_stable")
        .with_extra("beta", beta)
        .with_extra("scale", scale);
    batch.values = stream.fill(n, exec, |r| positive_stable_draw(beta, scale, r));
    Ok(batch)
}

fn check_time_grid(t: &[f64]) -> Result<()> {
    if t.first() != Some(&0.0) {
        return Err(Error::domain("sample_subordinator_path", "time grid must start at 0"));
    }
    if t.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
        return Err(Error::domain(
            "sample_subordinator_path",
            "time grid must be finite and strictly increasing",
        ));
    }
    Ok(())
}

fn subordinator_path<R: Rng + ?Sized>(idx: StableIndex, t: &[f64], rng: &mut R) -> Vec<f64> {
    let beta = idx.gamma() - 1.0;
    let mut u = 0.0;
    let mut path = Vec::with_capacity(t.len());
    path.push(0.0);
    for w in t.windows(2) {
        u += positive_stable_draw(beta, idx.gamma() * (w[1] - w[0]), rng);
        path.push(u);
    }
    path
}

/// `U` on `t_grid`: `U_0 = 0`, independent increments with exponent
/// `γΔt·λ^{γ-1}`. At `γ = 2` the path is `2t`. Consumes one block.
pub fn sample_subordinator_path(idx: StableIndex, t_grid: &[f64], stream: &mut RngStream) -> Result<Vec<f64>> {
    check_time_grid(t_grid)?;
    Ok(subordinator_path(idx, t_grid, &mut stream.next_rng()))
}

/// `n` independent paths; path `k` equals the `k`-th of `n` successive
/// [`sample_subordinator_path`] calls on the same stream.
pub fn sample_subordinator_paths(
    idx: StableIndex,
    t_grid: &[f64],
    stream: &mut RngStream,
    n: usize,
    exec: Exec,
) -> Result<Vec<Vec<f64>>> {
    check_time_grid(t_grid)?;
    let this = *stream;
    let paths = exec.map(n, |k| subordinator_path(idx, t_grid, &mut this.block_rng(k as u64)));
    stream.advance(n as u64);
    Ok(paths)
}

fn mstar_table_for(idx: StableIndex, table: Option<&CdfTable>) -> Result<&CdfTable> {
    let t = table.ok_or_else(|| {
        Error::Config(format!(
            "no M* table for gamma={}; build one with `build-table`",
            idx.gamma()
        ))
    })?;
    match t.tails() {
        TailModel::MStar(i) if i == idx => Ok(t),
        other => Err(Error::Config(format!(
            "table tails {other:?} do not describe M* at gamma={}",
            idx.gamma()
        ))),
    }
}

/// `n` draws of `M*` by inverse CDF on `table`, analytic tails beyond its grid.
pub fn sample_mstar(
    idx: StableIndex,
    table: Option<&CdfTable>,
    stream: &mut RngStream,
    n: usize,
    exec: Exec,
) -> Result<SampleBatch> {
    let t = mstar_table_for(idx, table)?;
    let mut batch = SampleBatch::start(stream, "mstar").with_extra("gamma", idx.gamma());
    batch.values = stream.fill(n, exec, |r| t.quantile(r.sample(Open01)));
    Ok(batch)
}

fn check_radii(radii: &[f64], a: f64) -> Result<()> {
    let op = "sample_shell_masses";
    if radii.len() < 2 {
        return Err(Error::domain(op, "need at least two radii"));
    }
    if !(radii[0] <= a) {
        return Err(Error::domain(op, format!("outer radius {} exceeds a={a}", radii[0])));
    }
    if radii.iter().any(|r| !(*r >= 0.0 && r.is_finite())) {
        return Err(Error::domain(op, "radii must be finite and ≥ 0"));
    }
    if radii.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::domain(op, "radii must be nonincreasing"));
    }
    Ok(())
}

/// Independent shell masses `M*_{r_{k+1}, r_k}(a)`, one batch of `n` draws
/// per shell, each `(r_k - r_{k+1})^{γ/(γ-1)}` times a fresh `M*`.
/// Equal consecutive radii give an empty shell of mass 0.
pub fn sample_shell_masses(
    idx: StableIndex,
    radii: &[f64],
    a: f64,
    table: Option<&CdfTable>,
    stream: &mut RngStream,
    n: usize,
    exec: Exec,
) -> Result<Vec<SampleBatch>> {
    check_radii(radii, a)?;
    let t = mstar_table_for(idx, table)?;
    let p = idx.gamma() / (idx.gamma() - 1.0);
    let mut out = Vec::with_capacity(radii.len() - 1);
    for (k, w) in radii.windows(2).enumerate() {
        let scale = (w[0] - w[1]).powf(p);
        let mut batch = SampleBatch::start(stream, "shell_mass")
            .with_extra("gamma", idx.gamma())
            .with_extra("shell", k)
            .with_extra("r_outer", w[0])
            .with_extra("r_inner", w[1])
            .with_extra("a", a);
        batch.values = stream.fill(n, exec, |r| scale * t.quantile(r.sample(Open01)));
        out.push(batch);
    }
    Ok(out)
}

/// `M*_r(a) = r^{γ/(γ-1)} M*`, the single shell `(0, r]`.
pub fn sample_single_shell(
    idx: StableIndex,
    r: f64,
    a: f64,
    table: Option<&CdfTable>,
    stream: &mut RngStream,
    n: usize,
    exec: Exec,
) -> Result<SampleBatch> {
    let mut shells = sample_shell_masses(idx, &[r, 0.0], a, table, stream, n, exec)?;
    Ok(shells.remove(0))
}
