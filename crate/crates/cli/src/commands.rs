//! Command grammar and the evaluation, sampling and table commands.

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::emit;
use crate::sim;
use crate::verify::{Fault, Profile};
use clap::{Args, Parser, Subcommand, ValueEnum};
use stabletree::crt::default_stride;
use stabletree::kappa::{phi_ball_transform, Kappa, KappaQuery, Mu};
use stabletree::laplace::{mstar_range, mstar_series_table, mstar_table, CdfTable};
use stabletree::sampler::{sample_mstar, sample_shell_masses, sample_subordinator_paths, RngStream};
use stabletree::tails::coeffs::{c_gamma_quadrature, c_gamma_series};
use stabletree::tails::{
    brownian_ball_cdf, brownian_ball_tail, brownian_mstar_cdf_small, brownian_mstar_tail, c_gamma, debruijn_ratio,
    expansion_coeffs, fixed_point_residual_with, gauge_eval, small_ball_asymptotic, stable_cdf_gamma2, GaugeKind,
    SeriesAccumulator, SmallBallLaw,
};
use stabletree::{Exec, StableIndex};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Relative accuracy of the real-argument κ solver, as checked against the
/// closed forms by `verify`.
pub const KAPPA_REL_ACCURACY: f64 = 1e-10;

const DEFAULT_TOL: f64 = 1e-12;

/// Shortest round-trip decimal, switching to exponent notation outside
/// `[1e-4, 1e16)` so tiny bounds stay readable.
pub fn num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e16).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}
const DEFAULT_TABLE_DIR: &str = "tables";

#[derive(Parser, Debug)]
#[command(
    name = "stabletree",
    version,
    about = "Ball masses in stable trees: transforms, tails, samplers and CRT simulation"
)]
pub struct Cli {
    /// key=value configuration file (overrides STABLETREE_* variables; flags override both)
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Worker threads for data-parallel loops (outputs do not depend on it)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// κ_a(λ, μ) on the cartesian product of the given lists
    Kappa(KappaArgs),
    /// Ball transform Φ_{a,b}(λ)
    Phi(PhiArgs),
    /// Brownian tail series, small-ball asymptotics, de Bruijn ratio, fixed-point residual
    Tails(TailsArgs),
    /// The small-ball constant C_γ
    Cgamma(CgammaArgs),
    /// Gauge functions for extremal ball masses
    Gauge(GaugeArgs),
    /// Draws of the spinal mass M*
    Mstar(MstarArgs),
    /// Independent shell masses between consecutive radii
    Shells(ShellsArgs),
    /// Paths of the (γ-1)-stable subordinator on a time grid
    Subordinator(SubordinatorArgs),
    /// Build and store the M* CDF table for one γ
    BuildTable(BuildTableArgs),
    /// Ball masses at uniform centers of simulated Brownian CRTs
    CrtBalls(CrtBallsArgs),
    /// Extremal (inf/sup over centers) ball masses of simulated Brownian CRTs
    CrtExtremal(CrtExtremalArgs),
    /// Run the verification suite and write a JSON report
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct KappaArgs {
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Levels a ≥ 0 (comma-separated)
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    /// Initial values μ ≥ 0; `inf` for +∞
    #[arg(long, value_delimiter = ',', required = true)]
    pub mu: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PhiArgs {
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub a: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub b: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub lambda: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailKind {
    /// P(M* > y), γ = 2
    MstarTail,
    /// P(M* ≤ y), γ = 2
    MstarCdf,
    /// N_1(m(B(ρ, 1+c)) > y), γ = 2
    BallTail,
    /// N_1(m(B(ρ, 1+c)) ≤ y), γ = 2
    BallCdf,
    /// Small-ball asymptotic form
    SmallBall,
    /// P(S ≤ y) for the γ = 2 stable law
    StableCdf,
    /// -log N_1(m ≤ y) / ((γ-1)/y)^{γ-1}
    Debruijn,
    /// Residual of the fixed-point identity at λ with N coefficients
    FixedPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    Mstar,
    Stable,
}

#[derive(Args, Debug)]
pub struct TailsArgs {
    #[arg(long, value_enum)]
    pub kind: TailKind,
    /// Defaults to 2
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub y: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub c: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub lambda: Vec<f64>,
    /// Number of expansion coefficients for `fixed-point`
    #[arg(long, default_value_t = 100)]
    pub terms: usize,
    #[arg(long, value_enum, default_value = "mstar")]
    pub law: LawArg,
    /// Series tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CgammaArgs {
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GaugeArgs {
    /// g_gamma, f_gamma, g_brownian or f_brownian
    #[arg(long)]
    pub kind: GaugeKind,
    /// Defaults to 2
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SampleOpts {
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stream id (defaults to 0)
    #[arg(long)]
    pub stream: Option<u64>,
    /// Number of draws
    #[arg(short = 'n', long = "count")]
    pub n: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct TableOpts {
    /// M* table file (as written by `build-table`)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Directory searched for `mstar_gamma<γ>.csv` (defaults to `tables`)
    #[arg(long)]
    pub table_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MstarArgs {
    #[command(flatten)]
    pub sample: SampleOpts,
    #[command(flatten)]
    pub table: TableOpts,
}

#[derive(Args, Debug)]
pub struct ShellsArgs {
    #[command(flatten)]
    pub sample: SampleOpts,
    #[command(flatten)]
    pub table: TableOpts,
    /// Nonincreasing radii r_0 ≥ r_1 ≥ … ≥ 0
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<f64>,
    /// Spine level a ≥ r_0 (defaults to r_0)
    #[arg(long)]
    pub a: Option<f64>,
}

#[derive(Args, Debug)]
pub struct SubordinatorArgs {
    #[command(flatten)]
    pub sample: SampleOpts,
    /// Increasing time grid starting at 0
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<f64>,
}

#[derive(Args, Debug)]
pub struct BuildTableArgs {
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Output file (defaults to `<table-dir>/mstar_gamma<γ>.csv`)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub table_dir: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CrtBallsArgs {
    /// Grid cells per tree (power of two ≥ 1024)
    #[arg(long, default_value_t = 1 << 15)]
    pub cells: usize,
    #[arg(long, default_value_t = 50)]
    pub trees: usize,
    #[arg(long, default_value_t = 400)]
    pub centers: usize,
    #[arg(long, default_value_t = 0.03)]
    pub r: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Stream of the first tree (defaults to 0)
    #[arg(long)]
    pub stream: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CrtExtremalArgs {
    #[arg(long, default_value_t = 1 << 17)]
    pub cells: usize,
    #[arg(long, default_value_t = 20)]
    pub replicas: usize,
    /// Nondecreasing radii (defaults to 2^-8, …, 2^-4)
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<f64>,
    /// Center stride (defaults to cells/4096)
    #[arg(long)]
    pub stride: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub stream: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub profile: Option<Profile>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON report path (defaults to stdout)
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Run only these criteria
    #[arg(long, value_delimiter = ',', hide = true)]
    pub criteria: Vec<u8>,
    /// Deliberately break a component to check that the suite notices
    #[arg(long, value_enum, hide = true)]
    pub inject_fault: Vec<Fault>,
}

fn index(g: f64) -> CliResult<StableIndex> {
    Ok(StableIndex::new(g)?)
}

fn gamma_or_two(cfg: &RunConfig, flag: Option<f64>) -> CliResult<StableIndex> {
    index(cfg.pick(flag, "gamma")?.unwrap_or(2.0))
}

fn out_path(cfg: &RunConfig, flag: Option<PathBuf>) -> CliResult<Option<PathBuf>> {
    cfg.pick(flag, "out")
}

fn require_brownian(idx: StableIndex, what: &str) -> CliResult<()> {
    if idx.is_brownian() {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "{what} is only available for gamma=2 (got {})",
            idx.gamma()
        )))
    }
}

fn nonempty<'a>(v: &'a [f64], flag: &str) -> CliResult<&'a [f64]> {
    if v.is_empty() {
        Err(CliError::usage(format!("--{flag} is required for this kind")))
    } else {
        Ok(v)
    }
}

pub fn run_kappa(args: KappaArgs, cfg: &RunConfig) -> CliResult<()> {
    let idx = index(cfg.require(args.gamma, "gamma")?)?;
    let solver = Kappa::new(idx);
    let mut out = format!(
        "# command=kappa gamma={} rel_accuracy={}\ngamma,a,lambda,mu,value,err_bound\n",
        idx.gamma(),
        num(KAPPA_REL_ACCURACY)
    );
    for &a in &args.a {
        for &lambda in &args.lambda {
            for &mu in &args.mu {
                let v = solver.solve(&KappaQuery::new(a, lambda, Mu::from_f64(mu))?)?;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    idx.gamma(),
                    num(a),
                    num(lambda),
                    num(mu),
                    num(v),
                    num(KAPPA_REL_ACCURACY * v.abs())
                );
            }
        }
    }
    emit(out_path(cfg, args.out)?.as_deref(), &out)
}

pub fn run_phi(args: PhiArgs, cfg: &RunConfig) -> CliResult<()> {
    let idx = index(cfg.require(args.gamma, "gamma")?)?;
    let mut out = format!(
        "# command=phi gamma={} rel_accuracy={}\ngamma,a,b,lambda,value,err_bound\n",
        idx.gamma(),
        num(KAPPA_REL_ACCURACY)
    );
    for &a in &args.a {
        for &b in &args.b {
            for &lambda in &args.lambda {
                let v = phi_ball_transform(idx, a, b, lambda)?;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    idx.gamma(),
                    num(a),
                    num(b),
                    num(lambda),
                    num(v),
                    num(KAPPA_REL_ACCURACY * v.abs())
                );
            }
        }
    }
    emit(out_path(cfg, args.out)?.as_deref(), &out)
}

fn series_row(out: &mut String, prefix: &str, acc: SeriesAccumulator) {
    let _ = writeln!(out, "{prefix},{},{}", num(acc.value), num(acc.remainder_bound));
}

pub fn run_tails(args: TailsArgs, cfg: &RunConfig) -> CliResult<()> {
    let idx = gamma_or_two(cfg, args.gamma)?;
    let tol = cfg.pick(args.tol, "tol")?.unwrap_or(DEFAULT_TOL);
    let g = idx.gamma();
    let kind = args
        .kind
        .to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string();
    let tol_s = num(tol);
    let mut out = format!("# command=tails kind={kind} gamma={g} tol={tol_s}\n");
    match args.kind {
        TailKind::MstarTail | TailKind::MstarCdf => {
            require_brownian(idx, &kind)?;
            out.push_str("kind,gamma,y,tol,value,err_bound\n");
            for &y in nonempty(&args.y, "y")? {
                let acc = match args.kind {
                    TailKind::MstarTail => brownian_mstar_tail(y, tol)?,
                    // the theta-dual series converges fast for small y, the
                    // direct one for large y
                    _ if y <= 1.0 => brownian_mstar_cdf_small(y, tol)?,
                    _ => {
                        let t = brownian_mstar_tail(y, tol)?;
                        SeriesAccumulator {
                            value: 1.0 - t.value,
                            ..t
                        }
                    }
                };
                series_row(&mut out, &format!("{kind},{g},{},{tol_s}", num(y)), acc);
            }
        }
        TailKind::BallTail | TailKind::BallCdf => {
            require_brownian(idx, &kind)?;
            out.push_str("kind,gamma,c,y,tol,value,err_bound\n");
            for &c in &args.c {
                for &y in nonempty(&args.y, "y")? {
                    let acc = if args.kind == TailKind::BallTail {
                        brownian_ball_tail(c, y, tol)?
                    } else {
                        brownian_ball_cdf(c, y, tol)?
                    };
                    series_row(&mut out, &format!("{kind},{g},{c},{},{tol_s}", num(y)), acc);
                }
            }
        }
        TailKind::SmallBall => {
            let (law, name) = match args.law {
                LawArg::Mstar => (SmallBallLaw::MStar, "mstar"),
                LawArg::Stable => (SmallBallLaw::Stable, "stable"),
            };
            out.push_str("kind,gamma,law,y,value,err_bound\n");
            for &y in nonempty(&args.y, "y")? {
                let _ = writeln!(
                    out,
                    "{kind},{g},{name},{},{},",
                    num(y),
                    num(small_ball_asymptotic(idx, y, law)?)
                );
            }
        }
        TailKind::StableCdf => {
            require_brownian(idx, &kind)?;
            out.push_str("kind,gamma,y,value,err_bound\n");
            for &y in nonempty(&args.y, "y")? {
                let _ = writeln!(out, "{kind},{g},{},{},", num(y), num(stable_cdf_gamma2(y)?));
            }
        }
        TailKind::Debruijn => {
            out.push_str("kind,gamma,c,y,value,err_bound\n");
            for &c in &args.c {
                for &y in nonempty(&args.y, "y")? {
                    let _ = writeln!(out, "{kind},{g},{c},{},{},", num(y), num(debruijn_ratio(idx, c, y)?));
                }
            }
        }
        TailKind::FixedPoint => {
            out.push_str("kind,gamma,lambda,terms,value,err_bound\n");
            let table = expansion_coeffs(idx, args.terms)?;
            for &l in nonempty(&args.lambda, "lambda")? {
                let r = fixed_point_residual_with(&table, l)?;
                let _ = writeln!(out, "{kind},{g},{},{},{},", num(l), args.terms, num(r));
            }
        }
    }
    emit(out_path(cfg, args.out)?.as_deref(), &out)
}

pub fn run_cgamma(args: CgammaArgs, cfg: &RunConfig) -> CliResult<()> {
    let idx = index(cfg.require(args.gamma, "gamma")?)?;
    let tol = cfg.pick(args.tol, "tol")?.unwrap_or(DEFAULT_TOL);
    let v = c_gamma(idx, tol)?;
    let (series, bound) = c_gamma_series(idx, 4096, 8);
    let err = (c_gamma_quadrature(idx) - series)
        .abs()
        .max(bound)
        .max(f64::EPSILON * v.abs());
    let out = format!(
        "# command=cgamma gamma={g} tol={t}\ngamma,tol,value,err_bound\n{g},{t},{},{}\n",
        num(v),
        num(err),
        g = idx.gamma(),
        t = num(tol)
    );
    emit(out_path(cfg, args.out)?.as_deref(), &out)
}

pub fn run_gauge(args: GaugeArgs, cfg: &RunConfig) -> CliResult<()> {
    let idx = gamma_or_two(cfg, args.gamma)?;
    let mut out = format!(
        "# command=gauge kind={} gamma={}\nkind,gamma,r,value,err_bound\n",
        args.kind,
        idx.gamma()
    );
    for &r in &args.r {
        let _ = writeln!(
            out,
            "{},{},{},{},",
            args.kind,
            idx.gamma(),
            num(r),
            num(gauge_eval(args.kind, idx, r)?)
        );
    }
    emit(out_path(cfg, args.out)?.as_deref(), &out)
}

pub fn table_file_name(idx: StableIndex) -> String {
    format!("mstar_gamma{}.csv", idx.gamma())
}

/// The `M*` table for `idx`: an explicit file, the series table at `γ = 2`,
/// or `<table_dir>/mstar_gamma<γ>.csv`. Returns the table and a label for
/// the provenance line.
pub fn load_mstar_table(idx: StableIndex, opts: &TableOpts, cfg: &RunConfig) -> CliResult<(CdfTable, String)> {
    let read = |p: &Path| -> CliResult<CdfTable> {
        let text = std::fs::read_to_string(p).map_err(|e| {
            CliError::MissingArtifact(format!(
                "cannot read M* table {} ({e}); create it with `stabletree build-table --gamma {}`",
                p.display(),
                idx.gamma()
            ))
        })?;
        Ok(CdfTable::from_csv(&text)?)
    };
    if let Some(p) = &opts.table {
        return Ok((read(p)?, p.display().to_string()));
    }
    if idx.is_brownian() {
        return Ok((mstar_series_table()?, "series".into()));
    }
    let dir: PathBuf = cfg
        .pick(opts.table_dir.clone(), "table_dir")?
        .unwrap_or_else(|| DEFAULT_TABLE_DIR.into());
    let p = dir.join(table_file_name(idx));
    if !p.exists() {
        return Err(CliError::MissingArtifact(format!(
            "no M* table for gamma={} at {}; create it with `stabletree build-table --gamma {} --table-dir {}`",
            idx.gamma(),
            p.display(),
            idx.gamma(),
            dir.display()
        )));
    }
    Ok((read(&p)?, p.display().to_string()))
}

struct Sampling {
    idx: StableIndex,
    stream: RngStream,
    n: usize,
    out: Option<PathBuf>,
}

fn sampling(opts: &SampleOpts, cfg: &RunConfig, default_n: usize) -> CliResult<Sampling> {
    let idx = index(cfg.require(opts.gamma, "gamma")?)?;
    let seed: u64 = cfg.require(opts.seed, "seed")?;
    let stream_id = cfg.pick(opts.stream, "stream")?.unwrap_or(0);
    Ok(Sampling {
        idx,
        stream: RngStream::new(seed, stream_id),
        n: cfg.pick(opts.n, "n")?.unwrap_or(default_n),
        out: out_path(cfg, opts.out.clone())?,
    })
}

pub fn run_mstar(args: MstarArgs, cfg: &RunConfig) -> CliResult<()> {
    let mut s = sampling(&args.sample, cfg, 10_000)?;
    let (table, label) = load_mstar_table(s.idx, &args.table, cfg)?;
    let batch = sample_mstar(s.idx, Some(&table), &mut s.stream, s.n, Exec::default())?.with_extra("table", label);
    emit(s.out.as_deref(), &batch.to_csv())
}

pub fn run_shells(args: ShellsArgs, cfg: &RunConfig) -> CliResult<()> {
    let mut s = sampling(&args.sample, cfg, 10_000)?;
    let (table, label) = load_mstar_table(s.idx, &args.table, cfg)?;
    let a = args.a.or(args.radii.first().copied()).unwrap_or(0.0);
    let batches = sample_shell_masses(s.idx, &args.radii, a, Some(&table), &mut s.stream, s.n, Exec::default())?;
    let mut out = String::new();
    for b in &batches {
        out.push_str(&b.clone().with_extra("table", &label).provenance_line());
        out.push('\n');
    }
    out.push_str("shell,index,value\n");
    for (k, b) in batches.iter().enumerate() {
        for (i, v) in b.values.iter().enumerate() {
            let _ = writeln!(out, "{k},{i},{v}");
        }
    }
    emit(s.out.as_deref(), &out)
}

pub fn run_subordinator(args: SubordinatorArgs, cfg: &RunConfig) -> CliResult<()> {
    let mut s = sampling(&args.sample, cfg, 1)?;
    let start = s.stream;
    let paths = sample_subordinator_paths(s.idx, &args.grid, &mut s.stream, s.n, Exec::default())?;
    let grid: Vec<String> = args.grid.iter().map(f64::to_string).collect();
    let mut out = format!(
        "# dist=subordinator seed={} stream={} counter={} count={} gamma={} grid={}\npath,t,value\n",
        start.seed(),
        start.stream_id(),
        start.counter(),
        paths.len(),
        s.idx.gamma(),
        grid.join(";")
    );
    for (k, p) in paths.iter().enumerate() {
        for (t, v) in args.grid.iter().zip(p) {
            let _ = writeln!(out, "{k},{t},{v}");
        }
    }
    emit(s.out.as_deref(), &out)
}

pub fn run_build_table(args: BuildTableArgs, cfg: &RunConfig) -> CliResult<()> {
    let idx = index(cfg.require(args.gamma, "gamma")?)?;
    let path = match cfg.pick(args.out, "out")? {
        Some(p) => p,
        None => {
            let dir: PathBuf = cfg
                .pick(args.table_dir, "table_dir")?
                .unwrap_or_else(|| DEFAULT_TABLE_DIR.into());
            dir.join(table_file_name(idx))
        }
    };
    let (lo, hi, n) = mstar_range(idx);
    let table = mstar_table(idx, Exec::default())?;
    let csv = table.to_csv(&[
        ("tool", format!("stabletree {}", env!("CARGO_PKG_VERSION"))),
        ("y_min", lo.to_string()),
        ("y_max", hi.to_string()),
        ("requested_points", n.to_string()),
    ]);
    crate::output::write_atomic(&path, &csv)?;
    eprintln!("wrote {} ({} nodes)", path.display(), table.grid().len());
    Ok(())
}

pub fn run_crt_balls(args: CrtBallsArgs, cfg: &RunConfig) -> CliResult<()> {
    let seed: u64 = cfg.require(args.seed, "seed")?;
    let stream0 = cfg.pick(args.stream, "stream")?.unwrap_or(0);
    let rows = sim::ball_rows(
        args.cells,
        args.trees,
        args.centers,
        args.r,
        seed,
        stream0,
        Exec::default(),
    )?;
    let csv = stabletree::crt::ball_mass_csv(
        &rows,
        &[
            ("command", "crt-balls".into()),
            ("seed", seed.to_string()),
            ("stream", stream0.to_string()),
            ("cells", args.cells.to_string()),
            ("trees", args.trees.to_string()),
            ("centers", args.centers.to_string()),
        ],
    );
    emit(out_path(cfg, args.out)?.as_deref(), &csv)
}

pub fn default_band_radii() -> Vec<f64> {
    (4..=8).rev().map(|k| 2f64.powi(-k)).collect()
}

pub fn run_crt_extremal(args: CrtExtremalArgs, cfg: &RunConfig) -> CliResult<()> {
    let seed: u64 = cfg.require(args.seed, "seed")?;
    let stream0 = cfg.pick(args.stream, "stream")?.unwrap_or(0);
    let radii = if args.radii.is_empty() {
        default_band_radii()
    } else {
        args.radii
    };
    let stride = args.stride.unwrap_or_else(|| default_stride(args.cells));
    let rows = sim::extremal_rows(
        args.cells,
        args.replicas,
        &radii,
        stride,
        seed,
        stream0,
        Exec::default(),
    )?;
    let csv = sim::extremal_table_csv(
        &rows,
        &[
            ("command", "crt-extremal".into()),
            ("seed", seed.to_string()),
            ("stream", stream0.to_string()),
            ("cells", args.cells.to_string()),
            ("replicas", args.replicas.to_string()),
            ("stride", stride.to_string()),
        ],
    );
    emit(out_path(cfg, args.out)?.as_deref(), &csv)
}
