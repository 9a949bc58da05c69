//! Command-line front end for `stabletree`: evaluation, sampling, table
//! building, CRT simulation and the verification suite.
//!
//! Output formats are described in `docs/formats.md`.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod sim;
pub mod verify;

use commands::{Cli, Command, VerifyArgs};
use config::RunConfig;
use error::{CliError, CliResult};
use verify::{Profile, Suite};

/// Runs a parsed command line with configuration from the process environment.
pub fn run(cli: Cli) -> CliResult<()> {
    run_with_env(cli, std::env::vars())
}

pub fn run_with_env<I>(cli: Cli, env: I) -> CliResult<()>
where
    I: IntoIterator<Item = (String, String)>,
{
    let cfg = RunConfig::load(env, cli.config.as_deref())?;
    if let Some(threads) = cfg.pick(cli.threads, "threads")? {
        set_threads(threads)?;
    }
    match cli.command {
        Command::Kappa(a) => commands::run_kappa(a, &cfg),
        Command::Phi(a) => commands::run_phi(a, &cfg),
        Command::Tails(a) => commands::run_tails(a, &cfg),
        Command::Cgamma(a) => commands::run_cgamma(a, &cfg),
        Command::Gauge(a) => commands::run_gauge(a, &cfg),
        Command::Mstar(a) => commands::run_mstar(a, &cfg),
        Command::Shells(a) => commands::run_shells(a, &cfg),
        Command::Subordinator(a) => commands::run_subordinator(a, &cfg),
        Command::BuildTable(a) => commands::run_build_table(a, &cfg),
        Command::CrtBalls(a) => commands::run_crt_balls(a, &cfg),
        Command::CrtExtremal(a) => commands::run_crt_extremal(a, &cfg),
        Command::Verify(a) => run_verify(a, &cfg),
    }
}

#[cfg(feature = "parallel")]
fn set_threads(threads: usize) -> CliResult<()> {
    if threads == 0 {
        return Err(CliError::usage("threads must be ≥ 1"));
    }
    // a second initialisation (as in tests running several commands in one
    // process) keeps the first pool; results do not depend on its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn set_threads(threads: usize) -> CliResult<()> {
    if threads == 0 {
        return Err(CliError::usage("threads must be ≥ 1"));
    }
    Ok(())
}

fn run_verify(args: VerifyArgs, cfg: &RunConfig) -> CliResult<()> {
    let profile: Profile = cfg.pick(args.profile, "profile")?.unwrap_or(Profile::Smoke);
    let seed = cfg.pick(args.seed, "seed")?.unwrap_or(verify::DEFAULT_SEED);
    let report_path = cfg.pick(args.report, "out")?;
    if let Some(bad) = args
        .criteria
        .iter()
        .find(|id| !verify::CRITERIA.iter().any(|c| c.0 == **id))
    {
        return Err(CliError::usage(format!("unknown criterion {bad}")));
    }
    let report = Suite::new(profile, seed)
        .with_faults(args.inject_fault)
        .run(&args.criteria);
    for c in &report.criteria {
        eprintln!("{}", c.summary());
    }
    output::emit(report_path.as_deref(), &report.to_json())?;
    if report.passed {
        Ok(())
    } else {
        Err(CliError::VerifyFailed(report.failing()))
    }
}
