//! The verification suite: eleven criteria tying the numerical, sampling
//! and simulation layers to closed forms, certified series and each other.
//!
//! Every criterion is a list of [`Check`]s. A check passes when its measured
//! value lies inside `[lower, upper]`; a criterion passes when all of its
//! checks do and nothing errored along the way.

use crate::sim;
use clap::ValueEnum;
use rand::Rng;
use serde::Serialize;
use stabletree::kappa::{kappa_brownian, kappa_zero_lambda, Kappa, KappaQuery, Mu, TransformHandle};
use stabletree::laplace::{
    build_cdf_table, invert_cdf_at, log_grid, mstar_series_table, mstar_table, InversionOptions, TailModel,
};
use stabletree::sampler::{sample_mstar, sample_shell_masses, sample_subordinator_path, RngStream};
use stabletree::stats::{correlation, ks_statistic, mean, std_error};
use stabletree::tails::coeffs::{c_gamma_quadrature, c_gamma_series};
use stabletree::tails::{
    brownian_ball_cdf, brownian_mstar_cdf, debruijn_ratio, expansion_coeffs, fixed_point_residual_with,
    small_ball_asymptotic, stable_cdf_gamma2, SmallBallLaw,
};
use stabletree::{Exec, Result, StableIndex};
use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Reduced sizes; finishes in well under a minute.
    Smoke,
    /// Sample sizes and grids as stated for each criterion.
    Desk,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        <Self as ValueEnum>::from_str(s, true)
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Smoke => "smoke",
            Profile::Desk => "desk",
        })
    }
}

/// Deliberate defects used to check that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Every κ value used by the suite comes back with the wrong sign.
    KappaSign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// `null` in JSON when the quantity could not be computed.
    pub measured: f64,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub pass: bool,
}

impl Check {
    pub fn within(name: impl Into<String>, measured: f64, lower: Option<f64>, upper: Option<f64>) -> Self {
        let pass = !measured.is_nan() && lower.is_none_or(|l| measured >= l) && upper.is_none_or(|u| measured <= u);
        Self {
            name: name.into(),
            measured,
            lower,
            upper,
            pass,
        }
    }

    pub fn at_most(name: impl Into<String>, measured: f64, upper: f64) -> Self {
        Self::within(name, measured, None, Some(upper))
    }

    pub fn between(name: impl Into<String>, measured: f64, lower: f64, upper: f64) -> Self {
        Self::within(name, measured, Some(lower), Some(upper))
    }

    fn bounds(&self) -> String {
        match (self.lower, self.upper) {
            (Some(l), Some(u)) => format!("in [{l}, {u}]"),
            (None, Some(u)) => format!("<= {u:e}"),
            (Some(l), None) => format!(">= {l:e}"),
            (None, None) => "unbounded".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Error message if the criterion could not be evaluated.
    pub error: Option<String>,
}

impl CriterionReport {
    /// One line per criterion plus one indented line per check.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "criterion {:>2} {} {}",
            self.id,
            if self.pass { "PASS" } else { "FAIL" },
            self.name
        );
        if let Some(e) = &self.error {
            s.push_str(&format!("\n    error: {e}"));
        }
        for c in &self.checks {
            s.push_str(&format!(
                "\n    [{}] {}: {:.6e} {}",
                if c.pass { "ok" } else { "!!" },
                c.name,
                c.measured,
                c.bounds()
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub profile: Profile,
    pub seed: u64,
    pub faults: Vec<Fault>,
    pub criteria: Vec<CriterionReport>,
    pub passed: bool,
}

impl Report {
    pub fn failing(&self) -> Vec<String> {
        self.criteria
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{} ({})", c.id, c.name))
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is plain data");
        s.push('\n');
        s
    }
}

pub const CRITERIA: [(u8, &str); 11] = [
    (1, "closed-form agreement of the kappa solver"),
    (2, "semigroup and scaling identities"),
    (3, "small-ball constant and coefficient bound"),
    (4, "Brownian inversion against series"),
    (5, "fixed-point identity"),
    (6, "small-ball asymptotics"),
    (7, "de Bruijn ratio"),
    (8, "sampler fidelity"),
    (9, "CRT ball masses against the M* law"),
    (10, "order-of-growth bands of extremal ball masses"),
    (11, "determinism across policies and thread counts"),
];

const GAMMAS: [f64; 4] = [1.2, 1.5, 1.8, 2.0];

#[derive(Debug, Clone)]
pub struct Suite {
    pub profile: Profile,
    pub seed: u64,
    pub faults: Vec<Fault>,
    pub exec: Exec,
}

fn rel_err(x: f64, reference: f64) -> f64 {
    if x == reference {
        0.0
    } else {
        ((x - reference) / reference).abs()
    }
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
}

fn max_of(v: impl IntoIterator<Item = f64>) -> f64 {
    // NaN propagates so that a broken evaluation cannot pass
    v.into_iter()
        .fold(0.0, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

impl Suite {
    pub fn new(profile: Profile, seed: u64) -> Self {
        Self {
            profile,
            seed,
            faults: Vec::new(),
            exec: Exec::default(),
        }
    }

    pub fn with_faults(mut self, faults: Vec<Fault>) -> Self {
        self.faults = faults;
        self
    }

    fn desk(&self) -> bool {
        self.profile == Profile::Desk
    }

    fn size(&self, desk: usize, smoke: usize) -> usize {
        if self.desk() {
            desk
        } else {
            smoke
        }
    }

    /// The κ solver as seen by the suite, with faults applied.
    fn kappa(&self, solver: &Kappa, a: f64, lambda: f64, mu: Mu) -> Result<f64> {
        let v = solver.solve(&KappaQuery::new(a, lambda, mu)?)?;
        Ok(if self.faults.contains(&Fault::KappaSign) { -v } else { v })
    }

    pub fn run(&self, ids: &[u8]) -> Report {
        let ids: Vec<u8> = if ids.is_empty() {
            CRITERIA.iter().map(|c| c.0).collect()
        } else {
            ids.to_vec()
        };
        let criteria: Vec<CriterionReport> = ids.iter().map(|&id| self.run_one(id)).collect();
        let passed = criteria.iter().all(|c| c.pass);
        Report {
            tool: "stabletree",
            version: env!("CARGO_PKG_VERSION"),
            profile: self.profile,
            seed: self.seed,
            faults: self.faults.clone(),
            criteria,
            passed,
        }
    }

    pub fn run_one(&self, id: u8) -> CriterionReport {
        let name = CRITERIA.iter().find(|c| c.0 == id).map_or("unknown criterion", |c| c.1);
        let result = match id {
            1 => self.closed_forms(),
            2 => self.identities(),
            3 => self.constant(),
            4 => self.inversion(),
            5 => self.fixed_point(),
            6 => self.small_ball(),
            7 => self.debruijn(),
            8 => self.sampler(),
            9 => self.crt_ks(),
            10 => self.bands(),
            11 => self.determinism(),
            _ => Err(stabletree::Error::Config(format!("no criterion {id}"))),
        };
        match result {
            Ok(checks) => CriterionReport {
                id,
                name,
                pass: !checks.is_empty() && checks.iter().all(|c| c.pass),
                checks,
                error: None,
            },
            Err(e) => CriterionReport {
                id,
                name,
                pass: false,
                checks: Vec::new(),
                error: Some(e.to_string()),
            },
        }
    }

    fn closed_forms(&self) -> Result<Vec<Check>> {
        let m = self.size(24, 8);
        let a_grid = log_grid(1e-2, 10.0, m);
        let l_grid = log_grid(1e-3, 1e3, m);
        let mut mus: Vec<Mu> = vec![Mu::Finite(0.0), Mu::Infinite];
        mus.extend(log_grid(1e-3, 1e3, m - 2).into_iter().map(Mu::Finite));
        let b = Kappa::new(StableIndex::brownian());
        let errs = self.exec.try_map(a_grid.len(), |i| -> Result<f64> {
            let a = a_grid[i];
            let mut worst: f64 = 0.0;
            for &l in &l_grid {
                for &mu in &mus {
                    worst = max_of([worst, rel_err(self.kappa(&b, a, l, mu)?, kappa_brownian(a, l, mu)?)]);
                }
            }
            Ok(worst)
        })?;
        let mut checks = vec![Check::at_most(
            "gamma=2 vs closed form, max rel err",
            max_of(errs),
            1e-10,
        )];
        for g in GAMMAS {
            let idx = StableIndex::new(g)?;
            let k = Kappa::new(idx);
            let errs = self.exec.try_map(a_grid.len(), |i| -> Result<f64> {
                let a = a_grid[i];
                let mut worst: f64 = 0.0;
                for &mu in &mus {
                    worst = max_of([
                        worst,
                        rel_err(self.kappa(&k, a, 0.0, mu)?, kappa_zero_lambda(idx, a, mu)?),
                    ]);
                }
                Ok(worst)
            })?;
            checks.push(Check::at_most(
                format!("gamma={g} lambda=0 vs closed form, max rel err"),
                max_of(errs),
                1e-10,
            ));
        }
        Ok(checks)
    }

    fn identities(&self) -> Result<Vec<Check>> {
        let tuples = self.size(100, 25);
        let mut checks = Vec::new();
        for (gi, g) in GAMMAS.into_iter().enumerate() {
            let k = Kappa::new(StableIndex::new(g)?);
            let g1 = g - 1.0;
            let mut rng = RngStream::new(self.seed, 1_000 + gi as u64).next_rng();
            let (mut semi, mut scale): (f64, f64) = (0.0, 0.0);
            for t in 0..tuples {
                let a = log_uniform(&mut rng, 0.01, 3.0);
                let b = log_uniform(&mut rng, 0.01, 3.0);
                let l = log_uniform(&mut rng, 1e-3, 1e2);
                let c = log_uniform(&mut rng, 0.2, 5.0);
                let m = log_uniform(&mut rng, 1e-3, 1e2);
                // every fifth tuple starts from μ = ∞
                let mu = if t % 5 == 0 { Mu::Infinite } else { Mu::Finite(m) };
                let whole = self.kappa(&k, a + b, l, mu)?;
                let inner = self.kappa(&k, b, l, mu)?;
                semi = max_of([semi, rel_err(self.kappa(&k, a, l, Mu::Finite(inner))?, whole)]);
                let mu_c = match mu {
                    Mu::Infinite => Mu::Infinite,
                    Mu::Finite(v) => Mu::Finite(c.powf(-1.0 / g1) * v),
                };
                let lhs = c.powf(1.0 / g1) * self.kappa(&k, a, c.powf(-g / g1) * l, mu_c)?;
                scale = max_of([scale, rel_err(lhs, self.kappa(&k, a / c, l, mu)?)]);
            }
            checks.push(Check::at_most(format!("gamma={g} semigroup, max rel err"), semi, 1e-9));
            checks.push(Check::at_most(format!("gamma={g} scaling, max rel err"), scale, 1e-9));
        }
        Ok(checks)
    }

    fn constant(&self) -> Result<Vec<Check>> {
        let b = StableIndex::brownian();
        let exact = 2.0 * LN_2;
        let quad = c_gamma_quadrature(b);
        let (series, bound) = c_gamma_series(b, 4096, 8);
        let mut checks = vec![
            Check::at_most("C_2 by quadrature, abs err vs 2 ln 2", (quad - exact).abs(), 1e-10),
            Check::at_most("C_2 by series, abs err vs 2 ln 2", (series - exact).abs(), 1e-10),
            Check::at_most("C_2 series remainder bound", bound, 1e-10),
        ];
        for g in [1.5, 2.0] {
            let t = expansion_coeffs(StableIndex::new(g)?, 100)?;
            // relative slack for rounding in the partial sum only
            checks.push(Check::at_most(
                format!("gamma={g} sum |c_n| / e^C_gamma (N=100)"),
                t.abs_c_sum() / t.c_gamma.exp(),
                1.0 + 1e-12,
            ));
        }
        Ok(checks)
    }

    fn inversion(&self) -> Result<Vec<Check>> {
        let b = StableIndex::brownian();
        let ys = log_grid(0.05, 5.0, self.size(60, 15));
        let mstar = TransformHandle::mstar(b);
        let errs = self.exec.try_map(ys.len(), |i| -> Result<f64> {
            Ok((invert_cdf_at(&mstar, ys[i])? - brownian_mstar_cdf(ys[i], 1e-14)?).abs())
        })?;
        let mut checks = vec![Check::at_most("M* CDF, max abs err", max_of(errs), 1e-6)];
        for c in [0.0, 2.0] {
            let ball = TransformHandle::ball(b, 1.0, c);
            let errs = self.exec.try_map(ys.len(), |i| -> Result<f64> {
                Ok((invert_cdf_at(&ball, ys[i])? - brownian_ball_cdf(c, ys[i], 1e-14)?.value).abs())
            })?;
            checks.push(Check::at_most(
                format!("ball CDF c={c}, max abs err"),
                max_of(errs),
                1e-6,
            ));
        }
        Ok(checks)
    }

    fn fixed_point(&self) -> Result<Vec<Check>> {
        let lambdas: &[f64] = if self.desk() {
            &[0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0]
        } else {
            &[1.0, 5.0, 20.0]
        };
        GAMMAS
            .into_iter()
            .map(|g| {
                let t = expansion_coeffs(StableIndex::new(g)?, 100)?;
                let r = lambdas
                    .iter()
                    .map(|&l| fixed_point_residual_with(&t, l))
                    .collect::<Result<Vec<f64>>>()?;
                Ok(Check::at_most(
                    format!("gamma={g} max residual over lambda (N=100)"),
                    max_of(r),
                    1e-6,
                ))
            })
            .collect()
    }

    fn small_ball(&self) -> Result<Vec<Check>> {
        let b = StableIndex::brownian();
        let mut checks = Vec::new();
        for y in [0.05, 0.08] {
            let r = brownian_mstar_cdf(y, 1e-14)? / small_ball_asymptotic(b, y, SmallBallLaw::MStar)?;
            checks.push(Check::between(format!("P(M* <= {y}) / asymptotic"), r, 0.9, 1.1));
        }
        let y = 0.05;
        let r = stable_cdf_gamma2(y)? / small_ball_asymptotic(b, y, SmallBallLaw::Stable)?;
        checks.push(Check::between(
            format!("P(S <= {y}) / Skorohod asymptotic"),
            r,
            0.95,
            1.05,
        ));
        Ok(checks)
    }

    fn debruijn(&self) -> Result<Vec<Check>> {
        [0.0, 2.0]
            .into_iter()
            .map(|c| {
                let r = debruijn_ratio(StableIndex::brownian(), c, 0.01)?;
                Ok(Check::between(
                    format!("-y log N_1(m <= y), c={c}, y=0.01"),
                    r,
                    0.9,
                    1.1,
                ))
            })
            .collect()
    }

    fn sampler(&self) -> Result<Vec<Check>> {
        let b = StableIndex::brownian();
        let series = mstar_series_table()?;
        let n = self.size(100_000, 20_000);
        let draws = sample_mstar(b, Some(&series), &mut RngStream::new(self.seed, 10), n, self.exec)?.values;
        let (m, se) = (mean(&draws), std_error(&draws));
        let p = draws.iter().filter(|&&x| x >= 1.0).count() as f64 / n as f64;
        let p_se = (p * (1.0 - p) / n as f64).sqrt();
        let mut checks = vec![
            Check::at_most("|mean(M*) - 1| / SE", (m - 1.0).abs() / se, 3.0),
            Check::at_most("|P(M* >= 1) - 0.40782| / SE", (p - 0.40782).abs() / p_se, 3.0),
        ];
        let shell_n = self.size(10_000, 5_000);
        for g in [1.5, 2.0] {
            let idx = StableIndex::new(g)?;
            let table = if idx.is_brownian() {
                series.clone()
            } else {
                mstar_table(idx, self.exec)?
            };
            let (w, p) = (0.1, g / (g - 1.0));
            let radii: Vec<f64> = (0..5).map(|k| 0.4 - w * k as f64).collect();
            let mut s = RngStream::new(self.seed, 20 + (g * 10.0) as u64);
            let shells = sample_shell_masses(idx, &radii, 0.5, Some(&table), &mut s, shell_n, self.exec)?;
            let scaled: Vec<Vec<f64>> = shells
                .iter()
                .map(|b| b.values.iter().map(|v| v / w.powf(p)).collect())
                .collect();
            let ks = max_of(scaled.iter().map(|sh| ks_statistic(sh, |y| table.cdf(y))));
            checks.push(Check::at_most(
                format!("gamma={g} rescaled shell KS vs M* table"),
                ks,
                0.02,
            ));
            let laplace: Vec<Vec<f64>> = scaled
                .iter()
                .map(|sh| sh.iter().map(|x| (-x).exp()).collect())
                .collect();
            let mut corr: f64 = 0.0;
            for i in 0..laplace.len() {
                for j in i + 1..laplace.len() {
                    corr = max_of([corr, correlation(&laplace[i], &laplace[j]).abs()]);
                }
            }
            checks.push(Check::at_most(
                format!("gamma={g} max |corr| between shells, in units of 1/sqrt(n)"),
                corr * (shell_n as f64).sqrt(),
                3.0,
            ));
        }
        let grid: Vec<f64> = (0..=20).map(|k| 0.25 * k as f64).collect();
        let path = sample_subordinator_path(b, &grid, &mut RngStream::new(self.seed, 30))?;
        let dev = max_of(grid.iter().zip(&path).map(|(t, u)| (u - 2.0 * t).abs()));
        checks.push(Check::at_most("gamma=2 subordinator max |U_t - 2t|", dev, 0.0));
        Ok(checks)
    }

    fn crt_ks(&self) -> Result<Vec<Check>> {
        let (cells, trees, centers) = if self.desk() {
            (1 << 15, 50, 400)
        } else {
            (1 << 14, 20, 200)
        };
        let r = 0.03;
        let rows = sim::ball_rows(cells, trees, centers, r, self.seed, 100_000, self.exec)?;
        let scaled: Vec<f64> = rows.iter().map(|row| row.mass / (r * r)).collect();
        let table = mstar_series_table()?;
        let ks = ks_statistic(&scaled, |y| table.cdf(y));
        Ok(vec![Check::at_most(
            format!("KS(r^-2 m(B(sigma, r)), M*) at r={r}, n={cells}, {trees}x{centers}"),
            ks,
            0.1,
        )])
    }

    fn bands(&self) -> Result<Vec<Check>> {
        let (cells, replicas) = if self.desk() { (1 << 17, 20) } else { (1 << 15, 4) };
        let radii = crate::commands::default_band_radii();

        let stride = stabletree::crt::default_stride(cells);
        let rows = sim::extremal_rows(cells, replicas, &radii, stride, self.seed, 200_000, self.exec)?;
        let (mut inf, mut sup) = (Vec::new(), Vec::new());
        for stats in &rows {
            for s in stats {
                let l = (1.0 / s.r).ln();
                inf.push(s.inf_mass / (s.r * s.r) * l);
                sup.push(s.sup_mass / (s.r * s.r) / l);
            }
        }
        let spread = |v: &[f64]| {
            let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = v.iter().cloned().fold(0.0, f64::max);
            if lo > 0.0 {
                hi / lo
            } else {
                f64::INFINITY
            }
        };
        Ok(vec![
            Check::at_most(
                format!("max/min of inf r^-2 log(1/r), n={cells}, {replicas} replicas"),
                spread(&inf),
                100.0,
            ),
            Check::at_most(
                format!("max/min of sup r^-2 / log(1/r), n={cells}, {replicas} replicas"),
                spread(&sup),
                100.0,
            ),
        ])
    }

    /// A fixed set of small artifacts covering every randomized pipeline.
    fn artifacts(&self, exec: Exec) -> Result<Vec<String>> {
        let b = StableIndex::brownian();
        let series = mstar_series_table()?;
        let mut out = vec![sample_mstar(b, Some(&series), &mut RngStream::new(self.seed, 40), 5_000, exec)?.to_csv()];
        let shells = sample_shell_masses(
            b,
            &[0.3, 0.2, 0.0],
            0.3,
            Some(&series),
            &mut RngStream::new(self.seed, 41),
            2_000,
            exec,
        )?;
        out.extend(shells.iter().map(|s| s.to_csv()));
        let st =
            stabletree::sampler::sample_positive_stable(0.5, 1.0, &mut RngStream::new(self.seed, 42), 3_000, exec)?;
        out.push(st.to_csv());
        let balls = sim::ball_rows(1 << 12, 3, 50, 0.05, self.seed, 43, exec)?;
        out.push(stabletree::crt::ball_mass_csv(&balls, &[]));
        let ext = sim::extremal_rows(1 << 12, 2, &[0.02, 0.05], 4, self.seed, 50, exec)?;
        out.push(sim::extremal_table_csv(&ext, &[]));
        let t = build_cdf_table(
            &TransformHandle::mstar(b),
            0.1,
            4.0,
            24,
            TailModel::MStar(b),
            &InversionOptions::default(),
            exec,
        )?;
        out.push(t.to_csv(&[]));
        Ok(out)
    }

    fn determinism(&self) -> Result<Vec<Check>> {
        let count_diff =
            |x: &[String], y: &[String]| x.iter().zip(y).filter(|(a, b)| a != b).count() + x.len().abs_diff(y.len());
        let seq = self.artifacts(Exec::Sequential)?;
        let par = self.artifacts(Exec::Parallel)?;
        let again = self.artifacts(Exec::Parallel)?;
        #[cfg_attr(not(feature = "parallel"), allow(unused_mut))]
        let mut checks = vec![
            Check::at_most(
                "artifacts differing, sequential vs parallel",
                count_diff(&seq, &par) as f64,
                0.0,
            ),
            Check::at_most(
                "artifacts differing, repeated parallel runs",
                count_diff(&par, &again) as f64,
                0.0,
            ),
        ];
        #[cfg(feature = "parallel")]
        {
            let in_pool = |threads: usize| -> Result<Vec<String>> {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| stabletree::Error::Config(format!("thread pool: {e}")))?
                    .install(|| self.artifacts(Exec::Parallel))
            };
            let one = in_pool(1)?;
            let four = in_pool(4)?;
            checks.push(Check::at_most(
                "artifacts differing, 1 vs 4 threads",
                count_diff(&one, &four) as f64,
                0.0,
            ));
        }
        Ok(checks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_fail_on_nan_and_outside_bounds() {
        assert!(Check::at_most("x", 1.0, 1.0).pass);
        assert!(!Check::at_most("x", 1.0 + 1e-15, 1.0).pass);
        assert!(!Check::at_most("x", f64::NAN, 1.0).pass);
        assert!(Check::between("x", 0.95, 0.9, 1.1).pass);
        assert!(!Check::between("x", 1.2, 0.9, 1.1).pass);
        assert!(max_of([1.0, f64::NAN, 3.0]).is_nan());
        assert_eq!(rel_err(0.0, 0.0), 0.0);
        assert_eq!(rel_err(1.5, 1.0), 0.5);
    }

    #[test]
    fn unknown_criterion_fails_cleanly() {
        let r = Suite::new(Profile::Smoke, 1).run_one(42);
        assert!(!r.pass && r.error.is_some());
    }

    #[test]
    fn fault_breaks_closed_forms_only_where_kappa_is_used() {
        let s = Suite::new(Profile::Smoke, 1).with_faults(vec![Fault::KappaSign]);
        let report = s.run(&[1, 6]);
        assert!(!report.criteria[0].pass);
        assert!(report.criteria[1].pass);
        assert!(!report.passed);
        assert_eq!(
            report.failing(),
            vec!["1 (closed-form agreement of the kappa solver)".to_string()]
        );
    }

    #[test]
    fn report_has_no_timing_fields() {
        let json = Suite::new(Profile::Smoke, 1).run(&[3]).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            ["criteria", "faults", "passed", "profile", "seed", "tool", "version"]
        );
        assert_eq!("DESK".parse::<Profile>().unwrap(), Profile::Desk);
    }
}
