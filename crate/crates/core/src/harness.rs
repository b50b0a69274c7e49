//! Monte Carlo experiments comparing root statistics of random polynomials
//! with their theoretical bounds.
//!
//! Trial `i` of every experiment draws its coefficients from
//! `RandomStream::new(seed, i)`, results are collected into a buffer indexed
//! by trial, and reductions run sequentially in trial order. Output is thus
//! a pure function of the configuration and seed, whatever the worker
//! count.

use std::f64::consts::{PI, TAU};
use std::io::Write;

use num_complex::Complex;
use rayon::prelude::*;

use crate::bounds::{
    compact_set_bound, disk_count_main_term, et_ganelius_bound, jensen_disk_bounds_with_roots,
    mignotte_annular_bound_with_roots, mplus_upper_from_lp, noniid_bound, thm_main_bound,
};
use crate::constants::EULER_GAMMA;
use crate::measure::{self, Region};
use crate::poly::{log_mahler_from_roots, CircleGrid};
use crate::rootfind::{find_roots, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::{Ensemble, Error, Polynomial, RandomStream, Result};

/// Exact CSV header of every experiment file.
pub const CSV_HEADER: [&str; 11] = [
    "experiment",
    "ensemble",
    "n",
    "trials",
    "trials_used",
    "discarded",
    "mean",
    "stderr",
    "bound",
    "ratio",
    "seed",
];

/// Largest tolerated fraction of discarded (non-converged) solves.
pub const MAX_DISCARD_RATE: f64 = 0.001;

/// Additive slack on the bound side of every per-realization inequality.
pub const BOUND_SLACK: f64 = 1e-6;

/// Angular constant `C` of the sector covering for inscribed polygons; the
/// polygon reference column is `C sqrt(n ln n)`.
pub const POLYGON_COVER_CONSTANT: f64 = PI;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub ensemble: Ensemble,
    pub degrees: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Sector `[alpha, beta)` in radians.
    pub alpha: f64,
    pub beta: f64,
    /// Annulus parameter.
    pub r: f64,
    /// Moment order for the bounds; `None` picks the ensemble default.
    pub t: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
    /// Worker threads; 1 runs on the calling thread.
    pub workers: usize,
    /// Check the annular-sector inequality for every realization.
    pub census: bool,
}

impl ExperimentConfig {
    pub fn new(ensemble: Ensemble, degrees: Vec<usize>, trials: usize, seed: u64) -> Self {
        Self {
            ensemble,
            degrees,
            trials,
            seed,
            alpha: 0.0,
            beta: PI / 2.0,
            r: 0.5,
            t: None,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            workers: 1,
            census: true,
        }
    }

    pub fn moment_order(&self) -> f64 {
        self.t.unwrap_or_else(|| self.ensemble.default_moment_order())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        if self.degrees.is_empty() {
            return Err(Error::Config("degree list is empty".into()));
        }
        if let Some(n) = self.degrees.iter().find(|&&n| n < 2) {
            return Err(Error::Config(format!("degree {n} < 2")));
        }
        if !(self.tol > 0.0) || self.max_iter == 0 {
            return Err(Error::Config("solver tol and max_iter must be positive".into()));
        }
        Region::annular_sector(self.r, self.alpha, self.beta).map_err(|e| Error::Config(e.to_string()))?;
        let t = self.moment_order();
        let mu = self
            .ensemble
            .moment_t(t)
            .map_err(|e| Error::Config(e.to_string()))?;
        if !mu.is_finite() {
            return Err(Error::Config(format!(
                "E|C|^{t} is infinite for {}",
                self.ensemble
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub ensemble: String,
    pub n: usize,
    pub trials: usize,
    pub trials_used: usize,
    pub discarded: usize,
    pub mean: f64,
    pub stderr: f64,
    pub bound: f64,
    pub ratio: f64,
    pub seed: u64,
}

impl ExperimentRecord {
    fn from_values(
        experiment: &str,
        ensemble: &Ensemble,
        n: usize,
        seed: u64,
        trials: usize,
        values: &[f64],
        bound: f64,
    ) -> Self {
        let (mean, stderr) = mean_stderr(values);
        Self {
            experiment: experiment.to_string(),
            ensemble: ensemble.to_string(),
            n,
            trials,
            trials_used: values.len(),
            discarded: trials - values.len(),
            mean,
            stderr,
            bound,
            ratio: mean / bound,
            seed,
        }
    }

    /// More than 0.1% of the solves were discarded.
    pub fn flagged(&self) -> bool {
        self.discarded as f64 > MAX_DISCARD_RATE * self.trials as f64
    }

    fn csv_row(&self) -> [String; 11] {
        [
            self.experiment.clone(),
            self.ensemble.clone(),
            self.n.to_string(),
            self.trials.to_string(),
            self.trials_used.to_string(),
            self.discarded.to_string(),
            fmt_float(self.mean),
            fmt_float(self.stderr),
            fmt_float(self.bound),
            fmt_float(self.ratio),
            self.seed.to_string(),
        ]
    }
}

/// 17 significant digits: enough to round-trip any `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Sample mean and `sd / sqrt(k)`, summed in the given order.
pub fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let k = values.len();
    if k == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / k as f64;
    if k == 1 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    (mean, (var / k as f64).sqrt())
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_csv_string(records: &[ExperimentRecord]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(records, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Runs `f(trial)` for every trial and returns the results in trial order.
fn run_trials<R, F>(workers: usize, trials: usize, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(u64) -> R + Sync + Send,
{
    if workers <= 1 {
        return Ok((0..trials as u64).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    Ok(pool.install(|| (0..trials as u64).into_par_iter().map(f).collect()))
}

/// Sampled polynomial with converged roots, or `None` for a discarded solve.
fn solve_trial(
    ensemble: &Ensemble,
    n: usize,
    stream: &RandomStream,
    tol: f64,
    max_iter: usize,
) -> Result<Option<(Polynomial, Vec<Complex<f64>>)>> {
    let p = ensemble.sample_polynomial(n, stream)?;
    let roots = find_roots(&p, tol, max_iter)?;
    if !roots.converged() {
        return Ok(None);
    }
    let roots = roots.roots().to_vec();
    Ok(Some((p, roots)))
}

fn expected_discrepancy_bound(config: &ExperimentConfig, n: usize) -> Result<f64> {
    let inputs = config.ensemble.bound_inputs(n, config.r, config.moment_order())?;
    if config.ensemble.is_iid() {
        thm_main_bound(&inputs)
    } else {
        noniid_bound(&inputs)
    }
}

/// Discrepancy of one realization and, with the census on, whether it
/// broke the per-polynomial bound and whether `m` was floored.
type DiscrepancyTrial = (f64, Option<(bool, bool)>);

/// Output of [`run_discrepancy`].
#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub records: Vec<ExperimentRecord>,
    /// Realizations whose annular discrepancy was checked against the
    /// per-polynomial bound, and how many of them exceeded it.
    pub checked: usize,
    pub violations: usize,
    /// Realizations where the quadrature `m` of the normalized polynomial
    /// came out negative and was floored.
    pub floored: usize,
}

/// Expected annular-sector discrepancy against the iid (or, for the
/// exchangeable ensemble, non-iid) bound, one record per degree.
pub fn run_discrepancy(config: &ExperimentConfig) -> Result<DiscrepancyReport> {
    config.validate()?;
    let mut report = DiscrepancyReport {
        records: Vec::new(),
        checked: 0,
        violations: 0,
        floored: 0,
    };
    for &n in &config.degrees {
        let grid = CircleGrid::for_degree(n);
        let outcomes = run_trials(
            config.workers,
            config.trials,
            |trial| -> Result<Option<DiscrepancyTrial>> {
                let stream = RandomStream::new(config.seed, trial);
                let Some((p, roots)) =
                    solve_trial(&config.ensemble, n, &stream, config.tol, config.max_iter)?
                else {
                    return Ok(None);
                };
                let disc = measure::annular_discrepancy(&roots, config.r, config.alpha, config.beta)?;
                let census = if config.census {
                    let b = mignotte_annular_bound_with_roots(&p, &roots, config.r, &grid)?;
                    Some((disc > b.total() + BOUND_SLACK, b.floored))
                } else {
                    None
                };
                Ok(Some((disc, census)))
            },
        )?;
        let mut values = Vec::with_capacity(config.trials);
        for o in outcomes {
            if let Some((disc, census)) = o? {
                values.push(disc);
                if let Some((violated, floored)) = census {
                    report.checked += 1;
                    report.violations += usize::from(violated);
                    report.floored += usize::from(floored);
                }
            }
        }
        let bound = expected_discrepancy_bound(config, n)?;
        report.records.push(ExperimentRecord::from_values(
            "discrepancy",
            &config.ensemble,
            n,
            config.seed,
            config.trials,
            &values,
            bound,
        ));
    }
    Ok(report)
}

/// Reference value for the expected zero count in `region` at degree `n`.
pub fn zero_count_reference(config: &ExperimentConfig, region: &Region<f64>, n: usize) -> Result<f64> {
    match region {
        Region::ClosedOriginDisk { r } => {
            if *r >= 1.0 {
                return Err(Error::Config("origin disk must lie inside the unit disk".into()));
            }
            let inputs = config
                .ensemble
                .bound_inputs(n, config.r, config.moment_order())?
                .with_distance(1.0 - r);
            compact_set_bound(&inputs)
        }
        Region::PointDisk { r, .. } => disk_count_main_term(n, *r),
        Region::InscribedPolygon { .. } => {
            let nf = n as f64;
            Ok(POLYGON_COVER_CONSTANT * (nf * nf.ln()).sqrt())
        }
        _ => Err(Error::Config(
            "zero counts need an origin disk, a disk on the circle, or an inscribed polygon".into(),
        )),
    }
}

/// Expected number of zeros `n tau_n(region)`, one record per degree.
pub fn run_zero_count(config: &ExperimentConfig, region: &Region<f64>) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let mut records = Vec::new();
    for &n in &config.degrees {
        let bound = zero_count_reference(config, region, n)?;
        let outcomes = run_trials(config.workers, config.trials, |trial| -> Result<Option<f64>> {
            let stream = RandomStream::new(config.seed, trial);
            Ok(
                solve_trial(&config.ensemble, n, &stream, config.tol, config.max_iter)?
                    .map(|(_, roots)| measure::count(&roots, region) as f64),
            )
        })?;
        let values = outcomes
            .into_iter()
            .filter_map(|o| o.transpose())
            .collect::<Result<Vec<_>>>()?;
        records.push(ExperimentRecord::from_values(
            "count",
            &config.ensemble,
            n,
            config.seed,
            config.trials,
            &values,
            bound,
        ));
    }
    Ok(records)
}

/// `ln max_k |C_k|` per trial, compared with `(1/t)(ln(n+1) + ln E|C|^t)`
/// (experiment `orderstats`) and, where known, with the exact expectation
/// (experiment `orderstats-exact`). No roots are computed.
pub fn run_order_stats(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    if config.trials < 1 || config.degrees.is_empty() {
        return Err(Error::Config("need trials >= 1 and a degree".into()));
    }
    let t = config.moment_order();
    let mut records = Vec::new();
    for &n in &config.degrees {
        let bound = config
            .ensemble
            .expected_log_max_bound(n, t)
            .map_err(|e| Error::Config(e.to_string()))?;
        let values = run_trials(config.workers, config.trials, |trial| -> Result<f64> {
            let p = config
                .ensemble
                .sample_polynomial(n, &RandomStream::new(config.seed, trial))?;
            Ok(p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max).ln())
        })?
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
        records.push(ExperimentRecord::from_values(
            "orderstats",
            &config.ensemble,
            n,
            config.seed,
            config.trials,
            &values,
            bound,
        ));
        if let Some(exact) = config.ensemble.exact_log_max(n) {
            records.push(ExperimentRecord::from_values(
                "orderstats-exact",
                &config.ensemble,
                n,
                config.seed,
                config.trials,
                &values,
                exact,
            ));
        }
    }
    Ok(records)
}

/// `ln(n+1)/2 - gamma/2`, the two leading terms of `E ln M(P_n)` for
/// unimodular coefficients.
pub fn fielding_reference(n: usize) -> f64 {
    0.5 * (n as f64 + 1.0).ln() - EULER_GAMMA / 2.0
}

/// `ln M(P_n)` from the roots for unimodular coefficients, one record per
/// degree; the bound column holds [`fielding_reference`].
pub fn run_fielding(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    if let Some(n) = config.degrees.iter().find(|&&n| n < 16) {
        return Err(Error::Config(format!("fielding check needs n >= 16, got {n}")));
    }
    let ensemble = Ensemble::UnimodularUniform;
    let mut records = Vec::new();
    for &n in &config.degrees {
        let outcomes = run_trials(config.workers, config.trials, |trial| -> Result<Option<f64>> {
            let stream = RandomStream::new(config.seed, trial);
            match solve_trial(&ensemble, n, &stream, config.tol, config.max_iter)? {
                Some((p, roots)) => Ok(Some(log_mahler_from_roots(p.leading(), &roots)?)),
                None => Ok(None),
            }
        })?;
        let values = outcomes
            .into_iter()
            .filter_map(|o| o.transpose())
            .collect::<Result<Vec<_>>>()?;
        records.push(ExperimentRecord::from_values(
            "fielding",
            &ensemble,
            n,
            config.seed,
            config.trials,
            &values,
            fielding_reference(n),
        ));
    }
    Ok(records)
}

pub fn run_fielding_check(n: usize, trials: usize, seed: u64) -> Result<ExperimentRecord> {
    let config = ExperimentConfig::new(Ensemble::UnimodularUniform, vec![n], trials, seed);
    Ok(run_fielding(&config)?.remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub n: usize,
    pub mean: f64,
    /// `mean sqrt(n / ln(n+1))`.
    pub scaled: f64,
    /// `bound sqrt(n / ln(n+1))`.
    pub scaled_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecayTable {
    pub rows: Vec<DecayRow>,
    /// max/min of the scaled column.
    pub spread: f64,
}

impl DecayTable {
    pub const MAX_SPREAD: f64 = 3.0;

    /// The scaled means vary by at most a factor of 3 across the grid.
    pub fn consistent(&self) -> bool {
        self.spread <= Self::MAX_SPREAD
    }
}

/// Rescales discrepancy means by `sqrt(n / ln(n+1))`; a bounded spread
/// across degrees confirms the `sqrt(ln n / n)` rate.
pub fn decay_rate_summary(records: &[ExperimentRecord]) -> Result<DecayTable> {
    if records.len() < 3 {
        return Err(Error::Config("decay summary needs at least 3 degrees".into()));
    }
    let rows: Vec<DecayRow> = records
        .iter()
        .map(|r| {
            let n = r.n as f64;
            let s = (n / (n + 1.0).ln()).sqrt();
            DecayRow {
                n: r.n,
                mean: r.mean,
                scaled: r.mean * s,
                scaled_bound: r.bound * s,
            }
        })
        .collect();
    let max = rows.iter().map(|r| r.scaled).fold(f64::MIN, f64::max);
    let min = rows.iter().map(|r| r.scaled).fold(f64::MAX, f64::min);
    Ok(DecayTable {
        rows,
        spread: max / min,
    })
}

/// Which per-realization inequality a census check belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    /// Sector discrepancy against the sup-norm bound.
    Sector,
    /// Annular-sector discrepancy against the `m^+`/`m` bound.
    AnnularSector,
    /// `m^+(P) <= ln ||P||_p + 1/(e p)`.
    MplusLp,
    /// Roots in the closed disk `|z| <= r`.
    JensenInner,
    /// Roots in `|z| >= 1/r`.
    JensenOuter,
    /// Annular pieces and the annulus complement count every root once.
    Conservation,
}

impl CheckKind {
    pub const ALL: [CheckKind; 6] = [
        CheckKind::Sector,
        CheckKind::AnnularSector,
        CheckKind::MplusLp,
        CheckKind::JensenInner,
        CheckKind::JensenOuter,
        CheckKind::Conservation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Sector => "sector",
            CheckKind::AnnularSector => "annular-sector",
            CheckKind::MplusLp => "mplus-lp",
            CheckKind::JensenInner => "jensen-inner",
            CheckKind::JensenOuter => "jensen-outer",
            CheckKind::Conservation => "conservation",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub kind: CheckKind,
    pub n: usize,
    pub trial: u64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Parameters swept per realization by [`run_census`].
#[derive(Debug, Clone, PartialEq)]
pub struct CensusSweep {
    pub sectors: Vec<(f64, f64)>,
    pub radii: Vec<f64>,
    pub orders: Vec<f64>,
}

impl Default for CensusSweep {
    fn default() -> Self {
        Self {
            sectors: vec![(0.0, PI / 2.0), (1.0, 4.0)],
            radii: vec![0.5, 0.9],
            orders: vec![1.0, 2.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CensusReport {
    pub realizations: usize,
    pub discarded: usize,
    /// Checks performed per kind, in [`CheckKind::ALL`] order.
    pub checked: [usize; 6],
    /// `m^+` checks skipped because `||P||_p < 1`.
    pub skipped_lp: usize,
    pub floored: usize,
    pub violations: Vec<Violation>,
}

impl CensusReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn total_checks(&self) -> usize {
        self.checked.iter().sum()
    }
}

#[derive(Default)]
struct TrialCensus {
    checked: [usize; 6],
    skipped_lp: usize,
    floored: usize,
    violations: Vec<Violation>,
}

impl TrialCensus {
    fn check(&mut self, kind: CheckKind, n: usize, trial: u64, lhs: f64, rhs: f64) {
        self.checked[kind as usize] += 1;
        if !(lhs <= rhs + BOUND_SLACK) {
            self.violations.push(Violation {
                kind,
                n,
                trial,
                lhs,
                rhs,
            });
        }
    }
}

/// Checks every deterministic inequality on each sampled polynomial.
pub fn run_census(config: &ExperimentConfig, sweep: &CensusSweep) -> Result<CensusReport> {
    config.validate()?;
    for &(a, b) in &sweep.sectors {
        Region::sector(a, b).map_err(|e| Error::Config(e.to_string()))?;
    }
    for &r in &sweep.radii {
        Region::annulus_complement(r).map_err(|e| Error::Config(e.to_string()))?;
    }
    let mut report = CensusReport::default();
    for &n in &config.degrees {
        let grid = CircleGrid::for_degree(n);
        let outcomes = run_trials(
            config.workers,
            config.trials,
            |trial| -> Result<Option<TrialCensus>> {
                let stream = RandomStream::new(config.seed, trial);
                let Some((p, roots)) =
                    solve_trial(&config.ensemble, n, &stream, config.tol, config.max_iter)?
                else {
                    return Ok(None);
                };
                census_one(&p, &roots, n, trial, sweep, &grid).map(Some)
            },
        )?;
        for o in outcomes {
            match o? {
                None => report.discarded += 1,
                Some(t) => {
                    report.realizations += 1;
                    for (a, b) in report.checked.iter_mut().zip(t.checked) {
                        *a += b;
                    }
                    report.skipped_lp += t.skipped_lp;
                    report.floored += t.floored;
                    report.violations.extend(t.violations);
                }
            }
        }
    }
    Ok(report)
}

fn census_one(
    p: &Polynomial,
    roots: &[Complex<f64>],
    n: usize,
    trial: u64,
    sweep: &CensusSweep,
    grid: &CircleGrid,
) -> Result<TrialCensus> {
    let mut out = TrialCensus::default();
    let et = et_ganelius_bound(p, grid)?;
    for &(a, b) in &sweep.sectors {
        let d = measure::sector_discrepancy(roots, a, b)?;
        out.check(CheckKind::Sector, n, trial, d, et);
    }
    for &r in &sweep.radii {
        let mb = mignotte_annular_bound_with_roots(p, roots, r, grid)?;
        out.floored += usize::from(mb.floored);
        for &(a, b) in &sweep.sectors {
            let d = measure::annular_discrepancy(roots, r, a, b)?;
            out.check(CheckKind::AnnularSector, n, trial, d, mb.total());
            conservation(&mut out, roots, r, a, b, n, trial)?;
        }
        let (inner, outer) = jensen_disk_bounds_with_roots(p, roots, r)?;
        let nf = roots.len() as f64;
        let tau_in = roots.iter().filter(|z| z.norm() <= r).count() as f64 / nf;
        let tau_out = roots.iter().filter(|z| z.norm() >= 1.0 / r).count() as f64 / nf;
        out.check(CheckKind::JensenInner, n, trial, tau_in, inner);
        out.check(CheckKind::JensenOuter, n, trial, tau_out, outer);
    }
    let mplus = p.log_mahler_plus(grid)?;
    for &order in &sweep.orders {
        match mplus_upper_from_lp(p, order, grid) {
            Ok(upper) => out.check(CheckKind::MplusLp, n, trial, mplus, upper),
            Err(Error::NormBelowOne { .. }) => out.skipped_lp += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn conservation(
    out: &mut TrialCensus,
    roots: &[Complex<f64>],
    r: f64,
    a: f64,
    b: f64,
    n: usize,
    trial: u64,
) -> Result<()> {
    let mut pieces = vec![Region::annular_sector(r, a, b)?, Region::annulus_complement(r)?];
    if a > 0.0 {
        pieces.push(Region::annular_sector(r, 0.0, a)?);
    }
    if b < TAU {
        pieces.push(Region::annular_sector(r, b, TAU)?);
    }
    let total: usize = pieces.iter().map(|g| measure::count(roots, g)).sum();
    let lhs = (total as f64 - roots.len() as f64).abs();
    out.check(CheckKind::Conservation, n, trial, lhs, 0.0);
    Ok(())
}

/// Parses a region:
/// `origin-disk:r=<v>`, `disk@<re>[,<im>]:r=<v>`, `polygon:<t1>,<t2>,...`,
/// `square`, `sector:<alpha>,<beta>`, `annular:r=<v>,<alpha>,<beta>`,
/// `annulus-complement:r=<v>`.
pub fn parse_region(input: &str) -> Result<Region<f64>> {
    let bad = |reason: String| Error::Parse {
        what: "region",
        input: input.to_string(),
        reason,
    };
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| bad(format!("`{s}`: {e}")));
    let radius = |s: &str| -> Result<f64> {
        let v = s
            .trim()
            .strip_prefix("r=")
            .ok_or_else(|| bad("expected r=<value>".into()))?;
        num(v)
    };
    let list = |s: &str| -> Result<Vec<f64>> { s.split(',').map(num).collect() };
    let wrap = |e: Error| bad(e.to_string());

    if input.trim() == "square" {
        return Ok(Region::inscribed_square());
    }
    let (head, rest) = input
        .split_once(':')
        .ok_or_else(|| bad("expected <kind>:<params>".into()))?;
    if let Some(center) = head.strip_prefix("disk@") {
        let c = list(center)?;
        let w = match c.as_slice() {
            [re] => Complex::new(*re, 0.0),
            [re, im] => Complex::new(*re, *im),
            _ => return Err(bad("center is <re> or <re>,<im>".into())),
        };
        return Region::point_disk(w, radius(rest)?).map_err(wrap);
    }
    match head.trim() {
        "origin-disk" => Region::closed_origin_disk(radius(rest)?).map_err(wrap),
        "annulus-complement" => Region::annulus_complement(radius(rest)?).map_err(wrap),
        "polygon" => Region::inscribed_polygon(list(rest)?).map_err(wrap),
        "sector" => match list(rest)?.as_slice() {
            [a, b] => Region::sector(*a, *b).map_err(wrap),
            _ => Err(bad("sector takes <alpha>,<beta>".into())),
        },
        "annular" => {
            let parts: Vec<&str> = rest.split(',').collect();
            match parts.as_slice() {
                [r, a, b] => Region::annular_sector(radius(r)?, num(a)?, num(b)?).map_err(wrap),
                _ => Err(bad("annular takes r=<v>,<alpha>,<beta>".into())),
            }
        }
        other => Err(bad(format!("unknown region kind `{other}`"))),
    }
}
