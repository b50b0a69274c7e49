//! Command line driver for the random polynomial experiments.
//!
//! Exit codes: 0 success, 2 configuration error, 3 a per-realization bound
//! was violated, 4 more than 0.1% of the solves failed to converge.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use randpoly::bounds::{noniid_bound, thm_main_bound};
use randpoly::harness::{self, CensusSweep, CheckKind, ExperimentConfig, ExperimentRecord};
use randpoly::rootfind::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use randpoly::{Ensemble, Error, RandomStream};

const EXIT_CONFIG: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_SOLVER: u8 = 4;

#[derive(Parser)]
#[command(
    name = "randpoly",
    version,
    about = "Zeros of random polynomials: sampling, experiments, bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print sampled coefficients as CSV (trial,k,re,im).
    Sample(Common),
    /// Expected annular-sector discrepancy against its bound.
    Discrepancy(Common),
    /// Expected zero count in a region.
    Count(Common),
    /// Expected log of the largest coefficient modulus.
    Orderstats(Common),
    /// Mahler measure of unimodular polynomials against ln(n+1)/2 - gamma/2.
    Fielding(Common),
    /// Expected-discrepancy bounds without sampling.
    Bounds(Common),
    /// Check every per-realization inequality on sampled polynomials.
    Verify(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// gaussian, pareto:alpha=<a>, unimodular, disk:K=<k>, exchangeable:s=<s>
    #[arg(long, default_value = "gaussian")]
    ensemble: String,
    /// Comma separated degrees.
    #[arg(long, value_delimiter = ',', default_value = "16,64,256")]
    degrees: Vec<usize>,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Annulus parameter.
    #[arg(long)]
    r: Option<f64>,
    /// Sector start.
    #[arg(long)]
    alpha: Option<f64>,
    /// Sector end.
    #[arg(long)]
    beta: Option<f64>,
    /// Moment order; defaults per ensemble.
    #[arg(long)]
    t: Option<f64>,
    /// Root finder tolerance.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    max_iter: usize,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Region for `count`, e.g. origin-disk:r=0.5, disk@1:r=0.1, square.
    #[arg(long)]
    region: Option<String>,
}

impl Common {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let ensemble: Ensemble = self.ensemble.parse()?;
        let mut c = ExperimentConfig::new(ensemble, self.degrees.clone(), self.trials, self.seed);
        if let Some(r) = self.r {
            c.r = r;
        }
        if let Some(a) = self.alpha {
            c.alpha = a;
        }
        if let Some(b) = self.beta {
            c.beta = b;
        }
        c.t = self.t;
        c.tol = self.tol;
        c.max_iter = self.max_iter;
        c.workers = self.workers;
        Ok(c)
    }

    fn output(&self) -> io::Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(BufWriter::new(io::stdout().lock())),
        })
    }
}

enum Failure {
    Config(Error),
    Violation,
    Solver,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Config(e)
    }
}

fn emit(common: &Common, records: &[ExperimentRecord]) -> Result<(), Failure> {
    harness::write_csv(records, common.output().map_err(Error::from)?)?;
    for r in records.iter().filter(|r| r.flagged()) {
        eprintln!(
            "warning: {} n={} discarded {} of {} trials",
            r.experiment, r.n, r.discarded, r.trials
        );
    }
    if records.iter().any(|r| r.flagged()) {
        return Err(Failure::Solver);
    }
    Ok(())
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Sample(c) => {
            let cfg = c.config()?;
            if cfg.trials < 1 || cfg.degrees.is_empty() {
                return Err(Error::Config("need trials >= 1 and a degree".into()).into());
            }
            let mut w = csv::Writer::from_writer(c.output().map_err(Error::from)?);
            w.write_record(["n", "trial", "k", "re", "im"])
                .map_err(Error::from)?;
            for &n in &cfg.degrees {
                for trial in 0..cfg.trials as u64 {
                    let p = cfg
                        .ensemble
                        .sample_polynomial(n, &RandomStream::new(cfg.seed, trial))?;
                    for (k, z) in p.coeffs().iter().enumerate() {
                        w.write_record([
                            n.to_string(),
                            trial.to_string(),
                            k.to_string(),
                            harness::fmt_float(z.re),
                            harness::fmt_float(z.im),
                        ])
                        .map_err(Error::from)?;
                    }
                }
            }
            w.flush().map_err(Error::from)?;
            Ok(())
        }
        Command::Discrepancy(c) => {
            let report = harness::run_discrepancy(&c.config()?)?;
            emit(&c, &report.records)?;
            eprintln!(
                "census: {} realizations checked, {} violations, {} floored",
                report.checked, report.violations, report.floored
            );
            if report.violations > 0 {
                return Err(Failure::Violation);
            }
            Ok(())
        }
        Command::Count(c) => {
            let region_arg = c
                .region
                .as_deref()
                .ok_or_else(|| Error::Config("count needs --region".into()))?;
            let region = harness::parse_region(region_arg)?;
            emit(&c, &harness::run_zero_count(&c.config()?, &region)?)
        }
        Command::Orderstats(c) => emit(&c, &harness::run_order_stats(&c.config()?)?),
        Command::Fielding(c) => {
            let mut cfg = c.config()?;
            cfg.ensemble = Ensemble::UnimodularUniform;
            emit(&c, &harness::run_fielding(&cfg)?)
        }
        Command::Bounds(c) => {
            let cfg = c.config()?;
            cfg.validate()?;
            let t = cfg.moment_order();
            let mut w = csv::Writer::from_writer(c.output().map_err(Error::from)?);
            w.write_record(["ensemble", "n", "r", "t", "bound"])
                .map_err(Error::from)?;
            for &n in &cfg.degrees {
                let inputs = cfg.ensemble.bound_inputs(n, cfg.r, t)?;
                let b = if cfg.ensemble.is_iid() {
                    thm_main_bound(&inputs)?
                } else {
                    noniid_bound(&inputs)?
                };
                w.write_record([
                    cfg.ensemble.to_string(),
                    n.to_string(),
                    harness::fmt_float(cfg.r),
                    harness::fmt_float(t),
                    harness::fmt_float(b),
                ])
                .map_err(Error::from)?;
            }
            w.flush().map_err(Error::from)?;
            Ok(())
        }
        Command::Verify(c) => {
            let cfg = c.config()?;
            let mut sweep = CensusSweep::default();
            if c.alpha.is_some() || c.beta.is_some() {
                sweep.sectors = vec![(cfg.alpha, cfg.beta)];
            }
            if let Some(r) = c.r {
                sweep.radii = vec![r];
            }
            let report = harness::run_census(&cfg, &sweep)?;
            let mut out = c.output().map_err(Error::from)?;
            let io = |e: io::Error| Failure::Config(e.into());
            writeln!(out, "check,checked").map_err(io)?;
            for kind in CheckKind::ALL {
                writeln!(out, "{},{}", kind.name(), report.checked[kind as usize]).map_err(io)?;
            }
            out.flush().map_err(io)?;
            eprintln!(
                "verify: {} realizations, {} discarded, {} checks, {} violations, {} m+ checks skipped",
                report.realizations,
                report.discarded,
                report.total_checks(),
                report.violations.len(),
                report.skipped_lp
            );
            for v in report.violations.iter().take(20) {
                eprintln!(
                    "violation: {} n={} trial={} lhs={:e} rhs={:e}",
                    v.kind.name(),
                    v.n,
                    v.trial,
                    v.lhs,
                    v.rhs
                );
            }
            if !report.clean() {
                return Err(Failure::Violation);
            }
            let total = report.realizations + report.discarded;
            if report.discarded as f64 > harness::MAX_DISCARD_RATE * total as f64 {
                return Err(Failure::Solver);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Violation) => ExitCode::from(EXIT_VIOLATION),
        Err(Failure::Solver) => ExitCode::from(EXIT_SOLVER),
    }
}
