use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use quditmap_core::criteria::{
    octahedron_criterion, octahedron_criterion_optimized, ppt_check, spin_squeezing_all,
    spin_squeezing_check, CriterionReport, SqueezingReport,
};
use quditmap_core::region::{
    classify, classify_sample, grid_points, preferred_mode, sample_physical_points,
    summarize_fraction, Bounds, RegionSample, SpectrumMode, DEFAULT_MARGIN,
};
use quditmap_core::states::{werner_min_alpha, werner_state};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{emit, fmt_num, render_samples, Format};
use crate::state_file::read_state;

#[derive(Debug, Parser)]
#[command(
    name = "quditmap",
    version,
    about = "Entanglement checks for qudits through qubit dichotomization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a grid over the (alpha, beta, gamma) family parameters.
    Scan(ScanArgs),
    /// Sweep Werner states from -1/(d^2-1) to 1.
    Werner(WernerArgs),
    /// Run one criterion on a state file.
    Check(CheckArgs),
    /// Monte Carlo share of NPT and detected points in the physical region.
    DetectedFraction(FractionArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Analytic,
    Numeric,
}

impl From<Mode> for SpectrumMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Analytic => SpectrumMode::Analytic,
            Mode::Numeric => SpectrumMode::Numeric,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub dim: usize,
    /// Grid points per axis.
    #[arg(long, default_value_t = 21)]
    pub resolution: usize,
    /// Defaults to analytic for odd dimensions and numeric otherwise.
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Lower bound of a cubic box; replaces the default tetrahedron box.
    #[arg(long, requires = "hi", allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, requires = "lo", allow_hyphen_values = true)]
    pub hi: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Args)]
pub struct WernerArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Criterion,
    CriterionOpt,
    Ppt,
    Squeeze,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub path: PathBuf,
    #[arg(long, value_enum)]
    pub which: Which,
    /// Subsystem to transpose for `ppt` (0-based; defaults to the last).
    #[arg(long)]
    pub subsystem: Option<usize>,
    /// Axis assignment for `squeeze`, e.g. `0,1,2`; all six by default.
    #[arg(long, value_delimiter = ',')]
    pub permutation: Option<Vec<usize>>,
}

#[derive(Debug, Args)]
pub struct FractionArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
}

/// Verdict of a command; decides the exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Violated,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Violated => 2,
        }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Scan(a) => scan(&a).map(|_| Outcome::Pass),
        Command::Werner(a) => werner(&a).map(|_| Outcome::Pass),
        Command::Check(a) => check(&a),
        Command::DetectedFraction(a) => detected_fraction(&a).map(|_| Outcome::Pass),
    }
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            bail!("--workers must be at least 1");
        }
        b = b.num_threads(n);
    }
    b.build().context("cannot start worker pool")
}

pub fn scan_samples(a: &ScanArgs) -> Result<Vec<RegionSample>> {
    let mode = a
        .mode
        .map(SpectrumMode::from)
        .unwrap_or_else(|| preferred_mode(a.dim));
    quditmap_core::region::check_mode(a.dim, mode)?;
    let bounds = match (a.lo, a.hi) {
        (Some(lo), Some(hi)) => Bounds::cube(lo, hi)?,
        _ => Bounds::tetrahedron(a.dim, DEFAULT_MARGIN)
            .context("no default box for this dimension; pass --lo and --hi")?,
    };
    let points = grid_points(a.dim, &bounds, a.resolution)?;
    let samples = pool(a.workers)?.install(|| {
        points
            .par_iter()
            .map(|p| classify_sample(p, mode))
            .collect::<Result<Vec<_>, _>>()
    })?;
    Ok(samples)
}

pub fn scan(a: &ScanArgs) -> Result<()> {
    let samples = scan_samples(a)?;
    emit(a.out.as_deref(), &render_samples(&samples, a.format))
}

pub fn werner_csv(d: usize, steps: usize) -> Result<String> {
    if steps < 2 {
        bail!("--steps must be at least 2");
    }
    let lo = werner_min_alpha(d);
    let mut out = String::from("alpha,min_pt_eigenvalue,criterion_lhs,detected,npt\n");
    for i in 0..steps {
        let alpha = if i + 1 == steps {
            1.0
        } else {
            lo + (1.0 - lo) * i as f64 / (steps - 1) as f64
        };
        let rho = werner_state(d, alpha)?;
        let ppt = ppt_check(&rho, 1)?;
        let crit = octahedron_criterion(&rho)?;
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            fmt_num(alpha),
            fmt_num(-ppt.lhs),
            fmt_num(crit.normalized_lhs()),
            crit.violated,
            ppt.violated
        ));
    }
    Ok(out)
}

pub fn werner(a: &WernerArgs) -> Result<()> {
    emit(a.out.as_deref(), &werner_csv(a.dim, a.steps)?)
}

#[derive(Debug, Serialize)]
struct SqueezeOutput {
    parties: usize,
    violated: bool,
    reports: Vec<SqueezingReport>,
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(format!("{}\n", serde_json::to_string(value)?))
}

/// Runs the requested check and returns the JSON line plus the verdict.
pub fn check_report(path: &Path, a: &CheckArgs) -> Result<(String, Outcome)> {
    let rho = read_state(path)?;
    let verdict = |violated: bool| {
        if violated {
            Outcome::Violated
        } else {
            Outcome::Pass
        }
    };
    let report = |r: CriterionReport| -> Result<(String, Outcome)> {
        Ok((to_json(&r)?, verdict(r.violated)))
    };
    match a.which {
        Which::Criterion => report(octahedron_criterion(&rho)?),
        Which::CriterionOpt => report(octahedron_criterion_optimized(&rho)?),
        Which::Ppt => {
            let sub = a.subsystem.unwrap_or(rho.dims().len() - 1);
            report(ppt_check(&rho, sub)?)
        }
        Which::Squeeze => {
            let reports = match &a.permutation {
                Some(p) => match p[..] {
                    [a, b, c] => vec![spin_squeezing_check(&rho, [a, b, c])?],
                    _ => bail!("--permutation needs exactly three axes, got {}", p.len()),
                },
                None => spin_squeezing_all(&rho)?,
            };
            let violated = reports.iter().any(|r| r.violated());
            let out = SqueezeOutput {
                parties: rho.dims().len(),
                violated,
                reports,
            };
            Ok((to_json(&out)?, verdict(violated)))
        }
    }
}

pub fn check(a: &CheckArgs) -> Result<Outcome> {
    let (text, outcome) = check_report(&a.path, a)?;
    emit(None, &text)?;
    Ok(outcome)
}

pub fn detected_fraction_json(a: &FractionArgs) -> Result<String> {
    if a.samples < 100 {
        bail!("--samples must be at least 100");
    }
    let mode = preferred_mode(a.dim);
    let points = sample_physical_points(a.dim, a.samples, a.seed)?;
    let classes = pool(a.workers)?.install(|| {
        points
            .par_iter()
            .map(|p| classify(p, mode))
            .collect::<Result<Vec<_>, _>>()
    })?;
    to_json(&summarize_fraction(a.dim, a.seed, &classes))
}

pub fn detected_fraction(a: &FractionArgs) -> Result<()> {
    emit(a.out.as_deref(), &detected_fraction_json(a)?)
}
