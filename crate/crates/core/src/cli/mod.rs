//! Argument parsing, run configuration and dispatch for the `rhs` binary.

mod commands;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::fourier::TorusFunction;
use crate::ladder::LadderSpec;
use crate::report::Report;

pub use commands::run_report;

/// Highest seminorm index accepted on the command line.
pub const MAX_K: u32 = 16;
/// Highest polynomial degree accepted by `hermite`.
pub const MAX_HERMITE_DEGREE: usize = 16;
const MAX_LEVELS: usize = 100_000;
const MAX_TERMS: usize = 100_000;
const MAX_CASES: usize = 1_000_000;
const MAX_GRID: usize = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "rhs",
    version,
    about = "Diagnostics for rigged Hilbert space constructions"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// identity, even, or an increasing list of dimensions such as 1:3:7
    #[arg(long, global = true, default_value = "identity")]
    pub ladder: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Tail norms ||x - P_n x|| against closed forms
    Converge {
        /// Geometric family x_n = r^(n-1)
        #[arg(long, conflicts_with = "power", required_unless_present = "power")]
        geometric: Option<f64>,
        /// Power-law family x_n = n^-p
        #[arg(long)]
        power: Option<f64>,
        #[arg(long, default_value_t = 20)]
        levels: usize,
    },
    /// Seeded property suite for the ladder and dual constructions
    Axioms {
        #[arg(long, default_value_t = 1000)]
        cases: usize,
        #[arg(long, hide = true)]
        inject_cocone_fault: bool,
    },
    /// Partial sums of the seminorms q_k
    Seminorm {
        /// geometric, power or fourier
        #[arg(long, default_value = "geometric")]
        family: String,
        /// Ratio r of the geometric family x_n = r^n
        #[arg(long, default_value_t = 0.5)]
        ratio: f64,
        /// Exponent p of the power family x_n = n^-p
        #[arg(long, default_value_t = 1.0)]
        exponent: f64,
        /// Torus function whose interleaved coefficients form the fourier family
        #[arg(long, default_value = "expcos")]
        function: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        #[arg(long, value_delimiter = ',', default_value = "0,1,2")]
        k: Vec<u32>,
        #[arg(long, default_value_t = 60)]
        terms: usize,
    },
    /// Gaussian-weighted orthonormal polynomials and density decay
    Hermite {
        #[arg(long, default_value_t = 4)]
        degree: usize,
        /// ground, first, gaussian or lorentzian
        #[arg(long, default_value = "ground")]
        target: String,
    },
    /// Fourier coefficients on the circle, Parseval and rapid decay
    Fourier {
        /// const, cosine, expcos or sawtooth
        #[arg(long, default_value = "expcos")]
        function: String,
        #[arg(long, default_value_t = 256)]
        grid: usize,
        /// Largest |n| listed in the coefficient table
        #[arg(long, default_value_t = 16)]
        modes: usize,
        #[arg(long, value_delimiter = ',', default_value = "1,2")]
        k: Vec<u32>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConvergeFamily {
    Geometric(f64),
    Power(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceFamily {
    Geometric(f64),
    Power(f64),
    Fourier { function: String, grid: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HermiteTarget {
    /// `exp(-xi^2/4)`
    Ground,
    /// `xi exp(-xi^2/4)`
    First,
    /// `exp(-xi^2/2)`
    Gaussian,
    /// `1 / (1 + xi^2)`
    Lorentzian,
}

impl HermiteTarget {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "ground" => Ok(HermiteTarget::Ground),
            "first" => Ok(HermiteTarget::First),
            "gaussian" => Ok(HermiteTarget::Gaussian),
            "lorentzian" => Ok(HermiteTarget::Lorentzian),
            other => Err(Error::Usage(format!(
                "unknown target '{other}', expected ground, first, gaussian or lorentzian"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HermiteTarget::Ground => "ground",
            HermiteTarget::First => "first",
            HermiteTarget::Gaussian => "gaussian",
            HermiteTarget::Lorentzian => "lorentzian",
        }
    }

    pub fn eval(self, xi: f64) -> f64 {
        match self {
            HermiteTarget::Ground => (-xi * xi / 4.0).exp(),
            HermiteTarget::First => xi * (-xi * xi / 4.0).exp(),
            HermiteTarget::Gaussian => (-xi * xi / 2.0).exp(),
            HermiteTarget::Lorentzian => 1.0 / (1.0 + xi * xi),
        }
    }
}

/// A validated job.
#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Converge {
        family: ConvergeFamily,
        levels: usize,
    },
    Axioms {
        cases: usize,
        inject_cocone_fault: bool,
    },
    Seminorm {
        family: SequenceFamily,
        ks: Vec<u32>,
        terms: usize,
    },
    Hermite {
        degree: usize,
        target: HermiteTarget,
    },
    Fourier {
        function: String,
        grid: usize,
        modes: usize,
        ks: Vec<u32>,
    },
}

/// Everything a run needs, checked before any computation starts.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub ladder: LadderSpec,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub job: Job,
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

fn check_ratio(r: f64) -> Result<f64> {
    if r.is_finite() && r > 0.0 && r < 1.0 {
        Ok(r)
    } else {
        Err(usage(format!(
            "geometric ratio {r} must lie in (0, 1) for the sequence r^n to be square-summable"
        )))
    }
}

fn check_exponent(p: f64) -> Result<f64> {
    if p.is_finite() && p > 0.5 {
        Ok(p)
    } else {
        Err(usage(format!(
            "power-law exponent {p} must exceed 1/2 for the sequence n^-p to be square-summable"
        )))
    }
}

fn check_grid(grid: usize) -> Result<usize> {
    if (64..=MAX_GRID).contains(&grid) && grid.is_power_of_two() {
        Ok(grid)
    } else {
        Err(usage(format!(
            "grid {grid} must be a power of two between 64 and {MAX_GRID}"
        )))
    }
}

fn check_function(name: &str) -> Result<String> {
    TorusFunction::named(name).map(|_| name.to_string())
}

fn check_ks(ks: &[u32]) -> Result<Vec<u32>> {
    if ks.is_empty() {
        return Err(usage("the k list must not be empty"));
    }
    if let Some(k) = ks.iter().find(|&&k| k > MAX_K) {
        return Err(usage(format!(
            "seminorm index {k} exceeds the maximum {MAX_K}"
        )));
    }
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    Ok(ks)
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let ladder: LadderSpec =
            cli.common.ladder.parse().map_err(|e: Error| {
                usage(format!("invalid ladder '{}': {e}", cli.common.ladder))
            })?;
        let job = match &cli.command {
            Command::Converge {
                geometric,
                power,
                levels,
            } => {
                let family = match (geometric, power) {
                    (Some(r), None) => ConvergeFamily::Geometric(check_ratio(*r)?),
                    (None, Some(p)) => ConvergeFamily::Power(check_exponent(*p)?),
                    _ => return Err(usage("choose exactly one of --geometric and --power")),
                };
                let max = ladder.max_level().unwrap_or(MAX_LEVELS).min(MAX_LEVELS);
                if *levels == 0 || *levels > max {
                    return Err(usage(format!("levels must lie in 1..={max}")));
                }
                Job::Converge {
                    family,
                    levels: *levels,
                }
            }
            Command::Axioms {
                cases,
                inject_cocone_fault,
            } => {
                if *cases == 0 || *cases > MAX_CASES {
                    return Err(usage(format!("cases must lie in 1..={MAX_CASES}")));
                }
                Job::Axioms {
                    cases: *cases,
                    inject_cocone_fault: *inject_cocone_fault,
                }
            }
            Command::Seminorm {
                family,
                ratio,
                exponent,
                function,
                grid,
                k,
                terms,
            } => {
                let family = match family.as_str() {
                    "geometric" => SequenceFamily::Geometric(check_ratio(*ratio)?),
                    "power" => SequenceFamily::Power(check_exponent(*exponent)?),
                    "fourier" => SequenceFamily::Fourier {
                        function: check_function(function)?,
                        grid: check_grid(*grid)?,
                    },
                    other => {
                        return Err(usage(format!(
                            "unknown family '{other}', expected geometric, power or fourier"
                        )))
                    }
                };
                let max = match &family {
                    SequenceFamily::Fourier { grid, .. } => grid - 1,
                    _ => MAX_TERMS,
                };
                if *terms == 0 || *terms > max {
                    return Err(usage(format!("terms must lie in 1..={max}")));
                }
                Job::Seminorm {
                    family,
                    ks: check_ks(k)?,
                    terms: *terms,
                }
            }
            Command::Hermite { degree, target } => {
                if *degree > MAX_HERMITE_DEGREE {
                    return Err(usage(format!(
                        "degree {degree} exceeds the supported bound {MAX_HERMITE_DEGREE}"
                    )));
                }
                Job::Hermite {
                    degree: *degree,
                    target: HermiteTarget::parse(target)?,
                }
            }
            Command::Fourier {
                function,
                grid,
                modes,
                k,
            } => {
                let grid = check_grid(*grid)?;
                if *modes >= grid / 2 {
                    return Err(usage(format!(
                        "modes {modes} must be below half the grid ({})",
                        grid / 2
                    )));
                }
                Job::Fourier {
                    function: check_function(function)?,
                    grid,
                    modes: *modes,
                    ks: check_ks(k)?,
                }
            }
        };
        Ok(RunConfig {
            ladder,
            format: cli.common.format,
            out: cli.common.out.clone(),
            seed: cli.common.seed,
            job,
        })
    }

    pub fn command_name(&self) -> &'static str {
        match self.job {
            Job::Converge { .. } => "converge",
            Job::Axioms { .. } => "axioms",
            Job::Seminorm { .. } => "seminorm",
            Job::Hermite { .. } => "hermite",
            Job::Fourier { .. } => "fourier",
        }
    }
}

/// Renders the report in the configured format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    }
}

fn emit(config: &RunConfig, text: &str) -> io::Result<()> {
    match &config.out {
        Some(path) => fs::write(path, text),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()
        }
    }
}

/// Entry point of the binary. Exit status is 0 when every asserted property
/// passed, 1 when one failed or the run errored, and 2 on usage errors.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let config = match RunConfig::from_cli(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let report = match run_report(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&config, &render(&report, config.format)) {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(1);
    }
    if report.pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
