//! `tpl`: evaluate, sample, simulate and verify tempered positive Linnik
//! laws and processes.
//!
//! Exit codes: 0 success, 1 validation error, 2 runtime error, 3 failed
//! verification.

mod commands;
mod config;
mod svg;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tpl", version, about = "Tempered positive Linnik laws and processes")]
pub struct Cli {
    /// Flat `key = value` file of defaults for the subcommand's flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate an analytic function over an argument grid.
    #[command(allow_negative_numbers = true)]
    Eval(EvalArgs),
    /// Draw i.i.d. variates from a law.
    #[command(allow_negative_numbers = true)]
    Sample(SampleArgs),
    /// Simulate process paths or multivariate ensembles.
    #[command(allow_negative_numbers = true)]
    Simulate(SimulateArgs),
    /// Run the Monte Carlo verification suite.
    Verify(VerifyArgs),
}

/// Law parameters; which ones are needed depends on the law.
#[derive(Debug, Clone, Default, Args)]
pub struct LawArgs {
    /// Index γ of TPL/TPS laws.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Scale λ.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Shape δ.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Tempering θ.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Order a of Mittag-Leffler functions and LML/TML laws.
    #[arg(long)]
    pub a: Option<f64>,
    /// Mittag-Leffler parameter b.
    #[arg(long)]
    pub b: Option<f64>,
    /// Prabhakar parameter of Mittag-Leffler functions, or LML/TML parameter c.
    #[arg(long)]
    pub c: Option<f64>,
    /// Negative binomial π.
    #[arg(long)]
    pub pi: Option<f64>,
    /// Negative binomial κ.
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Negative binomial lattice step α; the mean-reversion rate for `ou`.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Negative binomial drift μ.
    #[arg(long)]
    pub mu: Option<f64>,
    /// Gamma shape.
    #[arg(long)]
    pub shape: Option<f64>,
    /// Gamma rate.
    #[arg(long)]
    pub rate: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    MittagLeffler,
    TplLaplace,
    TplExponent,
    TplPdf,
    TplLevyDensity,
    TplCumulant,
    TpsLaplace,
    TpsPdf,
    TpsPotentialDensity,
    LmlPdf,
    LmlCdf,
    LmlLaplace,
    TmlPdf,
    TmlCdf,
    TmlLaplace,
    NbLaplace,
    GammaPdf,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: EvalFn,
    #[command(flatten)]
    pub law: LawArgs,
    /// Mittag-Leffler arguments.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Vec<f64>,
    /// Transform arguments.
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<f64>,
    /// Density arguments.
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<f64>,
    /// Cumulant orders.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u32>,
    /// Killing rate of the potential density.
    #[arg(long)]
    pub q: Option<f64>,
    /// Time at which transforms are taken.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// Output file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Law {
    Tpl,
    Tps,
    PositiveStable,
    Lml,
    Tml,
    Nb,
    Gamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum TmlMethodArg {
    #[default]
    InverseCdf,
    Mixture,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    pub law: Law,
    #[command(flatten)]
    pub law_args: LawArgs,
    /// Number of variates.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Time argument of TPL/TPS/NB laws.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// TML sampling method.
    #[arg(long, value_enum, default_value_t = TmlMethodArg::InverseCdf)]
    pub method: TmlMethodArg,
    #[arg(long, env = "TPL_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Process {
    TplLevy,
    Nb,
    Ou,
    Sato,
    Mv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// Coupled OU pair, γ = 0.7 against γ = 1.
    Fig1,
    /// 5000 draws from the bivariate MINUS scenario.
    Fig2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum RepArg {
    #[default]
    GammaTps,
    CppLml,
    NbGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum SchemeArg {
    #[default]
    Exact,
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Svg,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Svg => "svg",
        })
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(required_unless_present = "preset", conflicts_with = "preset")]
    pub process: Option<Process>,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[command(flatten)]
    pub law: LawArgs,
    /// Horizon of the time grid.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Number of grid cells.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Number of independent paths, one column each.
    #[arg(long, default_value_t = 1)]
    pub paths: usize,
    /// Representation of `tpl-levy` increments.
    #[arg(long, value_enum, default_value_t = RepArg::GammaTps)]
    pub rep: RepArg,
    /// OU discretisation.
    #[arg(long, value_enum, default_value_t = SchemeArg::Exact)]
    pub scheme: SchemeArg,
    /// OU start value; stationary start if absent.
    #[arg(long)]
    pub x0: Option<f64>,
    /// Hurst index of the Sato process.
    #[arg(long)]
    pub h: Option<f64>,
    /// Sato small-jump truncation level.
    #[arg(long, default_value_t = 1e-4)]
    pub eps: f64,
    /// Multivariate marginal `gamma,lambda,theta`; repeat per component.
    #[arg(long, allow_hyphen_values = true)]
    pub marginal: Vec<String>,
    /// Rows of a multivariate ensemble.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Time of a multivariate ensemble.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    /// `svg` also writes a chart next to the CSV given by `--out`.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, env = "TPL_SEED", default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Run with n = 10^4 instead of 10^5.
    #[arg(long)]
    pub quick: bool,
    /// Sample size per check; overrides `--quick`.
    #[arg(long)]
    pub n: Option<usize>,
    /// Plant a defect in the battery; the suite must then fail.
    #[arg(long)]
    pub planted_defect: bool,
    #[arg(long, env = "TPL_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Report file; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A caller error; exits with status 1.
#[derive(Debug)]
pub struct Usage(pub String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn exit_status(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if cause.downcast_ref::<Usage>().is_some() {
            return 1;
        }
        if let Some(t) = cause.downcast_ref::<tpl::TplError>() {
            return if t.is_validation() { 1 } else { 2 };
        }
    }
    2
}

fn run(mut argv: Vec<String>) -> Result<u8> {
    let (config_path, subcommand) = config::scan(&argv);
    if let Some(path) = config_path {
        let entries = config::load(path.as_ref()).map_err(|e| usage(format!("{e:#}")))?;
        config::inject(&mut argv, &entries, &Cli::command(), subcommand.as_deref().unwrap_or(""))
            .map_err(|e| usage(format!("{e:#}")))?;
    }
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return Ok(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match cli.command {
        Command::Eval(a) => commands::eval(&a).map(|_| 0),
        Command::Sample(a) => commands::sample(&a).map(|_| 0),
        Command::Simulate(a) => commands::simulate(&a).map(|_| 0),
        Command::Verify(a) => commands::verify(&a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
