use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "fasim", version, about = "Analog filter transfer functions: model, translate to HOL Light, verify, analyze")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a catalog filter's transfer function and write it as XML.
    Model(ModelArgs),
    /// Translate an XML transfer function to a HOL Light script.
    Translate(TranslateArgs),
    /// Check an ODE against a transfer function and print the obligation ledger.
    Verify(VerifyArgs),
    /// Poles, zeros, stability, Bode and step-response data.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
#[command(after_help = "Components are given as --<NAME> <VALUE>, e.g. --R1 16e3 --C1 1e-9; RL sets the load.")]
pub struct ModelArgs {
    /// Filter kind, e.g. sallen-key-lp (see `fasim model --list`).
    #[arg(required_unless_present = "list")]
    pub kind: Option<String>,
    /// Component values and options, as --<NAME> <VALUE> pairs.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "COMPONENTS")]
    pub rest: Vec<String>,
    /// Output XML file (stdout when omitted).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Model name written to the XML (defaults per kind).
    #[arg(long)]
    pub name: Option<String>,
    /// Also write the circuit's ODE as JSON.
    #[arg(long = "ode-out")]
    pub ode_out: Option<PathBuf>,
    /// List the filter kinds and their components.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Tf,
    Ode,
    Both,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PowSyntaxArg {
    /// `s^2`
    Caret,
    /// `s pow 2`
    Pow,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    pub input: PathBuf,
    /// Output script (stdout when omitted).
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TheoremArg::Both)]
    pub theorem: TheoremArg,
    #[arg(long = "pow-syntax", value_enum, default_value_t = PowSyntaxArg::Caret)]
    pub pow_syntax: PowSyntaxArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LedgerArg {
    /// ODE to transfer function (A1..A8).
    Tf,
    /// Transfer function to ODE (A1..A9); only without --ode.
    Ode,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub input: PathBuf,
    /// ODE JSON file; defaults to the ODE read off the transfer function.
    #[arg(long)]
    pub ode: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    #[arg(long, value_enum, default_value_t = LedgerArg::Tf)]
    pub theorem: LedgerArg,
    /// Fail when the numeric cross-check cannot run.
    #[arg(long)]
    pub strict: bool,
    /// Abscissa margin added right of the rightmost pole.
    #[arg(long, default_value_t = 1.0)]
    pub margin: f64,
    /// Relative quadrature tolerance (default 1e-8, or FASIM_TOL).
    #[arg(long = "quad-tol")]
    pub quad_tol: Option<f64>,
    /// Root-finder tolerance.
    #[arg(long = "root-tol", default_value_t = 1e-12)]
    pub root_tol: f64,
    /// Simulation step (default 0.01 / rho, rho = max(|pole|, 1)).
    #[arg(long = "sim-dt")]
    pub sim_dt: Option<f64>,
    /// Simulation horizon (default 30 / rho).
    #[arg(long = "sim-horizon")]
    pub sim_horizon: Option<f64>,
    /// Largest accepted relative error of the numeric cross-check.
    #[arg(long, default_value_t = 1e-2)]
    pub threshold: f64,
    /// Skip the numeric cross-check.
    #[arg(long = "no-numeric")]
    pub no_numeric: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    /// Log sweep `lo:hi:n` in rad/s (default spans two decades around the poles).
    #[arg(long)]
    pub sweep: Option<String>,
    /// Bode CSV output.
    #[arg(long)]
    pub bode: Option<PathBuf>,
    /// Step-response CSV output.
    #[arg(long)]
    pub step: Option<PathBuf>,
    /// Step-response horizon in seconds (default 10 / slowest pole decay rate).
    #[arg(long = "step-horizon")]
    pub step_horizon: Option<f64>,
    #[arg(long = "step-points", default_value_t = 200)]
    pub step_points: usize,
}
