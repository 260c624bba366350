use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "gemo", version, about = "Fit and evaluate GEMO lifetime models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Maximum-likelihood fit of one model
    Fit(FitArgs),
    /// Fit several models to one dataset and rank them by AIC
    Compare(CompareArgs),
    /// Quantile, mean residual life and mean past lifetime at percentiles
    Reliab(ReliabArgs),
    /// Scaled total-time-on-test curve of a dataset
    Ttt(TttArgs),
    /// Seeded random draws from a parameterized model
    Sample(SampleArgs),
    /// pdf, cdf, sf and hrf on a grid, or fit statistics when --data is given
    Eval(EvalArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output format (each command has its own default)
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of standard output
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Args)]
pub struct Fitting {
    /// Number of perturbed starts besides the anchor
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub starts: u64,
    /// Seed for start perturbations
    #[arg(long, default_value_t = 20_240_601)]
    pub seed: u64,
    /// Iteration cap per quasi-Newton run
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Model: a baseline (weibull, gamma, exponential, lomax, lognormal) or
    /// its GEMO extension (gemo-weibull, ...)
    #[arg(long)]
    pub model: String,
    /// Data file, or a bundled dataset name (bladder-cancer, glass-fibers)
    #[arg(long)]
    pub data: String,
    /// Hold a parameter fixed, e.g. --fix gamma=1 (repeatable)
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    pub fix: Vec<String>,
    #[command(flatten)]
    pub fitting: Fitting,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Models to compare, repeated or comma separated
    #[arg(long = "model", value_delimiter = ',', required = true)]
    pub models: Vec<String>,
    #[arg(long)]
    pub data: String,
    #[command(flatten)]
    pub fitting: Fitting,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ReliabArgs {
    /// Model parameters as JSON (a parameter object or a fit report)
    #[arg(long, conflicts_with_all = ["model", "data"])]
    pub params: Option<String>,
    /// Fit this model first instead of supplying --params
    #[arg(long, requires = "data")]
    pub model: Option<String>,
    #[arg(long, requires = "model")]
    pub data: Option<String>,
    #[arg(long = "fix", value_name = "NAME=VALUE")]
    pub fix: Vec<String>,
    /// Comma separated probabilities in (0, 1)
    #[arg(long, value_delimiter = ',')]
    pub percentiles: Vec<f64>,
    #[command(flatten)]
    pub fitting: Fitting,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct TttArgs {
    #[arg(long)]
    pub data: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long)]
    pub params: String,
    /// Number of draws
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub params: String,
    /// Grid points between the 1e-4 and 1 - 1e-4 quantiles
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(2..))]
    pub grid: u64,
    /// Score the parameters on this dataset instead of emitting a grid
    #[arg(long)]
    pub data: Option<String>,
    /// Parameter count charged in AIC with --data (default: all parameters)
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}
