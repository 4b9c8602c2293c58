use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "agip",
    version,
    about = "Coherence-aware generalized-mean scoring of domain ability profiles"
)]
pub struct Cli {
    /// Epsilon floor substituted for scores below it (fraction).
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub eps: f64,

    /// Print progress details on stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a profile document is well formed and valid.
    Validate { file: PathBuf },
    /// AGI_p at the requested exponents.
    Score {
        file: PathBuf,
        /// Comma-separated exponents.
        #[arg(long = "p", value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, 0.5, 0.0, -0.5, -1.0])]
        p: Vec<f64>,
        #[arg(long, value_enum, default_value_t = RoundingArg::Integer)]
        rounding: RoundingArg,
    },
    /// Sampled AGI_p curve (fractions, full precision).
    Curve {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Normalized area under the AGI_p curve.
    Auc {
        file: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = RoundingArg::Integer)]
        rounding: RoundingArg,
    },
    /// Roll subdomain tables up into a domain profile.
    Rollup {
        file: PathBuf,
        #[arg(long, value_enum)]
        aggregator: AggregatorArg,
        #[arg(long, value_enum, default_value_t = RoundingArg::Decimal)]
        rounding: RoundingArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Also write the rolled-up profile document here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Key-score comparison table, one row per profile.
    Report {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = ReportRounding::Integer)]
        rounding: ReportRounding,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
    /// Override domain scores and compare key scores before and after.
    Scenario {
        file: PathBuf,
        /// DOMAIN=PERCENT, repeatable.
        #[arg(long = "set", value_parser = parse_edit, required = true)]
        set: Vec<(String, f64)>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = RoundingArg::Integer)]
        rounding: RoundingArg,
        /// Also write the edited profile document here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Rank domains by the AGI_AUC gained from raising each one to a target.
    Bottlenecks {
        file: PathBuf,
        /// Target score in percent.
        #[arg(long)]
        target: f64,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Perturbation envelope around the AGI_p curve.
    Envelope {
        file: PathBuf,
        /// Half-width of the uniform score offset (fraction).
        #[arg(long, default_value_t = 0.05)]
        scale: f64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = -1.0, allow_negative_numbers = true)]
    pub p_min: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub p_max: f64,
    /// Number of grid points.
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Integer,
    Decimal,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportRounding {
    Integer,
    Decimal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AggregatorArg {
    Am,
    Wam,
    Gm,
    Wgm,
}

fn parse_edit(s: &str) -> Result<(String, f64), String> {
    let (id, pct) = s
        .split_once('=')
        .ok_or_else(|| format!("expected DOMAIN=PERCENT, got `{s}`"))?;
    let id = id.trim();
    if id.is_empty() {
        return Err(format!("missing domain id in `{s}`"));
    }
    let pct: f64 = pct
        .trim()
        .parse()
        .map_err(|_| format!("`{pct}` is not a number"))?;
    Ok((id.to_string(), pct))
}
