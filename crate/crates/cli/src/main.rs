//! Command-line front end: convergence classification, endpoint evaluation,
//! remainder tables, regularized summation, generalized limits, and sums
//! over the reordered integer line.
//!
//! Exit codes: 0 on success, 2 on usage or parameter errors, 3 when every
//! requested method fails to settle.

mod commands;
mod descriptor;
mod output;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CliError, RemainderArgs, SumArgs};
use output::Format;
use regsum::sumreg::SumConfig;

const TOLERANCE_ENV: &str = "REGSUM_TOLERANCE";

#[derive(Parser)]
#[command(
    name = "regsum",
    about = "Exact binomial/hypergeometric endpoint analysis and regular summation of divergent series",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    /// Output format: text, json, or csv.
    #[arg(long, global = true, value_parser = parse_format, default_value = "text")]
    format: Format,

    /// Settling tolerance override (also honors the REGSUM_TOLERANCE
    /// environment variable; the flag wins).
    #[arg(long, global = true)]
    tolerance: Option<f64>,

    /// Iteration-depth cap applied uniformly (Euler depth, Abel grid
    /// ceiling, Cesàro doubling count).
    #[arg(long, global = true)]
    max_depth: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify convergence of a pFq series at a rational argument.
    Classify {
        /// Comma-separated upper parameters (rationals like 1/2).
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        /// Comma-separated lower parameters.
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        lower: String,
        /// Evaluation point: 1, -1, or an interior rational.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Evaluate (1+x)^a exactly, with regularized cross-checks at x = 1.
    Endpoint {
        /// Nonzero integer exponent.
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        /// Rational argument in (-1, 1].
        #[arg(short, allow_hyphen_values = true)]
        x: String,
    },
    /// Tabulate truncation remainders of (1+x)^(-m) for k = 0..k_max.
    Remainder {
        /// Positive integer m (the exponent is -m).
        #[arg(short)]
        m: u32,
        /// Largest truncation index.
        #[arg(long)]
        k_max: u32,
        /// Rational argument in (-1, 1].
        #[arg(short, allow_hyphen_values = true)]
        x: String,
        /// Write |remainder| vs k as plot data (plus a .meta.json sidecar).
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Regularized value of a series under the requested methods.
    Sum {
        /// Unsigned polynomial p(n); the series terms are (-1)^n p(n).
        #[arg(long, allow_hyphen_values = true)]
        alt_poly: Option<String>,
        /// Explicit comma-separated term list (zero beyond the list).
        #[arg(long, allow_hyphen_values = true)]
        terms: Option<String>,
        /// Trig family descriptor `m=<int>,theta=<angle>`.
        #[arg(long, allow_hyphen_values = true)]
        trig: Option<String>,
        /// Comma-separated subset of abel, euler, cesaro.
        #[arg(long, default_value = "abel,euler,cesaro")]
        methods: String,
    },
    /// Generalized limit of a sequence descriptor.
    Limit {
        /// Expression in n, e.g. "(-1)^n*(2n+1)^3" or "1-1/n".
        #[arg(long, allow_hyphen_values = true)]
        seq: String,
    },
    /// Sum a builtin summand family over the reordered integer range [a, b].
    Zsum {
        /// Family: identity, one, square, cube, alternating, `poly:<expr>`.
        #[arg(long)]
        f: String,
        #[arg(short, allow_hyphen_values = true)]
        a: i64,
        #[arg(short, allow_hyphen_values = true)]
        b: i64,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "text" => Ok(Format::Text),
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(format!("unknown format {other:?} (use text, json, or csv)")),
    }
}

fn sum_config(tolerance: Option<f64>, max_depth: Option<u32>) -> Result<SumConfig, CliError> {
    let mut cfg = SumConfig::default();
    let tolerance = match tolerance {
        Some(t) => Some(t),
        None => match std::env::var(TOLERANCE_ENV) {
            Ok(raw) => Some(
                raw.parse::<f64>()
                    .map_err(|_| CliError::Usage(format!("bad {TOLERANCE_ENV} value {raw:?}")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(t) = tolerance {
        if t.is_nan() || t <= 0.0 {
            return Err(CliError::Usage(format!(
                "tolerance must be positive, got {t}"
            )));
        }
        cfg.series_tolerance = t;
        cfg.limit_tolerance = t;
    }
    if let Some(d) = max_depth {
        if d == 0 {
            return Err(CliError::Usage("max-depth must be >= 1".into()));
        }
        cfg.euler_max_depth = d;
        cfg.abel_grid_max = (cfg.abel_grid_min + d).min(24);
        cfg.cesaro_max_log2 = (6 + d).min(26);
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let cfg = sum_config(cli.tolerance, cli.max_depth)?;
    let record = match &cli.command {
        Command::Classify { upper, lower, x } => commands::cmd_classify(upper, lower, x)?,
        Command::Endpoint { a, x } => commands::cmd_endpoint(*a, x, &cfg)?,
        Command::Remainder { m, k_max, x, plot } => commands::cmd_remainder(&RemainderArgs {
            m: *m,
            k_max: *k_max,
            x,
            plot: plot.as_deref(),
        })?,
        Command::Sum {
            alt_poly,
            terms,
            trig,
            methods,
        } => commands::cmd_sum(
            &SumArgs {
                alt_poly: alt_poly.as_deref(),
                terms: terms.as_deref(),
                trig: trig.as_deref(),
                methods,
            },
            &cfg,
        )?,
        Command::Limit { seq } => commands::cmd_limit(seq, &cfg)?,
        Command::Zsum { f, a, b } => commands::cmd_zsum(f, *a, *b)?,
    };
    Ok(output::render(&record, cli.format))
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(rendered) => print!("{rendered}"),
        Err(err) => {
            eprintln!("error: {}", err.message());
            std::process::exit(err.exit_code());
        }
    }
}
