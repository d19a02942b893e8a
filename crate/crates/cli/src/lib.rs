//! Command-line front end: exact coefficient listings, the support-density
//! table, curve and CDF data files (CSV or JSON), and a verification
//! driver.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure,
//! 3 resource-bound refusal. Data commands are deterministic: identical
//! inputs produce byte-identical output, except for the JSON
//! `generated_at_unix` field, which `--no-timestamp` removes.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use hookdist_core::checks::{self, CheckOutcome};
use hookdist_core::dist::{cdf_comparison, curve_rows};
use hookdist_core::hookstat::{
    coeff_table_cached, SupportStats, ENUMERATION_BOUND, FACTORIZATION_BOUND,
};
use hookdist_core::Error as CoreError;

/// Environment variable giving the default series cache directory.
pub const CACHE_ENV: &str = "HOOKDIST_CACHE_DIR";

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_BOUND: u8 = 3;

#[derive(Parser)]
#[command(name = "hookdist", version, about = "Hook-length divisibility tables and curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for data commands (verify always writes JSON).
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Series cache directory; overrides HOOKDIST_CACHE_DIR. Caching is
    /// off when neither is set.
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Omit the generated_at_unix field from JSON envelopes.
    #[arg(long, global = true)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficients: rows (m, coeff, nonzero) for m = 0..=floor(n/t).
    Coeffs {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u64,
    },
    /// Support-density table: one row per n, 5-decimal cells for t=2 and t=3.
    DensityTable {
        /// Comma-separated n values, one table row each.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        n_list: Option<Vec<u64>>,
        /// Single n (same as a one-element --n-list).
        #[arg(long, conflicts_with = "n_list")]
        n: Option<u64>,
    },
    /// Scaled mass function on the x-grid with continuous and limit curves.
    Curves {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u64,
        /// Which curves to fill: pmf (f only), h, g, or all.
        #[arg(long, value_enum, default_value_t = Which::All)]
        which: Which,
    },
    /// Exact CDF against the limit CDF on a uniform x-grid.
    Cdf {
        #[arg(long)]
        t: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        x_max: f64,
        /// Number of grid samples (endpoints included).
        #[arg(long, default_value_t = 61)]
        x_steps: u32,
    },
    /// Run the verification suite and emit a JSON report (exit 2 on failure).
    Verify {
        #[arg(long, value_enum, default_value_t = Level::Fast)]
        level: Level,
        /// Comma-separated r values overriding the characteristic-function grid.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        r_list: Option<Vec<f64>>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Pmf,
    H,
    G,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Fast,
    Full,
}

/// Resolved per-invocation settings shared by every command.
struct RunConfig {
    format: Format,
    output: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
    no_timestamp: bool,
    enumeration_bound: u64,
    factorization_bound: u64,
}

impl RunConfig {
    fn resolve(cli: &Cli) -> Self {
        let cache_dir = cli
            .cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
        RunConfig {
            format: cli.format,
            output: cli.output.clone(),
            cache_dir,
            no_timestamp: cli.no_timestamp,
            enumeration_bound: ENUMERATION_BOUND,
            factorization_bound: FACTORIZATION_BOUND,
        }
    }

    fn cache(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        let code = match e {
            CoreError::EnumerationBound { .. } | CoreError::FactorizationBound { .. } => EXIT_BOUND,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

pub fn run() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(EXIT_USAGE)
                }
            }
        }
    };
    let config = RunConfig::resolve(&cli);
    match dispatch(cli.command, &config) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn dispatch(command: Command, config: &RunConfig) -> Result<u8, Failure> {
    match command {
        Command::Coeffs { t, n } => cmd_coeffs(t, n, config),
        Command::DensityTable { n_list, n } => {
            let ns = match (n_list, n) {
                (Some(list), None) => list,
                (None, Some(one)) => vec![one],
                _ => return Err(Failure::usage("density-table needs --n-list or --n")),
            };
            cmd_density_table(&ns, config)
        }
        Command::Curves { t, n, which } => cmd_curves(t, n, which, config),
        Command::Cdf { t, n, x_min, x_max, x_steps } => {
            cmd_cdf(t, n, x_min, x_max, x_steps, config)
        }
        Command::Verify { level, r_list } => cmd_verify(level, r_list.as_deref(), config),
    }
}

fn validate_tn(t: u32, n: u64) -> Result<(), Failure> {
    if t < 2 {
        return Err(Failure::usage(format!("t must be at least 2, got {t}")));
    }
    if n < 1 {
        return Err(Failure::usage(format!("n must be at least 1, got {n}")));
    }
    Ok(())
}

fn cmd_coeffs(t: u32, n: u64, config: &RunConfig) -> Result<u8, Failure> {
    validate_tn(t, n)?;
    let table = coeff_table_cached(t, n, config.cache())?;
    let records = table
        .coeffs()
        .iter()
        .enumerate()
        .map(|(m, c)| {
            vec![
                Some(m.to_string()),
                Some(c.to_string()),
                Some(if c.is_zero() { "0" } else { "1" }.to_string()),
            ]
        })
        .collect();
    write_table(
        &TableData {
            command: "coeffs",
            meta: vec![("t", t as u64), ("n", n)],
            columns: &["m", "coeff", "nonzero"],
            records,
        },
        config,
    )
}

fn density_cell(t: u32, n: u64, config: &RunConfig) -> Result<String, Failure> {
    let table = coeff_table_cached(t, n, config.cache())?;
    let stats = SupportStats {
        t,
        n,
        nonzero_count: table.nonzero_count(),
        degree: table.degree() as u64,
    };
    Ok(stats.proportion_string())
}

fn cmd_density_table(ns: &[u64], config: &RunConfig) -> Result<u8, Failure> {
    if ns.is_empty() {
        return Err(Failure::usage("density-table needs at least one n"));
    }
    if let Some(&bad) = ns.iter().find(|&&n| n < 3) {
        return Err(Failure::usage(format!("density rows need n >= 3, got {bad}")));
    }
    // independent (t, n) tasks; merged back in input order
    let cells: Vec<(String, String)> = ns
        .par_iter()
        .map(|&n| Ok((density_cell(2, n, config)?, density_cell(3, n, config)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let records = ns
        .iter()
        .zip(cells)
        .map(|(&n, (c2, c3))| vec![Some(n.to_string()), Some(c2), Some(c3)])
        .collect();
    write_table(
        &TableData { command: "density-table", meta: vec![], columns: &["n", "t2", "t3"], records },
        config,
    )
}

fn cmd_curves(t: u32, n: u64, which: Which, config: &RunConfig) -> Result<u8, Failure> {
    validate_tn(t, n)?;
    if which == Which::H && t >= 4 {
        return Err(Failure::usage(format!(
            "the h curve is only defined for t = 2, 3 (got t = {t}); use --which pmf, g, or all"
        )));
    }
    let table = coeff_table_cached(t, n, config.cache())?;
    let want_h = matches!(which, Which::H | Which::All);
    let want_g = matches!(which, Which::G | Which::All);
    let records = curve_rows(&table)
        .into_iter()
        .map(|row| {
            vec![
                Some(row.m.to_string()),
                Some(fmt_real(row.x)),
                Some(fmt_real(row.f)),
                if want_h { row.h.map(fmt_real) } else { None },
                if want_g { row.g.map(fmt_real) } else { None },
            ]
        })
        .collect();
    write_table(
        &TableData {
            command: "curves",
            meta: vec![("t", t as u64), ("n", n)],
            columns: &["m", "x", "f", "h", "g"],
            records,
        },
        config,
    )
}

fn cmd_cdf(
    t: u32,
    n: u64,
    x_min: f64,
    x_max: f64,
    x_steps: u32,
    config: &RunConfig,
) -> Result<u8, Failure> {
    validate_tn(t, n)?;
    if !x_min.is_finite() || !x_max.is_finite() || x_min > x_max {
        return Err(Failure::usage(format!(
            "need finite x-min <= x-max, got {x_min} and {x_max}"
        )));
    }
    if x_steps < 1 {
        return Err(Failure::usage("x-steps must be at least 1"));
    }
    let xs: Vec<f64> = if x_steps == 1 {
        vec![x_min]
    } else {
        (0..x_steps)
            .map(|i| x_min + (x_max - x_min) * i as f64 / (x_steps - 1) as f64)
            .collect()
    };
    let table = coeff_table_cached(t, n, config.cache())?;
    let records = cdf_comparison(&table, &xs)
        .into_iter()
        .map(|row| {
            vec![
                Some(fmt_real(row.x)),
                Some(fmt_real(row.cdf)),
                Some(fmt_real(row.limit)),
                Some(fmt_real(row.gap)),
            ]
        })
        .collect();
    write_table(
        &TableData {
            command: "cdf",
            meta: vec![("t", t as u64), ("n", n)],
            columns: &["x", "cdf", "limit", "gap"],
            records,
        },
        config,
    )
}

#[derive(Serialize)]
struct VerifyReport {
    command: &'static str,
    level: &'static str,
    enumeration_bound: u64,
    factorization_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    generated_at_unix: Option<u64>,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_failure: Option<String>,
    checks: Vec<VerifyCheck>,
}

#[derive(Serialize)]
struct VerifyCheck {
    name: String,
    passed: bool,
    seconds: f64,
    details: String,
}

fn cmd_verify(level: Level, r_list: Option<&[f64]>, config: &RunConfig) -> Result<u8, Failure> {
    let outcomes: Vec<CheckOutcome> = match level {
        Level::Fast => {
            let mut v = checks::fast_suite();
            if let Some(rs) = r_list {
                v.push(checks::check_char_grid_bounded(rs));
            }
            v
        }
        Level::Full => checks::full_suite_with_char_grid(r_list),
    };
    for o in &outcomes {
        eprintln!("{}", o.summary_line());
    }
    let passed = outcomes.iter().all(|o| o.passed);
    let first_failure = outcomes.iter().find(|o| !o.passed).map(|o| o.name.to_string());
    if let Some(name) = &first_failure {
        eprintln!("first failing check: {name}");
    }
    let report = VerifyReport {
        command: "verify",
        level: match level {
            Level::Fast => "fast",
            Level::Full => "full",
        },
        enumeration_bound: config.enumeration_bound,
        factorization_bound: config.factorization_bound,
        generated_at_unix: timestamp(config),
        passed,
        first_failure,
        checks: outcomes
            .into_iter()
            .map(|o| VerifyCheck {
                name: o.name.to_string(),
                passed: o.passed,
                seconds: (o.duration.as_secs_f64() * 1000.0).round() / 1000.0,
                details: o.details,
            })
            .collect(),
    };
    let mut bytes = serde_json::to_vec_pretty(&report).expect("report serializes");
    bytes.push(b'\n');
    emit(&bytes, config)?;
    Ok(if passed { 0 } else { EXIT_VERIFY })
}

struct TableData {
    command: &'static str,
    meta: Vec<(&'static str, u64)>,
    columns: &'static [&'static str],
    records: Vec<Vec<Option<String>>>,
}

fn write_table(data: &TableData, config: &RunConfig) -> Result<u8, Failure> {
    let bytes = match config.format {
        Format::Csv => table_csv(data)?,
        Format::Json => table_json(data, timestamp(config)),
    };
    emit(&bytes, config)?;
    Ok(0)
}

fn timestamp(config: &RunConfig) -> Option<u64> {
    if config.no_timestamp {
        None
    } else {
        Some(
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        )
    }
}

fn table_csv(data: &TableData) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(data.columns)?;
    for record in &data.records {
        w.write_record(record.iter().map(|c| c.as_deref().unwrap_or("")))?;
    }
    w.into_inner().map_err(|e| Failure::usage(e.to_string()))
}

fn table_json(data: &TableData, ts: Option<u64>) -> Vec<u8> {
    let mut root = Map::new();
    root.insert("command".into(), json!(data.command));
    for (k, v) in &data.meta {
        root.insert((*k).into(), json!(v));
    }
    if let Some(ts) = ts {
        root.insert("generated_at_unix".into(), json!(ts));
    }
    let rows: Vec<Value> = data
        .records
        .iter()
        .map(|record| {
            let mut row = Map::new();
            for (col, cell) in data.columns.iter().zip(record) {
                row.insert(
                    (*col).into(),
                    match cell {
                        Some(s) => json!(s),
                        None => Value::Null,
                    },
                );
            }
            Value::Object(row)
        })
        .collect();
    root.insert("rows".into(), Value::Array(rows));
    let mut bytes = serde_json::to_vec_pretty(&Value::Object(root)).expect("table serializes");
    bytes.push(b'\n');
    bytes
}

fn emit(bytes: &[u8], config: &RunConfig) -> Result<(), Failure> {
    match &config.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

/// 12 significant digits; the canonical zero avoids a "-0" cell.
fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        "0.00000000000e0".to_string()
    } else {
        format!("{v:.11e}")
    }
}
