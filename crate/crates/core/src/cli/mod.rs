//! Command-line front end.
//!
//! Exit codes: 0 when every expectation is met, 1 when a mathematical
//! violation or reproduction failure is found, 2 on input or configuration errors.

pub mod matrix_file;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::linalg::{sample_pd, HermitianMatrix};
use crate::means::{metric_mean, spectral_mean, Weight};
use crate::theorems::fixtures::{
    LoewnerCounterexample, NatlogCounterexample, DIFF_SPECTRUM_TOL, ENTRY_TOL, LOEWNER_A, LOEWNER_B1, LOEWNER_B2,
    LOEWNER_PRINTED_DIFF_SPECTRUM, LOEWNER_PRINTED_MEAN1, LOEWNER_PRINTED_MEAN2, LOEWNER_T, NATLOG_A, NATLOG_B,
    NATLOG_PRINTED_LHS, NATLOG_PRINTED_LHS_SPECTRUM, NATLOG_PRINTED_MEAN, NATLOG_PRINTED_MEAN_SPECTRUM, NATLOG_S,
    NATLOG_T, SPECTRUM_TOL,
};
use crate::theorems::{
    dyadic_grid, limit_errors, limit_target, run_suite, sandwich_limit_term, spectral_limit_term, SuiteConfig,
    SuiteSummary,
};

pub use matrix_file::MatrixFile;
pub use report::{limit_csv, report_csv, summary_json, LimitRow, REPORT_COLUMNS};

/// Overrides the default output directory of `verify`.
pub const OUT_DIR_ENV: &str = "GEOMEANS_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "geomeans", version, about = "Weighted metric and spectral geometric means of positive definite matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeanKind {
    /// Metric mean A #_t B.
    Sharp,
    /// Spectral mean A ♮_t B.
    Natural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Counterexample {
    /// Log-majorization fails for s > min(1/t, 2).
    Remark37,
    /// The spectral mean is not Löwner monotone.
    Loewner,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute A #_t B or A ♮_t B.
    Mean {
        #[arg(long, value_enum)]
        kind: MeanKind,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the randomized and fixed verification suite.
    Verify {
        /// JSON suite configuration; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        /// Dimension range such as `2..6`, `2-6` or `4`.
        #[arg(long)]
        dims: Option<String>,
        #[arg(long, value_delimiter = ',')]
        t: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        s: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        r: Option<Vec<f64>>,
        #[arg(long)]
        p_min_exp: Option<u32>,
        /// Run s beyond min(1/t, 2) as exploratory cases.
        #[arg(long)]
        force_out_of_range: bool,
        /// Output directory for `report.csv` and `summary.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the p → 0 limit errors for Hermitian A, B.
    Limit {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 10)]
        p_min_exp: u32,
        /// CSV destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a published counterexample and compare with the printed values.
    Counterexample {
        #[arg(value_enum)]
        name: Counterexample,
    },
    /// Write a random positive definite matrix.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100.0)]
        spread: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses arguments and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Mean { kind, a, b, t, out } => cmd_mean(kind, &a, &b, t, &out),
        Command::Verify { config, seed, trials, dims, t, s, r, p_min_exp, force_out_of_range, out } => {
            let mut cfg = match config {
                Some(path) => read_config(&path)?,
                None => SuiteConfig::default(),
            };
            if let Some(v) = seed {
                cfg.seed = v;
            }
            if let Some(v) = trials {
                cfg.trials = v;
            }
            if let Some(v) = dims {
                cfg.dims = parse_dims(&v)?;
            }
            if let Some(v) = t {
                cfg.t_grid = v;
            }
            if let Some(v) = s {
                cfg.s_grid = v;
            }
            if let Some(v) = r {
                cfg.r_grid = v;
            }
            if let Some(v) = p_min_exp {
                cfg.p_min_exp = v;
            }
            cfg.force_out_of_range |= force_out_of_range;
            let out = out.or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from)).unwrap_or_else(|| ".".into());
            cmd_verify(&cfg, &out)
        }
        Command::Limit { a, b, t, p_min_exp, out } => cmd_limit(&a, &b, t, p_min_exp, out.as_deref()),
        Command::Counterexample { name } => cmd_counterexample(name),
        Command::Sample { n, seed, spread, out } => cmd_sample(n, seed, spread, &out),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("{}: {e}", path.display()))
}

pub fn read_config(path: &Path) -> Result<SuiteConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidParameter(format!("bad config {}: {e}", path.display())))
}

pub fn parse_dims(text: &str) -> Result<[usize; 2]> {
    let bad = || Error::InvalidParameter(format!("bad dimension range '{text}'"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let parts: Vec<&str> = if text.contains("..") { text.split("..").collect() } else { text.split('-').collect() };
    match parts.as_slice() {
        [n] => Ok([parse(n)?; 2]),
        [lo, hi] => Ok([parse(lo)?, parse(hi)?]),
        _ => Err(bad()),
    }
}

fn join(values: &[f64], digits: usize) -> String {
    values.iter().map(|v| format!("{v:.digits$}")).collect::<Vec<_>>().join(", ")
}

fn print_matrix(name: &str, data: &[f64; 4]) {
    println!("{name} = [[{:.4}, {:.4}], [{:.4}, {:.4}]]", data[0], data[1], data[2], data[3]);
}

pub fn cmd_mean(kind: MeanKind, a: &Path, b: &Path, t: f64, out: &Path) -> Result<i32> {
    let a = MatrixFile::read(a)?.positive_definite()?;
    let b = MatrixFile::read(b)?.positive_definite()?;
    let t = Weight::new(t)?;
    let mean = match kind {
        MeanKind::Sharp => metric_mean(&a, &b, t)?,
        MeanKind::Natural => spectral_mean(&a, &b, t)?,
    };
    MatrixFile::from_matrix(mean.as_matrix()).write(out)?;
    println!("eigenvalues: {}", join(mean.spectrum().values(), 10));
    println!("determinant: {:.10e}", mean.determinant());
    Ok(EXIT_OK)
}

pub fn cmd_verify(config: &SuiteConfig, out_dir: &Path) -> Result<i32> {
    config.validate()?;
    let outcomes = run_suite(config)?;
    let summary = SuiteSummary::new(config, &outcomes);
    std::fs::create_dir_all(out_dir).map_err(|e| io_error(out_dir, e))?;
    let report = out_dir.join("report.csv");
    std::fs::write(&report, report_csv(&outcomes)?).map_err(|e| io_error(&report, e))?;
    let summary_path = out_dir.join("summary.json");
    std::fs::write(&summary_path, summary_json(&summary)).map_err(|e| io_error(&summary_path, e))?;
    for c in &summary.checks {
        println!(
            "{:<34} runs={:<5} violations={:<3} worst_margin={:.3e}",
            c.check_id, c.runs, c.violations, c.worst_margin
        );
    }
    println!(
        "outcomes={} violations={} hard_failures={} oracle_agreement={}/{}",
        summary.outcomes, summary.violations, summary.hard_failures, summary.oracle_agreed, summary.oracle_compared
    );
    println!("report: {}", report.display());
    Ok(if summary.passed() { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn limit_rows(a: &HermitianMatrix, b: &HermitianMatrix, t: Weight, p_min_exp: u32) -> Result<Vec<LimitRow>> {
    if p_min_exp > 30 {
        return Err(Error::InvalidParameter("p_min_exp must be at most 30".into()));
    }
    crate::linalg::check_same_dim(a.dim(), b.dim())?;
    let grid = dyadic_grid(p_min_exp);
    let (spectral_terms, spectral_errs) = limit_errors(a, b, t, &grid, spectral_limit_term)?;
    let (_, sandwich_errs) = limit_errors(a, b, t, &grid, sandwich_limit_term)?;
    let trace_target = limit_target(a, b, t)?.trace();
    Ok(grid
        .iter()
        .zip(&spectral_terms)
        .zip(spectral_errs.iter().zip(&sandwich_errs))
        .map(|((&p, term), (&es, &ew))| LimitRow {
            p,
            err_spectral_mean: es,
            err_sandwich: ew,
            trace_spectral: term.trace(),
            trace_target,
        })
        .collect())
}

pub fn cmd_limit(a: &Path, b: &Path, t: f64, p_min_exp: u32, out: Option<&Path>) -> Result<i32> {
    let a = MatrixFile::read(a)?.hermitian()?;
    let b = MatrixFile::read(b)?.hermitian()?;
    let text = limit_csv(&limit_rows(&a, &b, Weight::new(t)?, p_min_exp)?)?;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io_error(path, e))?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

pub fn cmd_counterexample(name: Counterexample) -> Result<i32> {
    let reproduced = match name {
        Counterexample::Remark37 => {
            let c = NatlogCounterexample::compute()?;
            println!("t = {NATLOG_T:.6}, s = {NATLOG_S}");
            print_matrix("A", &NATLOG_A);
            print_matrix("B", &NATLOG_B);
            println!("(B^(ts/2) A^((1-t)s) B^(ts/2))^(1/s):");
            print_matrix("  printed ", &NATLOG_PRINTED_LHS);
            println!("  computed spectrum: {}", join(c.lhs.spectrum().values(), 6));
            println!("  printed spectrum:  {}", join(&NATLOG_PRINTED_LHS_SPECTRUM, 4));
            println!("  spectrum delta {:.2e} (tol {SPECTRUM_TOL:e}) {}", c.lhs_spectrum_delta, verdict(c.lhs_spectrum_delta <= SPECTRUM_TOL));
            println!("  entry delta    {:.2e} (tol {ENTRY_TOL:e}) {}", c.lhs_entry_delta, verdict(c.lhs_entry_delta <= ENTRY_TOL));
            println!("A ♮_t B:");
            print_matrix("  printed ", &NATLOG_PRINTED_MEAN);
            println!("  computed spectrum: {}", join(c.mean.spectrum().values(), 6));
            println!("  printed spectrum:  {}", join(&NATLOG_PRINTED_MEAN_SPECTRUM, 4));
            println!("  spectrum delta {:.2e} (tol {SPECTRUM_TOL:e}) {}", c.mean_spectrum_delta, verdict(c.mean_spectrum_delta <= SPECTRUM_TOL));
            println!("  entry delta    {:.2e} (tol {ENTRY_TOL:e}) {}", c.mean_entry_delta, verdict(c.mean_entry_delta <= ENTRY_TOL));
            println!("log-majorization holds: {} (expected false)", c.report.verdict);
            c.reproduced()
        }
        Counterexample::Loewner => {
            let c = LoewnerCounterexample::compute()?;
            println!("t = {LOEWNER_T:.6}");
            print_matrix("A ", &LOEWNER_A);
            print_matrix("B1", &LOEWNER_B1);
            print_matrix("B2", &LOEWNER_B2);
            println!("lambda_min(B1 - B2) = {:.6} ({})", c.order_gap, verdict(c.order_gap >= 0.0));
            print_matrix("printed A ♮_t B1", &LOEWNER_PRINTED_MEAN1);
            println!("  entry delta {:.2e} (tol {ENTRY_TOL:e}) {}", c.mean1_entry_delta, verdict(c.mean1_entry_delta <= ENTRY_TOL));
            print_matrix("printed A ♮_t B2", &LOEWNER_PRINTED_MEAN2);
            println!("  entry delta {:.2e} (tol {ENTRY_TOL:e}) {}", c.mean2_entry_delta, verdict(c.mean2_entry_delta <= ENTRY_TOL));
            println!("eigenvalues of A ♮_t B1 - A ♮_t B2:");
            println!("  computed: {}", join(c.diff_spectrum.values(), 6));
            println!("  printed:  {}", join(&LOEWNER_PRINTED_DIFF_SPECTRUM, 4));
            println!("  delta {:.2e} (tol {DIFF_SPECTRUM_TOL:e}) {}", c.diff_spectrum_delta, verdict(c.diff_spectrum_delta <= DIFF_SPECTRUM_TOL));
            println!("difference is PSD: {} (expected false)", c.difference_is_psd());
            c.reproduced()
        }
    };
    println!("reproduced: {reproduced}");
    Ok(if reproduced { EXIT_OK } else { EXIT_VIOLATION })
}

pub fn cmd_sample(n: usize, seed: u64, spread: f64, out: &Path) -> Result<i32> {
    if n == 0 || n > 64 {
        return Err(Error::InvalidParameter("n must be between 1 and 64".into()));
    }
    if !(spread >= 1.0) || !spread.is_finite() {
        return Err(Error::InvalidParameter("spread must be >= 1".into()));
    }
    let p = sample_pd(n, seed, spread)?;
    MatrixFile::from_matrix(p.as_matrix()).write(out)?;
    Ok(EXIT_OK)
}
