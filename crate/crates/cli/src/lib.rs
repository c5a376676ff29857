//! Command-line front end for `ksym-core`.
//!
//! Three commands: `analyze` runs the full pipeline on one pair, `verify-table`
//! regenerates classification rows and checks each verdict, and `catalog`
//! lists the built-in algebras.

pub mod report;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use ksym_core::analysis::analyze_pair;
use ksym_core::automorphism::{make_automorphism, FiniteOrderAutomorphism, MAX_ORDER};
use ksym_core::catalog::{
    generate_table_rows, inner_automorphism_from_torus, lookup, parse_name,
    permutation_automorphism, summary, TableRow, TorusWeights, LISTED,
};
use ksym_core::{Error, Exact, LieAlgebra};

pub use report::{AnalysisReport, CatalogRow, ChecksReport};

#[derive(Parser, Debug)]
#[command(
    name = "ksym",
    version,
    about = "Symplectic k-symmetric pairs of classical Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyze one (algebra, automorphism) pair.
    Analyze(AnalyzeArgs),
    /// Regenerate classification table rows and check every verdict.
    VerifyTable(VerifyTableArgs),
    /// List the built-in algebras.
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Catalog name, e.g. su3, so5, sp2, sl3r.
    #[arg(long)]
    pub algebra: String,
    /// Order k of the automorphism.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=MAX_ORDER as i64))]
    pub order: u32,
    /// Torus weights w1,w2,… (one per diagonal entry, or per rotation block for so and sl).
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        conflicts_with = "permutation",
        required_unless_present = "permutation"
    )]
    pub weights: Option<Vec<i64>>,
    /// Cyclic permutation of this many copies of the algebra.
    #[arg(long)]
    pub permutation: Option<usize>,
    /// Write the JSON report to this path (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Zero tolerance for the floating-point fallback.
    #[arg(long)]
    pub tolerance: Option<f64>,
}

#[derive(Args, Debug)]
pub struct VerifyTableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub table: u8,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub max_rank: u8,
    /// Write the JSON array of reports to this path (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    /// Write the listing as JSON to this path (`-` for standard output).
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Keep only entries whose name contains this string.
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Math(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {}", m),
            CliError::Math(e) => write!(f, "math error: {}", e),
            CliError::Io(m) => write!(f, "io error: {}", m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

/// Exit status of a successful run: 0, or 1 on a verification mismatch.
pub type Status = u8;

pub fn run(cli: Cli) -> Result<Status, CliError> {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(&a).map(|_| 0),
        Command::VerifyTable(a) => cmd_verify_table(&a),
        Command::Catalog(a) => cmd_catalog(&a).map(|_| 0),
    }
}

fn is_stdout(p: &std::path::Path) -> bool {
    p.as_os_str() == "-"
}

fn emit_json<T: serde::Serialize>(target: &std::path::Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    text.push('\n');
    if is_stdout(target) {
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))
    } else {
        std::fs::write(target, text)
            .map_err(|e| CliError::Io(format!("{}: {}", target.display(), e)))
    }
}

/// Human output goes to stderr when JSON occupies stdout.
fn human(json: &Option<PathBuf>, text: &str) {
    if json.as_deref().is_some_and(is_stdout) {
        eprint!("{}", text);
    } else {
        print!("{}", text);
    }
}

enum Pair {
    Exact(FiniteOrderAutomorphism<Exact>),
    Float(FiniteOrderAutomorphism<f64>),
}

fn build_pair(args: &AnalyzeArgs) -> Result<(String, Pair), CliError> {
    let Some((series, n)) = parse_name(&args.algebra) else {
        return Err(CliError::Usage(format!(
            "unknown algebra '{}'; see `ksym catalog`",
            args.algebra
        )));
    };
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Usage(format!(
                "tolerance must be positive, got {}",
                t
            )));
        }
    }
    let k = args.order;
    let entry = lookup::<Exact>(&args.algebra)?;
    if let Some(copies) = args.permutation {
        if copies as u32 != k {
            return Err(CliError::Usage(format!(
                "--permutation {} has order {}, not {}",
                copies, copies, k
            )));
        }
        let (_, nu) = permutation_automorphism(&entry, copies)?;
        return Ok((
            format!(
                "{}^{} with cyclic permutation, order {}",
                entry.name, copies, k
            ),
            Pair::Exact(nu),
        ));
    }
    let weights = args.weights.as_deref().unwrap_or_default();
    let expected = series.weight_count(n);
    if weights.len() != expected {
        return Err(CliError::Usage(format!(
            "{} takes {} weights, got {}",
            entry.name,
            expected,
            weights.len()
        )));
    }
    let tw = TorusWeights::new(weights, k);
    let input = format!("{}, Ad(torus {})", entry.name, tw);
    let check_order = |actual: u32| {
        if actual == k {
            Ok(())
        } else {
            Err(Error::WrongOrder {
                claimed: k,
                actual: Some(actual),
            })
        }
    };
    match inner_automorphism_from_torus(&entry, &tw) {
        Ok(nu) => {
            check_order(nu.order())?;
            Ok((input, Pair::Exact(nu)))
        }
        Err(Error::Inexact { .. }) => {
            let fentry = lookup::<f64>(&args.algebra)?;
            let nu = inner_automorphism_from_torus(&fentry, &tw)?;
            check_order(nu.order())?;
            let nu = match args.tolerance {
                Some(t) => {
                    let alg = Arc::new(LieAlgebra::clone(&fentry.algebra).with_tolerance(t));
                    make_automorphism(alg, nu.matrix().clone(), k)?
                }
                None => nu,
            };
            Ok((input, Pair::Float(nu)))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<AnalysisReport, CliError> {
    let (input, pair) = build_pair(args)?;
    let start = Instant::now();
    let report = match &pair {
        Pair::Exact(nu) => {
            let a = analyze_pair(nu)?;
            AnalysisReport::from_analysis(input, &a, start.elapsed().as_millis() as u64)
        }
        Pair::Float(nu) => {
            let a = analyze_pair(nu)?;
            AnalysisReport::from_analysis(input, &a, start.elapsed().as_millis() as u64)
        }
    };
    human(&args.json, &report.summary());
    if let Some(path) = &args.json {
        emit_json(path, &report)?;
    }
    Ok(report)
}

/// Worker count: `KSYM_THREADS` if set, else the available parallelism.
pub fn worker_count() -> Result<usize, CliError> {
    match std::env::var("KSYM_THREADS") {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Usage(format!(
                "KSYM_THREADS must be a positive integer, got '{}'",
                v
            ))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn row_input(r: &TableRow<Exact>) -> String {
    format!(
        "table {}: {} | {} | {} [{}]",
        r.table,
        r.group,
        r.isotropy,
        r.construction,
        r.params_string()
    )
}

fn check_row(r: &TableRow<Exact>) -> (Result<AnalysisReport, Error>, bool) {
    let start = Instant::now();
    match analyze_pair(&r.nu) {
        Ok(a) => {
            let report =
                AnalysisReport::from_analysis(row_input(r), &a, start.elapsed().as_millis() as u64);
            let ok = report.symplectic == r.expected_symplectic
                && (!report.symplectic || a.verdict.checks.all());
            (Ok(report), ok)
        }
        Err(e) => (Err(e), false),
    }
}

/// Runs `f` on every row with up to `threads` workers; results come back in
/// row order.
fn fan_out<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let mut done: Vec<(usize, R)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..threads.clamp(1, items.len().max(1)))
            .map(|_| {
                s.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(item) = items.get(i) else { break };
                        out.push((i, f(item)));
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    done.sort_by_key(|(i, _)| *i);
    done.into_iter().map(|(_, r)| r).collect()
}

pub fn cmd_verify_table(args: &VerifyTableArgs) -> Result<Status, CliError> {
    let threads = worker_count()?;
    let rows = generate_table_rows::<Exact>(args.table, args.max_rank as usize)?;
    let results = fan_out(&rows, threads, check_row);
    let mut reports = Vec::new();
    let mut passed = 0;
    let mut text = String::new();
    for (i, (row, (res, ok))) in rows.iter().zip(results).enumerate() {
        let tag = if ok { "PASS" } else { "FAIL" };
        passed += ok as usize;
        let outcome = match &res {
            Ok(r) => format!(
                "{} (expected {})",
                verdict_word(r.symplectic),
                verdict_word(row.expected_symplectic)
            ),
            Err(e) => format!("error {}", e),
        };
        text.push_str(&format!(
            "{} {:>3} {} | {} | {} | signature {:?}: {}\n",
            tag,
            i + 1,
            row.group,
            row.isotropy,
            row.construction,
            row.killing_signature,
            outcome
        ));
        if let Ok(r) = res {
            reports.push(r);
        }
    }
    text.push_str(&format!(
        "table {}, rank <= {}: {}/{} rows match\n",
        args.table,
        args.max_rank,
        passed,
        rows.len()
    ));
    human(&args.json, &text);
    if let Some(path) = &args.json {
        emit_json(path, &reports)?;
    }
    Ok(if passed == rows.len() { 0 } else { 1 })
}

fn verdict_word(b: bool) -> &'static str {
    if b {
        "symplectic"
    } else {
        "not symplectic"
    }
}

pub fn catalog_rows(filter: Option<&str>) -> Result<Vec<CatalogRow>, CliError> {
    let mut out = Vec::new();
    for name in LISTED {
        let entry = lookup::<Exact>(name)?;
        let s = summary(&entry)?;
        if filter.is_some_and(|f| !s.short_name.contains(f) && !s.name.contains(f)) {
            continue;
        }
        out.push(CatalogRow {
            name: s.name,
            short_name: s.short_name,
            dim: s.dim,
            simple: s.simple,
            involutions: s.involutions,
        });
    }
    Ok(out)
}

pub fn cmd_catalog(args: &CatalogArgs) -> Result<Vec<CatalogRow>, CliError> {
    let rows = catalog_rows(args.filter.as_deref())?;
    let mut text = String::new();
    for r in &rows {
        text.push_str(&format!(
            "{:<6} {:<9} dim {:>2}  {}  involutions: {}\n",
            r.short_name,
            r.name,
            r.dim,
            if r.simple { "simple" } else { "not simple" },
            r.involutions.join(", ")
        ));
    }
    human(&args.json, &text);
    if let Some(path) = &args.json {
        emit_json(path, &rows)?;
    }
    Ok(rows)
}
