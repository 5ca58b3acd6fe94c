//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification or consistency failure, 2 usage
//! error or invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::formula::count_closed;
use crate::gluing::{count_brute, enumerate_classes, DEFAULT_CAP};
use crate::hz::{hz_from_gluing_counts, hz_sum, hz_tanh, HzIndex};
use crate::recursion::{count_recursive, CountTable, SharedCountTable};
use crate::series::DEFAULT_ORDER;
use crate::verify::{self, Level};
use crate::{BigCount, Error, Execution, SurfaceSignature};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gluecount",
    version,
    about = "Exact counts of polygon edge gluings"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count gluings realising a surface with the given boundaries.
    Count(CountArgs),
    /// Harer-Zagier number ε_g(N).
    Hz(HzArgs),
    /// Closed-form counts for every signature within bounds.
    Table(TableArgs),
    /// Dump every gluing class of an N-gon with free labels 1..k.
    Enumerate(EnumerateArgs),
    /// Run the self-check suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum CountMethod {
    Closed,
    Recursive,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HzMethod {
    Sum,
    Series,
    Gluing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
struct ExecArgs {
    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

impl ExecArgs {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long)]
    genus: usize,
    /// Boundary sizes, comma separated; 0 marks a puncture.
    #[arg(long, value_delimiter = ',', required = true)]
    holes: Vec<usize>,
    #[arg(long, value_enum, default_value = "closed")]
    method: CountMethod,
    /// Largest polygon the brute-force method may enumerate.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Memo file for the recursive method, read then rewritten.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Debug, Args)]
struct HzArgs {
    #[arg(long)]
    genus: usize,
    #[arg(long = "N", value_name = "N")]
    n: usize,
    #[arg(long, value_enum, default_value = "sum")]
    method: HzMethod,
}

#[derive(Debug, Args)]
struct TableArgs {
    #[arg(long)]
    max_genus: usize,
    #[arg(long)]
    max_holes: usize,
    #[arg(long)]
    max_n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also compute every row by recursion through this memo file and
    /// save it.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    /// Polygon size.
    #[arg(long = "N", value_name = "N")]
    n: usize,
    /// Number of free labels; defaults to 0 for even N and 1 for odd N.
    #[arg(long)]
    free: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    level: LevelArg,
    #[command(flatten)]
    exec: ExecArgs,
}

#[derive(Debug, Serialize)]
struct OutputRecord<'a> {
    g: usize,
    ns: &'a [usize],
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    method: Option<CountMethod>,
}

/// Failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InexactDivision(_)
            | Error::MemoConflict { .. }
            | Error::Topology(_)
            | Error::CacheMismatch { .. } => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            msg: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Error::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        msg: msg.into(),
    }
}

type CmdResult = std::result::Result<u8, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Count(a) => cmd_count(&a, out),
        Command::Hz(a) => cmd_hz(&a, out),
        Command::Table(a) => cmd_table(&a, out),
        Command::Enumerate(a) => cmd_enumerate(&a, out),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}

fn with_cache<T>(
    path: &Path,
    f: impl FnOnce(&SharedCountTable) -> std::result::Result<T, Failure>,
) -> std::result::Result<T, Failure> {
    let shared = SharedCountTable::new(CountTable::load(path)?);
    let value = f(&shared)?;
    shared.into_inner().save(path)?;
    Ok(value)
}

fn cmd_count(a: &CountArgs, out: &mut dyn Write) -> CmdResult {
    let sig = SurfaceSignature::new(a.genus, a.holes.clone())?;
    if a.cache.is_some() && a.method != CountMethod::Recursive {
        return Err(usage("--cache applies only to --method recursive"));
    }
    let count = match a.method {
        CountMethod::Closed => count_closed(&sig)?,
        CountMethod::Brute => count_brute(&sig, a.cap, a.exec.execution())?,
        CountMethod::Recursive => match &a.cache {
            Some(path) => with_cache(path, |memo| {
                let mut memo = memo;
                Ok(count_recursive(&sig, &mut memo)?)
            })?,
            None => count_recursive(&sig, &mut CountTable::new())?,
        },
    };
    let record = OutputRecord {
        g: sig.genus(),
        ns: sig.boundary_sizes(),
        count: count.to_string(),
        method: Some(a.method),
    };
    match a.format {
        Format::Text => writeln!(out, "{count}")?,
        Format::Csv => {
            writeln!(out, "g,ns,count,method")?;
            writeln!(
                out,
                "{},{},{},{}",
                record.g,
                join_ns(record.ns),
                record.count,
                method_name(a.method)
            )?;
        }
        Format::Json => writeln!(out, "{}", to_json(&record))?,
    }
    Ok(EXIT_OK)
}

fn method_name(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Closed => "closed",
        CountMethod::Recursive => "recursive",
        CountMethod::Brute => "brute",
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain records serialize")
}

fn join_ns(ns: &[usize]) -> String {
    ns.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

fn cmd_hz(a: &HzArgs, out: &mut dyn Write) -> CmdResult {
    let idx = HzIndex::new(a.genus, a.n);
    let value = match a.method {
        HzMethod::Sum => hz_sum(idx)?,
        HzMethod::Series => hz_tanh(idx, DEFAULT_ORDER.max(2 * a.genus))?,
        HzMethod::Gluing => hz_from_gluing_counts(idx)?,
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

/// Signatures with non-increasing sizes within bounds, sorted by `(g, ns)`.
fn table_signatures(max_genus: usize, max_holes: usize, max_n: usize) -> Vec<SurfaceSignature> {
    let mut sigs: Vec<SurfaceSignature> = verify::ordered_signatures(max_genus, max_holes, max_n)
        .into_iter()
        .filter(|s| s.boundary_sizes().windows(2).all(|w| w[0] >= w[1]))
        .collect();
    sigs.sort_by(|a, b| (a.genus(), a.boundary_sizes()).cmp(&(b.genus(), b.boundary_sizes())));
    sigs
}

fn cmd_table(a: &TableArgs, out: &mut dyn Write) -> CmdResult {
    if a.format == Format::Text {
        return Err(usage("table supports --format csv or json"));
    }
    let exec = a.exec.execution();
    let sigs = table_signatures(a.max_genus, a.max_holes, a.max_n);
    let counts = exec
        .map(&sigs, count_closed)
        .into_iter()
        .collect::<crate::Result<Vec<BigCount>>>()?;

    if let Some(path) = &a.cache {
        with_cache(path, |memo| {
            let recursive = exec.map(&sigs, |sig| {
                let mut handle = memo;
                count_recursive(sig, &mut handle)
            });
            for ((sig, closed), rec) in sigs.iter().zip(&counts).zip(recursive) {
                let rec = rec?;
                if &rec != closed {
                    return Err(Failure {
                        code: EXIT_FAILURE,
                        msg: format!("{sig}: closed form {closed}, recursion {rec}"),
                    });
                }
            }
            Ok(())
        })?;
    }

    let mut text = String::new();
    match a.format {
        Format::Csv => {
            text.push_str("g,ns,count\n");
            for (sig, count) in sigs.iter().zip(&counts) {
                let _ = writeln!(
                    text,
                    "{},{},{count}",
                    sig.genus(),
                    join_ns(sig.boundary_sizes())
                );
            }
        }
        _ => {
            let records: Vec<OutputRecord> = sigs
                .iter()
                .zip(&counts)
                .map(|(sig, count)| OutputRecord {
                    g: sig.genus(),
                    ns: sig.boundary_sizes(),
                    count: count.to_string(),
                    method: None,
                })
                .collect();
            text = serde_json::to_string_pretty(&records).expect("plain records serialize");
            text.push('\n');
        }
    }
    match &a.out {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn cmd_enumerate(a: &EnumerateArgs, out: &mut dyn Write) -> CmdResult {
    if a.n > a.cap {
        return Err(Error::CapExceeded {
            size: a.n,
            cap: a.cap,
        }
        .into());
    }
    let free = a.free.unwrap_or(a.n % 2);
    if free >= 0x80 {
        return Err(usage("at most 127 free labels"));
    }
    let labels: Vec<u16> = (1..=free as u16).collect();
    let mut text = String::new();
    for (canon, surface) in enumerate_classes(a.n, &labels, a.exec.execution())? {
        let boundaries = surface
            .boundary_cycles
            .iter()
            .map(|c| {
                let inner = c.iter().map(u16::to_string).collect::<Vec<_>>().join(",");
                format!("({inner})")
            })
            .collect::<String>();
        let _ = writeln!(
            text,
            "canon={canon};g={};boundaries=[{boundaries}];punctures={}",
            surface.genus, surface.puncture_count
        );
    }
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let level = match a.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let reports = verify::run(level, a.exec.execution())?;
    for report in &reports {
        writeln!(out, "{report}")?;
    }
    Ok(if reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAILURE
    })
}
