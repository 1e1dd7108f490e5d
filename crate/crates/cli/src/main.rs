//! `stirling`: exact coefficient tables, series listings and identity checks
//! for the asymptotic expansion of the factorial.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::builder::RangedU64ValueParser;
use clap::{Parser, Subcommand, ValueEnum};

use stirling_core::asymptotic::{approx_factorial, ApproxReport, DEFAULT_PRECISION, MIN_PRECISION};
use stirling_core::coefficients::{a_table, b_series, c_series, CoeffTable, Method};
use stirling_core::combinatorics::{AssocKind, AssocTable};
use stirling_core::identities::verify_all;
use stirling_core::series::{normalized_exp_tail, normalized_log_tail};
use stirling_core::{Error, Execution, TruncatedSeries};

#[derive(Parser, Debug)]
#[command(
    name = "stirling",
    version,
    about = "Exact coefficients of the asymptotic expansion of n!"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Table of a_k for k <= max, one column per method.
    Coeffs {
        #[arg(long, default_value_t = 10)]
        max: usize,
        /// `all` or a comma-separated list of method names.
        #[arg(long, default_value = "all", value_parser = parse_methods)]
        methods: MethodList,
    },
    /// Ordinary coefficients of B, C, G or L.
    Series {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
    /// Run every identity and cross-method check; exit 1 on any failure.
    Verify {
        #[arg(long, default_value_t = 12)]
        max: usize,
    },
    /// Truncated expansion of n! against the exact value.
    Approx {
        /// Comma-separated list of n.
        #[arg(long, value_delimiter = ',', required = true, value_parser = clap::value_parser!(u64).range(1..))]
        n: Vec<u64>,
        /// Truncation order N: uses a_0..=a_N.
        #[arg(long, default_value_t = 3)]
        terms: usize,
        /// Working precision in bits.
        #[arg(long, env = "STIRLING_PRECISION", default_value_t = DEFAULT_PRECISION,
              value_parser = RangedU64ValueParser::<usize>::new().range(MIN_PRECISION as u64..))]
        precision: usize,
    },
    /// Associated Stirling numbers of the second kind or associated derangement numbers.
    Comb {
        #[arg(long, default_value = "partition", value_parser = parse_kind)]
        kind: AssocKind,
        #[arg(long, default_value_t = 3, value_parser = RangedU64ValueParser::<usize>::new().range(1..))]
        r: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "G", alias = "g")]
    G,
    #[value(name = "L", alias = "l")]
    L,
}

#[derive(Clone, Debug)]
struct MethodList(Vec<Method>);

fn parse_methods(s: &str) -> std::result::Result<MethodList, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(MethodList(Method::ALL.to_vec()));
    }
    let mut methods = Vec::new();
    for name in s.split(',').map(str::trim) {
        let m: Method = name.parse().map_err(|_| {
            let known: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
            format!(
                "unknown method {name:?}; expected `all` or some of: {}",
                known.join(", ")
            )
        })?;
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    Ok(MethodList(methods))
}

fn parse_kind(s: &str) -> std::result::Result<AssocKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit status 2 for errors caused by the arguments, 1 for everything else.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::InvalidArgument(_) | Error::Parse(_) | Error::IndexOutOfRange { .. }) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Returns `false` when a check ran to completion but failed.
fn run(cli: &Cli) -> Result<bool> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let ok = match &cli.command {
        Command::Coeffs { max, methods } => coeffs(&mut out, cli.format, *max, &methods.0, exec)?,
        Command::Series { which, order } => series(&mut out, cli.format, *which, *order)?,
        Command::Verify { max } => verify(&mut out, cli.format, *max, exec)?,
        Command::Approx {
            n,
            terms,
            precision,
        } => approx(&mut out, cli.format, n, *terms, *precision)?,
        Command::Comb { kind, r, max_n } => comb(&mut out, cli.format, *kind, *r, *max_n)?,
    };
    out.flush()?;
    Ok(ok)
}

fn coeffs(
    out: &mut dyn Write,
    format: Format,
    max: usize,
    methods: &[Method],
    exec: Execution,
) -> Result<bool> {
    let tables: Vec<CoeffTable> = methods.iter().map(|&m| a_table(m, max, exec)).collect();
    let agree: Vec<bool> = (0..=max)
        .map(|k| tables.iter().all(|t| t.get(k) == tables[0].get(k)))
        .collect();
    match format {
        Format::Csv => {
            let names: Vec<&str> = methods.iter().map(|m| m.name()).collect();
            writeln!(out, "k,{},agree", names.join(","))?;
            for (k, agreed) in agree.iter().enumerate() {
                let row: Vec<String> = tables.iter().map(|t| t.values[k].to_string()).collect();
                writeln!(out, "{k},{},{agreed}", row.join(","))?;
            }
        }
        Format::Json => {
            let doc = serde_json::json!({ "max": max, "tables": tables, "agree": agree });
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Format::Plain => {
            for (k, &agreed) in agree.iter().enumerate() {
                if agreed {
                    writeln!(
                        out,
                        "a_{k} = {}  ({} methods agree)",
                        tables[0].values[k],
                        tables.len()
                    )?;
                } else {
                    writeln!(out, "a_{k}: methods disagree")?;
                    for t in &tables {
                        writeln!(out, "  {:<18} {}", t.method.name(), t.values[k])?;
                    }
                }
            }
        }
    }
    Ok(agree.iter().all(|&a| a))
}

fn series(out: &mut dyn Write, format: Format, which: Which, order: usize) -> Result<bool> {
    let (name, s): (&str, TruncatedSeries) = match which {
        Which::B => ("B", b_series(order)),
        Which::C => ("C", c_series(order)),
        Which::G => ("G", normalized_exp_tail(order)),
        Which::L => ("L", normalized_log_tail(order)),
    };
    match format {
        Format::Plain => writeln!(out, "{name}(x) = {s}")?,
        Format::Csv => {
            writeln!(out, "power,coeff")?;
            for (i, c) in s.coeffs().iter().enumerate() {
                writeln!(out, "{i},{c}")?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, &s)?;
            writeln!(out)?;
        }
    }
    Ok(true)
}

fn verify(out: &mut dyn Write, format: Format, max: usize, exec: Execution) -> Result<bool> {
    let report = verify_all(max, exec)?;
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report)?;
            writeln!(out)?;
        }
        Format::Csv => {
            writeln!(out, "check,lo,hi,failures")?;
            for r in &report.identities {
                writeln!(
                    out,
                    "{},{},{},{}",
                    r.identity,
                    r.range.0,
                    r.range.1,
                    r.failures.len()
                )?;
            }
            let a = &report.agreement;
            writeln!(
                out,
                "coefficient-agreement,0,{},{}",
                a.kmax,
                a.disagreements.len()
            )?;
        }
        Format::Plain => {
            for r in &report.identities {
                let (lo, hi) = r.range;
                match r.failures.first() {
                    None => writeln!(out, "PASS {} [{lo}, {hi}]", r.identity)?,
                    Some(f) => writeln!(
                        out,
                        "FAIL {} [{lo}, {hi}]: {} failures, first at {}: {} vs {}",
                        r.identity,
                        r.failures.len(),
                        f.index,
                        f.left,
                        f.right
                    )?,
                }
            }
            let a = &report.agreement;
            match a.disagreements.first() {
                None => writeln!(
                    out,
                    "PASS coefficient-agreement [0, {}]: {} methods, {} checks",
                    a.kmax,
                    a.a_tables.len(),
                    a.checks.len()
                )?,
                Some(d) => writeln!(
                    out,
                    "FAIL coefficient-agreement: {} at {}: {} vs {}",
                    d.check, d.index, d.left, d.right
                )?,
            }
        }
    }
    let ok = report.all_hold();
    if !ok {
        eprintln!("verification failed");
    }
    Ok(ok)
}

fn approx(
    out: &mut dyn Write,
    format: Format,
    ns: &[u64],
    terms: usize,
    precision: usize,
) -> Result<bool> {
    let reports = ns
        .iter()
        .map(|&n| approx_factorial(n, terms, precision))
        .collect::<stirling_core::Result<Vec<_>>>()?;
    match format {
        Format::Csv => {
            writeln!(out, "{}", ApproxReport::CSV_HEADER)?;
            for r in &reports {
                writeln!(out, "{}", r.csv_row())?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &reports)?;
            writeln!(out)?;
        }
        Format::Plain => {
            for r in &reports {
                writeln!(
                    out,
                    "n = {}, N = {}: approx {}, exact {}, rel_error {}, scaled_error {}",
                    r.n,
                    r.terms,
                    r.approx.to_sci_string(20),
                    r.exact,
                    r.rel_error.to_sci_string(6),
                    r.scaled_error.to_sci_string(6)
                )?;
            }
        }
    }
    Ok(true)
}

fn comb(
    out: &mut dyn Write,
    format: Format,
    kind: AssocKind,
    r: usize,
    max_n: usize,
) -> Result<bool> {
    let table = AssocTable::new(kind, r, max_n)?;
    let rows = table.instances();
    match format {
        Format::Csv => {
            writeln!(out, "r,n,k,value")?;
            for c in &rows {
                writeln!(out, "{},{},{},{}", c.r, c.n, c.k, c.value)?;
            }
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
        Format::Plain => {
            let symbol = match kind {
                AssocKind::Partition => "S",
                AssocKind::Derangement => "d",
            };
            for c in &rows {
                writeln!(out, "{symbol}_{}({}, {}) = {}", c.r, c.n, c.k, c.value)?;
            }
        }
    }
    Ok(true)
}
