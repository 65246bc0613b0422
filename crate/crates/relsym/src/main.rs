//! Command-line front end: dimension queries, character tables, generating
//! function expansion, cross-method verification sweeps, and positivity scans.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments,
//! 3 rank-oracle basis cap exceeded.

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde::Serialize;

use relsym::dihedral::CharacterId;
use relsym::dims::{
    basis_extract, dim_char_sum, dim_closed_form, dim_rank, DimensionRecord, Method,
};
use relsym::error::Error;
use relsym::gfs::{generating_function, paper_discrepancy_report};
use relsym::verify::{
    run_verify_with, scan_positivity, select_characters, VerifyConfig, VerifyReport,
};

/// Inclusive integer range: "a..b" or a single value.
#[derive(Debug, Clone, Copy)]
struct Range {
    lo: u64,
    hi: u64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse = |t: &str| t.parse::<u64>().map_err(|_| format!("invalid range `{s}`"));
        if let Some((a, b)) = s.split_once("..") {
            let (lo, hi) = (parse(a)?, parse(b)?);
            if lo > hi {
                return Err(format!("empty range `{s}`"));
            }
            Ok(Range { lo, hi })
        } else {
            let v = parse(s)?;
            Ok(Range { lo: v, hi: v })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    ClosedForm,
    CharSum,
    Rank,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::ClosedForm => Method::ClosedForm,
            MethodArg::CharSum => Method::CharSum,
            MethodArg::Rank => Method::Rank,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "relsym",
    about = "Exact dimensions of relative symmetric polynomial spaces for dihedral groups"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "plain")]
    format: Format,

    /// Worker threads for grid commands (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute dim H_d(D_n, chi)
    Dim(DimArgs),
    /// Dimension table over all characters of D_n
    Table(TableArgs),
    /// Generating-function coefficients for (n, chi)
    Series(SeriesArgs),
    /// Cross-method verification sweep over an (n, d) grid
    Verify(VerifyArgs),
    /// Report all zero-dimension cells with d >= 1
    ScanPositivity(ScanArgs),
}

#[derive(Args, Debug)]
struct DimArgs {
    /// Group parameter n or inclusive range a..b
    #[arg(long)]
    n: Range,
    /// Degree d or inclusive range a..b
    #[arg(long)]
    d: Range,
    /// Character selector: chi1|chi2|chi3|chi4|psi:<h>|psi|all
    #[arg(long, default_value = "all")]
    char: String,
    /// Engine to use
    #[arg(long, value_enum, default_value = "closed-form")]
    method: MethodArg,
    /// Monomial-basis cap for the rank engine
    #[arg(long, default_value_t = relsym::dims::DEFAULT_RANK_CAP)]
    cap: u64,
    /// Also print an explicit basis of the component (rank engine)
    #[arg(long)]
    basis: bool,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: u64,
    /// Largest degree to tabulate
    #[arg(long)]
    dmax: u64,
    /// Append the isotypic-completeness checksum column C(n+d-1, n-1)
    #[arg(long)]
    checksum: bool,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[arg(long)]
    n: u64,
    /// Character selector (single character)
    #[arg(long, default_value = "chi1")]
    char: String,
    /// Truncation order (inclusive)
    #[arg(long)]
    order: usize,
    /// Diff the published closed forms instead (even n)
    #[arg(long)]
    paper_form: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value = "3..8")]
    n: Range,
    #[arg(long, default_value = "0..10")]
    d: Range,
    /// Run the rank oracle on every cell under the cap (on by default)
    #[arg(long, default_value_t = true)]
    with_rank: bool,
    /// Monomial-basis cap for the rank oracle
    #[arg(long, default_value_t = 120)]
    cap: u64,
    /// Test hook: corrupt one closed-form cell to exercise the failure path
    #[arg(long, hide = true)]
    selftest_corrupt: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value = "3..8")]
    n: Range,
    #[arg(long, default_value = "1..10")]
    d: Range,
    /// Character selector: chi1|..|psi:<h>|psi|all
    #[arg(long, default_value = "all")]
    char: String,
}

fn compute_dim(n: u64, d: u64, chi: &CharacterId, method: Method, cap: u64) -> relsym::Result<u64> {
    let v: BigInt = match method {
        Method::ClosedForm => dim_closed_form(n, d, chi)?,
        Method::CharSum => dim_char_sum(n, d, chi)?,
        Method::Rank => dim_rank(n, d, chi, cap)?,
    };
    v.try_into()
        .map_err(|_| Error::Inconsistency("dimension exceeds u64".into()))
}

fn emit_records(records: &[DimensionRecord], format: Format) {
    match format {
        Format::Plain => {
            for r in records {
                println!(
                    "n={} d={} char={} method={} dim={}",
                    r.n, r.d, r.character, r.method, r.dim
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string(records).unwrap()),
        Format::Csv => {
            println!("n,d,char,dim,method");
            for r in records {
                println!("{},{},{},{},{}", r.n, r.d, r.character, r.dim, r.method);
            }
        }
    }
}

fn cmd_dim(args: &DimArgs, format: Format) -> Result<(), Error> {
    let mut records = Vec::new();
    for n in args.n.lo..=args.n.hi {
        for chi in select_characters(n, &args.char)? {
            for d in args.d.lo..=args.d.hi {
                let dim = compute_dim(n, d, &chi, args.method.into(), args.cap)?;
                records.push(DimensionRecord {
                    n,
                    d,
                    character: chi.name(),
                    dim,
                    method: args.method.into(),
                });
                if args.basis {
                    let basis = basis_extract(n, d, &chi, args.cap)?;
                    for (i, poly) in basis.iter().enumerate() {
                        let terms: Vec<String> = poly
                            .terms
                            .iter()
                            .map(|(m, c)| {
                                let mono: Vec<String> = m
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, e)| **e > 0)
                                    .map(|(v, e)| format!("x{}^{}", v + 1, e))
                                    .collect();
                                let mono = if mono.is_empty() { "1".into() } else { mono.join("*") };
                                format!("({:?})*{mono}", c.coeffs())
                            })
                            .collect();
                        eprintln!("# basis[{i}] = {}", terms.join(" + "));
                    }
                }
            }
        }
    }
    emit_records(&records, format);
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    d: u64,
    values: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checksum: Option<u64>,
}

#[derive(Serialize)]
struct TableReport {
    n: u64,
    columns: Vec<String>,
    rows: Vec<TableRow>,
}

fn cmd_table(args: &TableArgs, format: Format) -> Result<(), Error> {
    let chars = relsym::dihedral::irreducible_characters(args.n)?;
    let columns: Vec<String> = chars.iter().map(|c| c.name()).collect();
    let mut rows = Vec::new();
    for d in 0..=args.dmax {
        let values = chars
            .iter()
            .map(|chi| compute_dim(args.n, d, chi, Method::ClosedForm, u64::MAX))
            .collect::<Result<Vec<u64>, _>>()?;
        let checksum = if args.checksum {
            let total: BigInt = relsym::dims::MonomialBasis::size(args.n, d);
            Some(
                total
                    .try_into()
                    .map_err(|_| Error::Inconsistency("checksum exceeds u64".into()))?,
            )
        } else {
            None
        };
        rows.push(TableRow { d, values, checksum });
    }
    let report = TableReport { n: args.n, columns, rows };
    match format {
        Format::Plain => {
            print!("d");
            for c in &report.columns {
                print!("\t{c}");
            }
            if args.checksum {
                print!("\tchecksum");
            }
            println!();
            for row in &report.rows {
                print!("{}", row.d);
                for v in &row.values {
                    print!("\t{v}");
                }
                if let Some(c) = row.checksum {
                    print!("\t{c}");
                }
                println!();
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
        Format::Csv => {
            let mut header = vec!["d".to_string()];
            header.extend(report.columns.iter().cloned());
            if args.checksum {
                header.push("checksum".into());
            }
            println!("{}", header.join(","));
            for row in &report.rows {
                let mut fields = vec![row.d.to_string()];
                fields.extend(row.values.iter().map(|v| v.to_string()));
                if let Some(c) = row.checksum {
                    fields.push(c.to_string());
                }
                println!("{}", fields.join(","));
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesReport {
    n: u64,
    #[serde(rename = "char")]
    character: String,
    order: usize,
    coefficients: Vec<u64>,
}

fn cmd_series(args: &SeriesArgs, format: Format) -> Result<(), Error> {
    if args.paper_form {
        let report = paper_discrepancy_report(args.n, args.order)?;
        match format {
            Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
            Format::Csv => {
                println!("char,degree,printed,correct");
                for c in &report.characters {
                    if let Some(div) = &c.first_divergence {
                        println!("{},{},{},{}", c.character, div.degree, div.printed, div.correct);
                    } else {
                        println!("{},,,", c.character);
                    }
                }
            }
            Format::Plain => {
                for c in &report.characters {
                    match &c.first_divergence {
                        Some(div) => println!(
                            "{}: first divergence at d={} (printed {}, correct {})",
                            c.character, div.degree, div.printed, div.correct
                        ),
                        None => println!("{}: no divergence up to order {}", c.character, report.order),
                    }
                }
            }
        }
        return Ok(());
    }
    let chi = CharacterId::parse(args.n, &args.char)?;
    let series = generating_function(args.n, &chi, args.order)?;
    let coefficients = series
        .coeffs()
        .iter()
        .map(|c| {
            if !c.is_integer() {
                return Err(Error::Inconsistency(format!("non-integer coefficient {c}")));
            }
            c.to_integer()
                .try_into()
                .map_err(|_| Error::Inconsistency("coefficient exceeds u64".into()))
        })
        .collect::<Result<Vec<u64>, _>>()?;
    let report = SeriesReport {
        n: args.n,
        character: chi.name(),
        order: args.order,
        coefficients,
    };
    match format {
        Format::Plain => {
            let joined: Vec<String> = report.coefficients.iter().map(|c| c.to_string()).collect();
            println!("[{}]", joined.join(", "));
        }
        Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
        Format::Csv => {
            println!("d,coefficient");
            for (d, c) in report.coefficients.iter().enumerate() {
                println!("{d},{c}");
            }
        }
    }
    Ok(())
}

fn emit_verify(report: &VerifyReport, format: Format) {
    match format {
        Format::Plain => {
            println!(
                "checked {} cells ({} with rank oracle): {}",
                report.cells,
                report.rank_cells,
                if report.all_pass() { "all agree" } else { "MISMATCH" }
            );
            for f in &report.failures {
                println!(
                    "mismatch n={} d={} char={} expected={} got={} oracle={}",
                    f.n, f.d, f.character, f.expected, f.got, f.oracle
                );
            }
        }
        Format::Json => println!("{}", serde_json::to_string(report).unwrap()),
        Format::Csv => {
            println!("n,d,char,expected,got,oracle");
            for f in &report.failures {
                println!(
                    "{},{},{},{},{},{}",
                    f.n, f.d, f.character, f.expected, f.got, f.oracle
                );
            }
        }
    }
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<bool, Error> {
    let cfg = VerifyConfig {
        n_range: (args.n.lo, args.n.hi),
        d_range: (args.d.lo, args.d.hi),
        with_rank: args.with_rank,
        rank_cap: args.cap,
    };
    let report = if args.selftest_corrupt {
        run_verify_with(&cfg, &relsym::verify::corrupted_closed_form)?
    } else {
        run_verify_with(&cfg, &dim_closed_form)?
    };
    emit_verify(&report, format);
    Ok(report.all_pass())
}

fn cmd_scan(args: &ScanArgs, format: Format) -> Result<(), Error> {
    let report = scan_positivity((args.n.lo, args.n.hi), (args.d.lo, args.d.hi), Some(&args.char))?;
    match format {
        Format::Plain => {
            println!("scanned {} cells, {} zeros", report.cells, report.zeros.len());
            for z in &report.zeros {
                println!("zero n={} d={} char={}", z.n, z.d, z.character);
            }
        }
        Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
        Format::Csv => {
            println!("n,d,char");
            for z in &report.zeros {
                println!("{},{},{}", z.n, z.d, z.character);
            }
        }
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::BasisCapExceeded { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // ignore failure if a pool already exists (e.g. repeated init in tests)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    let outcome = match &cli.command {
        Command::Dim(args) => cmd_dim(args, cli.format).map(|_| true),
        Command::Table(args) => cmd_table(args, cli.format).map(|_| true),
        Command::Series(args) => cmd_series(args, cli.format).map(|_| true),
        Command::Verify(args) => cmd_verify(args, cli.format),
        Command::ScanPositivity(args) => cmd_scan(args, cli.format).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
