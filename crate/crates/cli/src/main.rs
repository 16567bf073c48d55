//! Command-line front end: build the compressed or ordinary commuting graph
//! of the 3x3 matrix ring over GF(p), verify the construction against the
//! brute-force oracle, and print the closed-form tables or the projective
//! incidence matrix.
//!
//! Exit codes: 0 success / verification match, 1 verification mismatch,
//! 2 usage errors (including non-prime p), 3 I/O errors. Data goes to
//! stdout (or --output), diagnostics to stderr.

#![forbid(unsafe_code)]

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ccg_core::export::{
    delta_stats, export_delta, export_gamma, export_incidence, export_lambda, GraphFormat,
    IncidenceFormat,
};
use ccg_core::gamma::gamma_stats;
use ccg_core::lambda::{check_against_tables, count_report};
use ccg_core::{
    blow_up, build_delta, build_lambda, build_tp, table1, table2, verify_gamma, verify_lambda,
    verify_m2, Error, MatrixType,
};

#[derive(Parser)]
#[command(name = "ccg", version, about = "Commuting graphs of 3x3 matrices over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and export it.
    Build(BuildArgs),
    /// Check the synthetic construction against the brute-force oracle.
    Verify(VerifyArgs),
    /// Print the closed-form vertex and neighborhood tables as JSON.
    Stats {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the incidence matrix of PG(2,p).
    Incidence {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = IncidenceFmt::Text)]
        format: IncidenceFmt,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value_t = GraphKind::Lambda)]
    graph: GraphKind,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads (default: all cores; CCG_THREADS as fallback).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    p: u64,
    /// Which comparison to run; omitted means every one supported at p.
    #[arg(long, value_enum)]
    graph: Option<VerifyKind>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Lambda,
    Gamma,
    Delta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    Lambda,
    Gamma,
    M2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Dot,
    Graphml,
    Edgelist,
    Json,
    #[value(alias = "json-stats")]
    JsonStats,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IncidenceFmt {
    Text,
    Csv,
    Pbm,
}

/// Error wrapper carrying the process exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError { code: 2, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::Io(_) => 3,
            Error::NotPrime(_) | Error::ModulusTooLarge(_) | Error::OracleRefused { .. } => 2,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError { code: 3, message: e.to_string() }
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError {
                code: 3,
                message: format!("cannot write {}: {e}", p.display()),
            })?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(std::io::stdout()))),
    }
}

fn init_threads(requested: Option<usize>) {
    let n = requested.or_else(|| {
        std::env::var("CCG_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    if let Some(n) = n {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn graph_format(f: OutputFormat) -> Option<GraphFormat> {
    match f {
        OutputFormat::Dot => Some(GraphFormat::Dot),
        OutputFormat::Graphml => Some(GraphFormat::GraphMl),
        OutputFormat::Edgelist => Some(GraphFormat::EdgeList),
        OutputFormat::Json | OutputFormat::JsonStats => None,
    }
}

fn run_build(args: BuildArgs) -> Result<(), CliError> {
    init_threads(args.threads);
    let mut out = open_output(&args.output)?;
    match args.graph {
        GraphKind::Lambda => {
            let g = build_lambda(args.p)?;
            // closed-form disagreement fails the build, whatever the format
            let report = count_report(&g)?;
            check_against_tables(&report)?;
            match graph_format(args.format) {
                Some(f) => export_lambda(&g, f, &mut out)?,
                None => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap())?;
                }
            }
        }
        GraphKind::Gamma => {
            let g = blow_up(&build_lambda(args.p)?)?;
            match graph_format(args.format) {
                Some(GraphFormat::GraphMl) => {
                    return Err(CliError::usage(
                        "graphml is not available for gamma; use dot, edgelist or json",
                    ))
                }
                Some(f) => export_gamma(&g, f, &mut out)?,
                None => {
                    let stats = gamma_stats(&g);
                    writeln!(out, "{}", serde_json::to_string_pretty(&stats).unwrap())?;
                }
            }
        }
        GraphKind::Delta => {
            let d = build_delta(args.p)?;
            match graph_format(args.format) {
                Some(f) => export_delta(&d, f, &mut out)?,
                None => {
                    let stats = delta_stats(&d);
                    writeln!(out, "{}", serde_json::to_string_pretty(&stats).unwrap())?;
                }
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn run_verify(args: VerifyArgs) -> Result<bool, CliError> {
    init_threads(args.threads);
    let kinds: Vec<VerifyKind> = match args.graph {
        Some(k) => vec![k],
        None => {
            let mut all = vec![VerifyKind::Lambda];
            if matches!(args.p, 2 | 3 | 5) {
                all.push(VerifyKind::Gamma);
                all.push(VerifyKind::M2);
            }
            all
        }
    };
    let mut reports = Vec::new();
    for kind in kinds {
        let report = match kind {
            VerifyKind::Lambda => verify_lambda(args.p)?,
            VerifyKind::Gamma => verify_gamma(args.p)?,
            VerifyKind::M2 => verify_m2(args.p)?,
        };
        eprintln!(
            "verify p={} {}: {} ({})",
            report.p,
            report.graph,
            if report.matched { "MATCH" } else { "MISMATCH" },
            report.summary
        );
        if let Some(detail) = &report.detail {
            eprintln!("  {detail}");
        }
        reports.push(report);
    }
    let all_matched = reports.iter().all(|r| r.matched);
    let mut out = open_output(&args.output)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&reports).unwrap())?;
    out.flush()?;
    Ok(all_matched)
}

#[derive(Serialize)]
struct StatsDoc {
    p: u64,
    total_vertices: u64,
    total_matrices: u128,
    table1: Vec<Table1Row>,
    /// Entry [x][y]: type-X neighbors of a type-Y vertex.
    table2: [[u64; 8]; 8],
}

#[derive(Serialize)]
struct Table1Row {
    r#type: MatrixType,
    vertices: u64,
    generators: u64,
    dimension: u8,
}

fn run_stats(p: u64, output: Option<PathBuf>) -> Result<(), CliError> {
    let t1 = table1(p)?;
    let t2 = table2(p)?;
    let doc = StatsDoc {
        p,
        total_vertices: t1.iter().map(|s| s.vertex_count).sum(),
        total_matrices: (p as u128).pow(9),
        table1: ccg_core::classify::ALL_TYPES
            .iter()
            .zip(t1.iter())
            .map(|(ty, s)| Table1Row {
                r#type: *ty,
                vertices: s.vertex_count,
                generators: s.generator_count,
                dimension: s.dimension,
            })
            .collect(),
        table2: t2,
    };
    let mut out = open_output(&output)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
    out.flush()?;
    Ok(())
}

fn run_incidence(p: u64, format: IncidenceFmt, output: Option<PathBuf>) -> Result<(), CliError> {
    let t = build_tp(p)?;
    let mut out = open_output(&output)?;
    let f = match format {
        IncidenceFmt::Text => IncidenceFormat::Text,
        IncidenceFmt::Csv => IncidenceFormat::Csv,
        IncidenceFmt::Pbm => IncidenceFormat::Pbm,
    };
    export_incidence(&t, f, &mut out)?;
    out.flush()?;
    Ok(())
}

fn run() -> Result<bool, CliError> {
    match Cli::parse().command {
        Command::Build(args) => run_build(args).map(|_| true),
        Command::Verify(args) => run_verify(args),
        Command::Stats { p, output } => run_stats(p, output).map(|_| true),
        Command::Incidence { p, format, output } => {
            run_incidence(p, format, output).map(|_| true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
