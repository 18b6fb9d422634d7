//! `gvlocal`: compute, verify, benchmark and export GV invariants of local P².

mod output;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use gvlocal::closedform::{identity_names, run_identities, ClosedFormError, Status, VerifyContext};
use gvlocal::vertex::{run_pipeline, PrecisionPlan, Vertex, VertexError};

const EXIT_FAIL: u8 = 1;
const EXIT_PRECISION: u8 = 2;
const EXIT_IDENTITY: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "gvlocal", version, about = "Exact Gopakumar-Vafa invariants of local P^2")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// highest degree d
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    dmax: u32,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// worker threads, 0 = one per core (falls back to GV_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// extra precision below q^{-(d+2)}
    #[arg(long, global = true, default_value_t = 2)]
    floor_margin: u32,

    /// restrict `verify` to these identities (repeatable)
    #[arg(long, global = true)]
    identity: Vec<String>,

    /// write to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// invariant tables for d = 1..=dmax
    Compute,
    /// run the identity registry
    Verify,
    /// time the vertex sum degree by degree
    Bench,
    /// tables together with the stripped free energies
    Export,
    /// list identity names
    List,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<VertexError> for Failure {
    fn from(e: VertexError) -> Self {
        let code = if matches!(e, VertexError::Precision { .. }) { EXIT_PRECISION } else { EXIT_FAIL };
        Failure::new(code, e.to_string())
    }
}

impl From<ClosedFormError> for Failure {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::UnknownIdentity(_) => Failure::new(EXIT_IDENTITY, e.to_string()),
            ClosedFormError::Vertex(v) => v.into(),
            other => Failure::new(EXIT_FAIL, other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_FAIL, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // usage errors are generic failures; 2 is reserved for precision
            return ExitCode::from(if e.use_stderr() { EXIT_FAIL } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("gvlocal: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<usize, Failure> {
    match flag {
        Some(n) => Ok(n),
        None => match std::env::var("GV_THREADS") {
            Ok(v) => v.trim().parse().map_err(|_| Failure::new(EXIT_FAIL, format!("GV_THREADS: not a number: {v}"))),
            Err(_) => Ok(0),
        },
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let threads = thread_count(cli.threads)?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::new(EXIT_FAIL, e.to_string()))?;
    let (text, code) = match cli.command {
        Command::Compute => (compute(cli)?, 0),
        Command::Export => (export(cli)?, 0),
        Command::Verify => verify(cli)?,
        Command::Bench => (bench(cli), 0),
        Command::List => (identity_names().join("\n") + "\n", 0),
    };
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(code)
}

fn compute(cli: &Cli) -> Result<String, Failure> {
    let p = run_pipeline(cli.dmax, cli.floor_margin)?;
    Ok(output::tables(&p.tables, cli.format))
}

fn export(cli: &Cli) -> Result<String, Failure> {
    let p = run_pipeline(cli.dmax, cli.floor_margin)?;
    Ok(match cli.format {
        Format::Json => output::export_json(&p.tables, &p.stripped),
        f => output::tables(&p.tables, f),
    })
}

fn verify(cli: &Cli) -> Result<(String, u8), Failure> {
    let ctx = VerifyContext::new(cli.dmax).with_margin(cli.floor_margin);
    let reports = run_identities(&cli.identity, &ctx)?;
    if let Some(e) = ctx.pipeline_error() {
        return Err(e.clone().into());
    }
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    Ok((output::reports(&reports, cli.format), if failed { EXIT_FAIL } else { 0 }))
}

fn bench(cli: &Cli) -> String {
    let plan = PrecisionPlan::new(cli.dmax, cli.floor_margin);
    let vertex = Vertex::new();
    let mut rows = Vec::new();
    for d in 1..=cli.dmax {
        let hits = vertex.cache().hits();
        let misses = vertex.cache().misses();
        let start = Instant::now();
        let (_, stats) = vertex.instanton(d, plan.instanton_floor(d));
        let seconds = start.elapsed().as_secs_f64();
        rows.push(output::BenchRow {
            d,
            seconds,
            stats,
            hits: vertex.cache().hits() - hits,
            misses: vertex.cache().misses() - misses,
        });
    }
    output::bench(&rows, cli.format)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let p = VertexError::Precision { d: 4, detail: "floor".into() };
        assert_eq!(Failure::from(p.clone()).code, EXIT_PRECISION);
        assert!(Failure::from(p.clone()).message.contains("degree 4"));
        assert_eq!(Failure::from(ClosedFormError::Vertex(p)).code, EXIT_PRECISION);
        assert_eq!(Failure::from(ClosedFormError::UnknownIdentity("x".into())).code, EXIT_IDENTITY);
        assert_eq!(Failure::from(VertexError::HalfIntegral { d: 3 }).code, EXIT_FAIL);
    }

    #[test]
    fn flags_parse() {
        let c = Cli::try_parse_from(["gvlocal", "verify", "--identity", "E1", "--identity", "E2", "--dmax", "3"]).unwrap();
        assert_eq!(c.command, Command::Verify);
        assert_eq!(c.identity, ["E1", "E2"]);
        assert_eq!((c.dmax, c.floor_margin, c.format), (3, 2, Format::Json));
        assert!(Cli::try_parse_from(["gvlocal", "compute", "--dmax", "0"]).is_err());
        assert!(Cli::try_parse_from(["gvlocal", "compute", "--format", "xml"]).is_err());
    }
}
