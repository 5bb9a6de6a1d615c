mod bench;
mod report;

use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use tkc_core::ingest::{open_path, ColumnOrder};
use tkc_core::{
    graph_stats, parse_edge_list, run_query, Algorithm, ParseConfig, ParsedGraph, QuerySpec,
    TimeInterval,
};

use crate::report::{Format, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("verification failed")]
    Mismatch,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch => 1,
            CliError::Usage(_) => 2,
            CliError::Input(_) | CliError::Io(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "tkc",
    version,
    about = "Temporal k-core queries over temporal edge lists"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print vertex, edge and timestamp counts of an edge list.
    Stats {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Enumerate the distinct temporal k-cores of a time range.
    Query {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, default_value = "otcd")]
        algo: AlgoArg,
        /// Keep only cores whose TTI covers at most this many time units.
        #[arg(long)]
        max_span: Option<u64>,
        /// Keep only the n cores with the shortest TTIs.
        #[arg(long)]
        top_shortest: Option<usize>,
        /// Print vertex and edge lists of every core.
        #[arg(long)]
        materialize: bool,
        /// Print the number of connected components of every core.
        #[arg(long)]
        components: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run all three algorithms and compare their results.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Time queries over a sweep of k or of range spans; prints CSV.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone)]
pub struct InputArgs {
    /// Edge list, `src dst t` per line; `.gz` is decompressed.
    pub file: PathBuf,
    /// Lines are `src dst weight t`.
    #[arg(long)]
    pub weighted: bool,
    /// Keep raw timestamps; --ts/--te and output use raw units.
    #[arg(long)]
    pub raw_ts: bool,
    /// Skip malformed lines instead of failing.
    #[arg(long)]
    pub lenient: bool,
}

impl InputArgs {
    pub fn config(&self) -> ParseConfig {
        ParseConfig {
            column_order: if self.weighted {
                ColumnOrder::SrcDstWT
            } else {
                ColumnOrder::SrcDstT
            },
            normalize: !self.raw_ts,
            lenient: self.lenient,
            ..ParseConfig::default()
        }
    }

    pub fn load(&self) -> Result<ParsedGraph, CliError> {
        load(&self.file, &self.config())
    }
}

#[derive(Args, Clone)]
pub struct QueryArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: u32,
    #[arg(long)]
    pub ts: u64,
    #[arg(long)]
    pub te: u64,
    /// Minimum number of parallel edges between linked vertices.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub min_strength: u32,
}

impl QueryArgs {
    pub fn range(&self) -> Result<TimeInterval, CliError> {
        TimeInterval::try_new(self.ts, self.te)
            .ok_or_else(|| CliError::Usage(format!("--ts {} is after --te {}", self.ts, self.te)))
    }

    pub fn spec(&self) -> Result<QuerySpec, CliError> {
        Ok(QuerySpec::new(self.k, self.range()?).with_sigma(self.min_strength))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AlgoArg(pub Algorithm);

impl FromStr for AlgoArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse()
            .map(AlgoArg)
            .map_err(|e: tkc_core::QueryError| e.to_string())
    }
}

pub fn load(path: &Path, config: &ParseConfig) -> Result<ParsedGraph, CliError> {
    let reader = open_path(path)
        .map_err(|e| CliError::Usage(format!("cannot open {}: {e}", path.display())))?;
    parse_edge_list(reader, config).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn check_threads() -> Result<(), CliError> {
    match std::env::var("TKC_THREADS") {
        Ok(v) if v.trim() != "1" => Err(CliError::Usage(format!(
            "TKC_THREADS={v} is not supported; only 1 thread is available"
        ))),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    check_threads()?;
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cli.command {
        Command::Stats { input, format } => {
            let parsed = input.load()?;
            report::write_stats(
                &mut out,
                &graph_stats(&parsed.graph),
                &parsed.report,
                format,
            )?;
        }
        Command::Query {
            input,
            query,
            algo,
            max_span,
            top_shortest,
            materialize,
            components,
            format,
        } => {
            let parsed = input.load()?;
            let mut spec = query.spec()?.with_algorithm(algo.0);
            spec.max_span = max_span;
            spec.top_n_shortest = top_shortest;
            spec.materialize = materialize || components;
            let results =
                run_query(&parsed.graph, &spec).map_err(|e| CliError::Usage(e.to_string()))?;
            let report = Report::new(&parsed.graph, &results, materialize, components);
            report.write(&mut out, format)?;
        }
        Command::Verify {
            input,
            query,
            inject_fault,
        } => {
            let parsed = input.load()?;
            let spec = query.spec()?.materialized();
            let outcome = report::verify(&parsed.graph, &spec, inject_fault);
            outcome.write(&mut out)?;
            out.flush()?;
            if !outcome.matched() {
                return Err(CliError::Mismatch);
            }
        }
        Command::Bench(args) => bench::run(&args, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Mismatch) {
                eprintln!("tkc: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
