use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::Args;
use tkc_core::{components_of, run_query, Algorithm, QuerySpec, TimeInterval};

use crate::{CliError, InputArgs};

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub ts: u64,
    /// Range end; required unless --span-steps is given.
    #[arg(long)]
    pub te: Option<u64>,
    /// Fixed k for span sweeps.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub k: Option<u32>,
    /// Inclusive k sweep, e.g. `2..6`.
    #[arg(long, conflicts_with = "span_steps")]
    pub k_range: Option<KRange>,
    /// Comma-separated spans; each point queries `[ts, ts + span]`.
    #[arg(long, value_delimiter = ',')]
    pub span_steps: Vec<u64>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub min_strength: u32,
    /// Comma-separated algorithms.
    #[arg(long, value_delimiter = ',', default_value = "otcd,tcd")]
    pub algo: Vec<crate::AlgoArg>,
    /// Runs per point; the fastest is reported.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub repeat: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("expected a..b with 1 <= a <= b, got {s:?}");
        let (a, b) = s.split_once("..").ok_or_else(bad)?;
        let lo: u32 = a.trim().parse().map_err(|_| bad())?;
        let hi: u32 = b
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if lo == 0 || lo > hi {
            return Err(bad());
        }
        Ok(KRange { lo, hi })
    }
}

struct Point {
    k: u32,
    range: TimeInterval,
}

fn points(args: &BenchArgs) -> Result<Vec<Point>, CliError> {
    let usage = |m: &str| CliError::Usage(m.to_string());
    let range_of = |te: u64| {
        TimeInterval::try_new(args.ts, te)
            .ok_or_else(|| CliError::Usage(format!("--ts {} is after --te {te}", args.ts)))
    };
    if !args.span_steps.is_empty() {
        let k = args.k.ok_or_else(|| usage("--span-steps needs --k"))?;
        return args
            .span_steps
            .iter()
            .map(|&span| {
                Ok(Point {
                    k,
                    range: range_of(args.ts + span)?,
                })
            })
            .collect();
    }
    let te = args
        .te
        .ok_or_else(|| usage("--te is required without --span-steps"))?;
    let range = range_of(te)?;
    match (args.k_range, args.k) {
        (Some(kr), _) => Ok((kr.lo..=kr.hi).map(|k| Point { k, range }).collect()),
        (None, Some(k)) => Ok(vec![Point { k, range }]),
        (None, None) => Err(usage("one of --k, --k-range or --span-steps is required")),
    }
}

pub fn run<W: Write>(args: &BenchArgs, out: &mut W) -> Result<(), CliError> {
    let points = points(args)?;
    let graph = args.input.load()?.graph;
    writeln!(
        out,
        "algo,k,ts,te,span,min_strength,runtime_ms,cores,components,pruned_pct,tcd_ops,cells_visited,peak_tel_edges"
    )?;
    for algo in &args.algo {
        for p in &points {
            let spec = QuerySpec::new(p.k, p.range)
                .with_sigma(args.min_strength)
                .with_algorithm(algo.0);
            let mut best = Duration::MAX;
            let mut last = None;
            for _ in 0..args.repeat {
                let started = Instant::now();
                let r = run_query(&graph, &spec).map_err(|e| CliError::Usage(e.to_string()))?;
                best = best.min(started.elapsed());
                last = Some(r);
            }
            let r = last.expect("at least one run");
            let materialized = run_query(
                &graph,
                &spec.clone().with_algorithm(Algorithm::Otcd).materialized(),
            )
            .map_err(|e| CliError::Usage(e.to_string()))?;
            let components: usize = materialized
                .iter()
                .map(|c| components_of(c.edges.as_deref().unwrap_or(&[])).len())
                .sum();
            writeln!(
                out,
                "{},{},{},{},{},{},{:.3},{},{},{:.3},{},{},{}",
                algo.0,
                p.k,
                p.range.start,
                p.range.end,
                p.range.span(),
                args.min_strength,
                best.as_secs_f64() * 1e3,
                r.len(),
                components,
                r.stats.pruned_percentage(),
                r.stats.tcd_ops,
                r.stats.cells_visited,
                r.stats.peak_tel_edges,
            )?;
        }
    }
    Ok(())
}
