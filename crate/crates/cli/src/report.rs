use std::collections::BTreeSet;
use std::io::{self, Write};

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};
use tkc_core::ingest::ParseReport;
use tkc_core::{
    components_of, run_query, Algorithm, Fingerprint, GraphStats, QuerySpec, QueryStats, ResultSet,
    TemporalGraph, TimeInterval,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

/// One result core as printed.
#[derive(Debug, Serialize)]
pub struct ReportRecord {
    pub tti_ts: u64,
    pub tti_te: u64,
    pub vertex_count: usize,
    pub edge_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub component_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[u64; 3]>>,
}

#[derive(Debug, Serialize)]
pub struct StatsRecord {
    pub algorithm: Algorithm,
    pub cores: usize,
    pub total_cells: u64,
    pub cells_visited: u64,
    pub tcd_ops: u64,
    pub head_advances: u64,
    pub nonempty_inductions: u64,
    pub empties: u64,
    pub pruned_por: u64,
    pub pruned_pou: u64,
    pub pruned_pol: u64,
    pub pruned_pct: f64,
    pub triggers_por: u64,
    pub triggers_pou: u64,
    pub triggers_pol: u64,
    pub peak_tel_edges: u64,
    pub edges_deleted: u64,
    pub wall_time_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_rss_kb: Option<u64>,
}

impl StatsRecord {
    pub fn new(algorithm: Algorithm, cores: usize, s: &QueryStats) -> Self {
        StatsRecord {
            algorithm,
            cores,
            total_cells: s.total_cells,
            cells_visited: s.cells_visited,
            tcd_ops: s.tcd_ops,
            head_advances: s.head_advances,
            nonempty_inductions: s.nonempty_inductions,
            empties: s.empties,
            pruned_por: s.pruned_cells.por,
            pruned_pou: s.pruned_cells.pou,
            pruned_pol: s.pruned_cells.pol,
            pruned_pct: round3(s.pruned_percentage()),
            triggers_por: s.triggers.por,
            triggers_pou: s.triggers.pou,
            triggers_pol: s.triggers.pol,
            peak_tel_edges: s.peak_tel_edges,
            edges_deleted: s.edges_deleted,
            wall_time_ms: round3(s.wall_time.as_secs_f64() * 1e3),
            peak_rss_kb: peak_rss_kb(),
        }
    }
}

fn round3(x: f64) -> f64 {
    (x * 1e3).round() / 1e3
}

/// Peak resident set size, where the platform reports it.
fn peak_rss_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

pub struct Report {
    pub rows: Vec<ReportRecord>,
    pub stats: StatsRecord,
    columns: Vec<String>,
}

impl Report {
    pub fn new(
        graph: &TemporalGraph,
        results: &ResultSet,
        materialize: bool,
        components: bool,
    ) -> Self {
        let rows = results
            .iter()
            .map(|core| {
                let edges = core.edges.as_deref();
                ReportRecord {
                    tti_ts: core.tti.start,
                    tti_te: core.tti.end,
                    vertex_count: core.vertex_count,
                    edge_count: core.edge_count,
                    component_count: components.then(|| components_of(edges.unwrap_or(&[])).len()),
                    vertices: materialize.then(|| {
                        let mut ids: Vec<u64> = core
                            .vertices
                            .iter()
                            .flatten()
                            .map(|&v| graph.external_id(v))
                            .collect();
                        ids.sort_unstable();
                        ids
                    }),
                    edges: materialize.then(|| {
                        edges
                            .unwrap_or(&[])
                            .iter()
                            .map(|e| [graph.external_id(e.src), graph.external_id(e.dst), e.t])
                            .collect()
                    }),
                }
            })
            .collect();
        let mut columns = vec!["tti_ts", "tti_te", "vertex_count", "edge_count"];
        if components {
            columns.push("component_count");
        }
        if materialize {
            columns.extend(["vertices", "edges"]);
        }
        Report {
            rows,
            stats: StatsRecord::new(results.algorithm, results.len(), &results.stats),
            columns: columns.into_iter().map(String::from).collect(),
        }
    }

    pub fn write<W: Write>(&self, out: &mut W, format: Format) -> io::Result<()> {
        let rows: Vec<Value> = self.rows.iter().map(to_value).collect();
        let stats = to_value(&self.stats);
        match format {
            Format::Json => {
                for row in &rows {
                    writeln!(out, "{row}")?;
                }
                let mut wrapper = Map::new();
                wrapper.insert("stats".into(), stats);
                writeln!(out, "{}", Value::Object(wrapper))
            }
            Format::Tsv => {
                write_table(out, &self.columns, &rows)?;
                writeln!(out, "#stats")?;
                let keys: Vec<String> = match &stats {
                    Value::Object(m) => m.keys().cloned().collect(),
                    _ => unreachable!("stats serialize to an object"),
                };
                write_table(out, &keys, std::slice::from_ref(&stats))
            }
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report records serialize")
}

/// Scalar text of a JSON value; arrays join with `,`, nested arrays with `:`.
pub fn tsv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|i| match i {
                Value::Array(inner) => inner.iter().map(tsv_cell).collect::<Vec<_>>().join(":"),
                other => tsv_cell(other),
            })
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    }
}

fn write_table<W: Write>(out: &mut W, header: &[String], rows: &[Value]) -> io::Result<()> {
    writeln!(out, "{}", header.join("\t"))?;
    for row in rows {
        let cells: Vec<String> = header.iter().map(|k| tsv_cell(&row[k.as_str()])).collect();
        writeln!(out, "{}", cells.join("\t"))?;
    }
    Ok(())
}

pub fn write_stats<W: Write>(
    out: &mut W,
    stats: &GraphStats,
    parse: &ParseReport,
    format: Format,
) -> io::Result<()> {
    let mut m = match to_value(stats) {
        Value::Object(m) => m,
        _ => unreachable!("stats serialize to an object"),
    };
    m.insert("self_loops".into(), parse.self_loops.into());
    m.insert("malformed_lines".into(), parse.malformed.into());
    match format {
        Format::Json => writeln!(out, "{}", Value::Object(m)),
        Format::Tsv => {
            for (k, v) in &m {
                writeln!(out, "{k}\t{}", tsv_cell(v))?;
            }
            Ok(())
        }
    }
}

pub struct VerifyOutcome {
    signatures: Vec<(Algorithm, BTreeSet<(TimeInterval, Fingerprint)>)>,
}

pub fn verify(graph: &TemporalGraph, spec: &QuerySpec, inject_fault: bool) -> VerifyOutcome {
    let signatures = Algorithm::ALL
        .iter()
        .map(|&algo| {
            let r = run_query(graph, &spec.clone().with_algorithm(algo)).expect("validated spec");
            let mut sig = r.signatures().expect("materialized");
            if inject_fault && algo == Algorithm::Otcd {
                sig.pop_last();
            }
            (algo, sig)
        })
        .collect();
    VerifyOutcome { signatures }
}

impl VerifyOutcome {
    pub fn matched(&self) -> bool {
        let reference = &self.signatures.last().expect("three algorithms").1;
        self.signatures.iter().all(|(_, s)| s == reference)
    }

    pub fn write<W: Write>(&self, out: &mut W) -> io::Result<()> {
        let (oracle, reference) = self.signatures.last().expect("three algorithms");
        if self.matched() {
            return writeln!(out, "MATCH {} cores", reference.len());
        }
        writeln!(out, "MISMATCH")?;
        for (algo, sig) in &self.signatures {
            if algo == oracle {
                continue;
            }
            writeln!(
                out,
                "{algo}: {} cores, {oracle}: {} cores",
                sig.len(),
                reference.len()
            )?;
            for (tti, fp) in reference.difference(sig) {
                writeln!(out, "- {algo} missing {tti} {fp}")?;
            }
            for (tti, fp) in sig.difference(reference) {
                writeln!(out, "+ {algo} extra {tti} {fp}")?;
            }
        }
        Ok(())
    }
}
