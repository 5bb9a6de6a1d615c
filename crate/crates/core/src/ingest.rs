//! Parsing of whitespace-separated temporal edge lists (SNAP, KONECT).

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use serde::Serialize;
use thiserror::Error;

use crate::model::{TemporalEdge, TemporalGraph, Timestamp, VertexId};

const SECONDS_PER_DAY: f64 = 86_400.0;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ColumnOrder {
    /// `src dst t`
    #[default]
    SrcDstT,
    /// `src dst weight t`; the weight is ignored.
    SrcDstWT,
}

impl ColumnOrder {
    fn width(self) -> usize {
        match self {
            ColumnOrder::SrcDstT => 3,
            ColumnOrder::SrcDstWT => 4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ParseConfig {
    pub column_order: ColumnOrder,
    /// Lines starting with any of these characters are skipped.
    pub comment_prefixes: Vec<char>,
    /// Shift timestamps so the earliest becomes 1.
    pub normalize: bool,
    /// Skip malformed lines instead of failing.
    pub lenient: bool,
}

impl Default for ParseConfig {
    fn default() -> Self {
        ParseConfig {
            column_order: ColumnOrder::SrcDstT,
            comment_prefixes: vec!['#', '%'],
            normalize: true,
            lenient: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("input contains no edges")]
    EmptyInput,
    #[error("{count} malformed line(s); first at line {line}: {reason}")]
    Malformed {
        count: usize,
        line: usize,
        reason: String,
    },
    #[error("too many distinct vertices")]
    TooManyVertices,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// What the parser saw besides the graph itself.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ParseReport {
    pub lines: usize,
    pub comments: usize,
    pub self_loops: usize,
    pub malformed: usize,
}

#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: TemporalGraph,
    pub report: ParseReport,
}

fn parse_line(fields: &[&str], order: ColumnOrder) -> Result<(u64, u64, Timestamp), String> {
    if fields.len() < order.width() {
        return Err(format!(
            "expected {} columns, found {}",
            order.width(),
            fields.len()
        ));
    }
    let num = |s: &str, what: &str| -> Result<u64, String> {
        if s.starts_with('-') {
            return Err(format!("negative {what} {s:?}"));
        }
        s.parse::<u64>()
            .map_err(|_| format!("non-integer {what} {s:?}"))
    };
    let t_col = order.width() - 1;
    Ok((
        num(fields[0], "vertex")?,
        num(fields[1], "vertex")?,
        num(fields[t_col], "timestamp")?,
    ))
}

struct Collector {
    interned: HashMap<u64, u32>,
    external: Vec<u64>,
    raw: Vec<(u32, u32, Timestamp)>,
    self_loops: usize,
}

impl Collector {
    fn new() -> Self {
        Collector {
            interned: HashMap::new(),
            external: Vec::new(),
            raw: Vec::new(),
            self_loops: 0,
        }
    }

    fn intern(&mut self, id: u64) -> Result<u32, IngestError> {
        if let Some(&v) = self.interned.get(&id) {
            return Ok(v);
        }
        let v = u32::try_from(self.external.len())
            .ok()
            .filter(|&v| v != u32::MAX)
            .ok_or(IngestError::TooManyVertices)?;
        self.interned.insert(id, v);
        self.external.push(id);
        Ok(v)
    }

    fn push(&mut self, u: u64, v: u64, t: Timestamp) -> Result<(), IngestError> {
        if u == v {
            self.self_loops += 1;
            return Ok(());
        }
        let (a, b) = (self.intern(u)?, self.intern(v)?);
        self.raw.push((a, b, t));
        Ok(())
    }

    fn finish(self, normalize: bool) -> Result<TemporalGraph, IngestError> {
        let t_min = self
            .raw
            .iter()
            .map(|&(_, _, t)| t)
            .min()
            .ok_or(IngestError::EmptyInput)?;
        let origin = normalize.then_some(t_min);
        let edges = self.raw.into_iter().map(|(u, v, t)| {
            let t = match origin {
                Some(o) => t - o + 1,
                None => t,
            };
            TemporalEdge::new(u, v, t)
        });
        let n = self.external.len();
        Ok(TemporalGraph::new(n, edges).with_provenance(self.external, origin))
    }
}

/// Parses an edge list. Vertices get dense ids in order of first appearance
/// and self-loops are dropped.
pub fn parse_edge_list<R: BufRead>(
    reader: R,
    config: &ParseConfig,
) -> Result<ParsedGraph, IngestError> {
    let mut report = ParseReport::default();
    let mut collector = Collector::new();
    let mut first_error: Option<(usize, String)> = None;

    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        report.lines += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with(|c| config.comment_prefixes.contains(&c)) {
            report.comments += 1;
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match parse_line(&fields, config.column_order) {
            Ok((u, v, t)) => collector.push(u, v, t)?,
            Err(reason) => {
                report.malformed += 1;
                first_error.get_or_insert((i + 1, reason));
            }
        }
    }

    if report.malformed > 0 && !config.lenient {
        let (line, reason) = first_error.expect("malformed line recorded");
        return Err(IngestError::Malformed {
            count: report.malformed,
            line,
            reason,
        });
    }
    report.self_loops = collector.self_loops;
    let graph = collector.finish(config.normalize)?;
    Ok(ParsedGraph { graph, report })
}

/// Builds a graph from `(src, dst, t)` triples with arbitrary ids, interned
/// and normalized as [`parse_edge_list`] does.
pub fn graph_from_triples(
    triples: impl IntoIterator<Item = (u64, u64, Timestamp)>,
    normalize: bool,
) -> Result<ParsedGraph, IngestError> {
    let mut collector = Collector::new();
    for (u, v, t) in triples {
        collector.push(u, v, t)?;
    }
    let report = ParseReport {
        self_loops: collector.self_loops,
        ..ParseReport::default()
    };
    let graph = collector.finish(normalize)?;
    Ok(ParsedGraph { graph, report })
}

fn is_gzip(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("gz"))
}

/// Opens a file for parsing, decompressing `.gz` files transparently.
pub fn open_path(path: &Path) -> io::Result<Box<dyn BufRead>> {
    let file = File::open(path)?;
    let reader: Box<dyn Read> = if is_gzip(path) {
        Box::new(MultiGzDecoder::new(file))
    } else {
        Box::new(file)
    };
    Ok(Box::new(BufReader::new(reader)))
}

pub fn load_path(path: impl AsRef<Path>, config: &ParseConfig) -> Result<ParsedGraph, IngestError> {
    parse_edge_list(open_path(path.as_ref())?, config)
}

/// Writes `u v t` lines using external vertex ids and raw timestamps.
pub fn write_edge_list<W: Write>(graph: &TemporalGraph, mut out: W) -> io::Result<()> {
    for e in graph.edges() {
        writeln!(
            out,
            "{} {} {}",
            graph.external_id(e.src),
            graph.external_id(e.dst),
            graph.raw_timestamp(e.t)
        )?;
    }
    out.flush()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct GraphStats {
    pub vertices: usize,
    pub edges: usize,
    pub distinct_timestamps: usize,
    pub t_min: Option<Timestamp>,
    pub t_max: Option<Timestamp>,
    /// Raw timestamp span, assuming seconds.
    pub span_days: f64,
}

pub fn graph_stats(graph: &TemporalGraph) -> GraphStats {
    let distinct: BTreeSet<Timestamp> = graph.edges().iter().map(|e| e.t).collect();
    let span = match (graph.t_min(), graph.t_max()) {
        (Some(a), Some(b)) => (b - a) as f64 / SECONDS_PER_DAY,
        _ => 0.0,
    };
    let active: BTreeSet<VertexId> = graph.edges().iter().flat_map(|e| [e.src, e.dst]).collect();
    GraphStats {
        vertices: active.len(),
        edges: graph.edge_count(),
        distinct_timestamps: distinct.len(),
        t_min: graph.t_min(),
        t_max: graph.t_max(),
        span_days: span,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn parse(text: &str) -> Result<ParsedGraph, IngestError> {
        parse_edge_list(text.as_bytes(), &ParseConfig::default())
    }

    #[test]
    fn normalizes_to_one_based_offsets() {
        let g = parse("1 2 1082040961\n2 3 1082041000\n").unwrap().graph;
        let ts: Vec<_> = g.edges().iter().map(|e| e.t).collect();
        assert_eq!(ts, vec![1, 40]);
        assert_eq!(g.time_origin(), Some(1082040961));
    }

    #[test]
    fn comments_are_skipped() {
        let p = parse("# comment\n% konect header\n1 2 3\n").unwrap();
        assert_eq!(p.report.comments, 2);
        assert_eq!(p.graph.edge_count(), 1);
    }

    #[test]
    fn self_loop_dropped_and_counted() {
        let p = parse("5 5 10\n5 6 11\n").unwrap();
        assert_eq!(p.report.self_loops, 1);
        assert_eq!(p.graph.edge_count(), 1);
    }

    #[test]
    fn first_appearance_interning() {
        let g = parse("90 7 5\n7 3 1\n").unwrap().graph;
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.external_id(VertexId(0)), 90);
        assert_eq!(g.external_id(VertexId(1)), 7);
        assert_eq!(g.external_id(VertexId(2)), 3);
        // stable sort by time puts the second line first
        assert_eq!(g.edges()[0], TemporalEdge::new(1u32, 2u32, 1));
    }

    #[test]
    fn weight_column_is_ignored() {
        let cfg = ParseConfig {
            column_order: ColumnOrder::SrcDstWT,
            ..ParseConfig::default()
        };
        let g = parse_edge_list("1 2 -9 100\n2 3 x 160\n".as_bytes(), &cfg)
            .unwrap()
            .graph;
        let ts: Vec<_> = g.edges().iter().map(|e| e.t).collect();
        assert_eq!(ts, vec![1, 61]);
    }

    #[test]
    fn triples_match_text() {
        let text = parse("9 4 100\n4 7 90\n7 7 95\n").unwrap();
        let mem = graph_from_triples([(9, 4, 100), (4, 7, 90), (7, 7, 95)], true).unwrap();
        assert_eq!(text.graph, mem.graph);
        assert_eq!(mem.report.self_loops, 1);
    }

    #[test]
    fn empty_input() {
        assert!(matches!(parse(""), Err(IngestError::EmptyInput)));
        assert!(matches!(parse("# only\n\n"), Err(IngestError::EmptyInput)));
    }

    #[test]
    fn malformed_lines() {
        match parse("1 2 3\n1 x 3\n1 2 -4\n") {
            Err(IngestError::Malformed { count, line, .. }) => assert_eq!((count, line), (2, 2)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse("1 2\n"), Err(IngestError::Malformed { .. })));
        let cfg = ParseConfig {
            lenient: true,
            ..ParseConfig::default()
        };
        let p = parse_edge_list("1 2 3\n1 x 3\n".as_bytes(), &cfg).unwrap();
        assert_eq!(p.report.malformed, 1);
        assert_eq!(p.graph.edge_count(), 1);
    }

    #[test]
    fn raw_timestamps_kept_without_normalize() {
        let cfg = ParseConfig {
            normalize: false,
            ..ParseConfig::default()
        };
        let g = parse_edge_list("1 2 50\n2 3 70\n".as_bytes(), &cfg)
            .unwrap()
            .graph;
        assert_eq!(g.t_min(), Some(50));
        assert_eq!(g.time_origin(), None);
    }

    #[test]
    fn stats_of_empty_graph_are_zero() {
        let s = graph_stats(&TemporalGraph::new(0, []));
        assert_eq!((s.vertices, s.edges, s.distinct_timestamps), (0, 0, 0));
        assert_eq!(s.span_days, 0.0);
    }

    #[test]
    fn stats_of_toy_graph() {
        let g = parse("a b 1\n").map(|_| ()).unwrap_err();
        assert!(matches!(g, IngestError::Malformed { .. }));
        let g = parse("0 1 1\n1 2 1\n0 2 2\n2 3 3\n1 3 3\n0 3 4\n")
            .unwrap()
            .graph;
        let s = graph_stats(&g);
        assert_eq!((s.vertices, s.edges, s.distinct_timestamps), (4, 6, 4));
    }

    #[test]
    fn gzip_is_transparent() {
        use flate2::write::GzEncoder;
        use flate2::Compression;
        let dir = tempfile::tempdir().unwrap();
        let text = "1 2 10\n2 3 20\n3 1 30\n";
        let plain = dir.path().join("g.txt");
        std::fs::write(&plain, text).unwrap();
        let gz = dir.path().join("g.txt.gz");
        let mut enc = GzEncoder::new(File::create(&gz).unwrap(), Compression::default());
        enc.write_all(text.as_bytes()).unwrap();
        enc.finish().unwrap();
        let cfg = ParseConfig::default();
        let a = load_path(&plain, &cfg).unwrap().graph;
        let b = load_path(&gz, &cfg).unwrap().graph;
        assert_eq!(a.edges(), b.edges());
    }

    proptest! {
        #[test]
        fn round_trip(
            lines in prop::collection::vec((0u64..40, 0u64..40, 1_000u64..1_500), 1..80),
            normalize in any::<bool>(),
        ) {
            prop_assume!(lines.iter().any(|&(u, v, _)| u != v));
            let text: String = lines.iter().map(|(u, v, t)| format!("{u} {v} {t}\n")).collect();
            let cfg = ParseConfig { normalize, ..ParseConfig::default() };
            let g = parse_edge_list(text.as_bytes(), &cfg).unwrap().graph;
            let mut buf = Vec::new();
            write_edge_list(&g, &mut buf).unwrap();
            let h = parse_edge_list(buf.as_slice(), &cfg).unwrap().graph;
            let external = |g: &TemporalGraph| -> Vec<(u64, u64, u64)> {
                g.edges()
                    .iter()
                    .map(|e| (g.external_id(e.src), g.external_id(e.dst), g.raw_timestamp(e.t)))
                    .collect()
            };
            prop_assert_eq!(external(&g), external(&h));
            prop_assert_eq!(g.vertex_count(), h.vertex_count());
            prop_assert_eq!(g.time_origin(), h.time_origin());
        }

        #[test]
        fn normalization_preserves_order_and_gaps(
            ts in prop::collection::vec(1_000_000u64..1_000_500, 2..40),
        ) {
            let text: String = ts.iter().enumerate().map(|(i, t)| format!("{} {} {t}\n", i, i + 1)).collect();
            let g = parse(&text).unwrap().graph;
            let origin = g.time_origin().unwrap();
            prop_assert_eq!(origin, *ts.iter().min().unwrap());
            let mut raw = ts.clone();
            raw.sort();
            let norm: Vec<u64> = g.edges().iter().map(|e| e.t).collect();
            prop_assert_eq!(norm[0], 1);
            for w in 0..raw.len() - 1 {
                prop_assert_eq!(raw[w + 1] - raw[w], norm[w + 1] - norm[w]);
            }
        }
    }
}
