//! Temporal k-core query processing.
//!
//! Subintervals of the query range are enumerated row by row: for each start
//! time the row head `T[ts, Te]` is induced from the previous row head, and a
//! working copy descends through decreasing end times. Every induction is a
//! [`tcd`] call on a TEL that already holds an enclosing core.
//!
//! The optimized enumeration additionally reads the tightest time interval of
//! each induced core and prunes the cells whose cores it predicts, so that
//! each distinct core is induced once.

mod components;
mod oracle;
mod schedule;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::decomposition::{tcd, DegreeState};
use crate::model::{CoreSummary, TemporalEdge, TemporalGraph, TimeInterval, Timestamp, VertexId};
use crate::tel::Tel;

pub use components::{components_of, connected_components};
pub use oracle::{brute_force_core, brute_force_enumerate_edges};
pub use schedule::{apply_pruning, PruneOutcome, PruneRule, PruneSchedule, RuleCounts};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// Decremental enumeration with TTI pruning.
    Otcd,
    /// Decremental enumeration of every cell.
    Tcd,
    /// Independent per-cell recomputation.
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Otcd, Algorithm::Tcd, Algorithm::Brute];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Otcd => "otcd",
            Algorithm::Tcd => "tcd",
            Algorithm::Brute => "brute",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = QueryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "otcd" => Ok(Algorithm::Otcd),
            "tcd" => Ok(Algorithm::Tcd),
            "brute" => Ok(Algorithm::Brute),
            _ => Err(QueryError::UnknownAlgorithm(s.to_string())),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("link strength must be at least 1")]
    ZeroStrength,
    #[error("query range start {0} is after its end {1}")]
    InvertedRange(Timestamp, Timestamp),
    #[error("unknown algorithm {0:?} (expected otcd, tcd or brute)")]
    UnknownAlgorithm(String),
}

/// Parameters of one temporal k-core query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySpec {
    pub k: u32,
    /// `[Ts, Te]`; every subinterval is a candidate.
    pub range: TimeInterval,
    /// Minimum number of parallel edges between linked vertices.
    pub sigma: u32,
    /// Keep only cores whose TTI covers at most this many time units.
    pub max_span: Option<u64>,
    /// Keep only the n cores with the shortest TTI spans.
    pub top_n_shortest: Option<usize>,
    pub algorithm: Algorithm,
    /// Store vertex and edge lists of every core.
    pub materialize: bool,
}

impl QuerySpec {
    pub fn new(k: u32, range: TimeInterval) -> Self {
        QuerySpec {
            k,
            range,
            sigma: 1,
            max_span: None,
            top_n_shortest: None,
            algorithm: Algorithm::Otcd,
            materialize: false,
        }
    }

    pub fn with_algorithm(mut self, algorithm: Algorithm) -> Self {
        self.algorithm = algorithm;
        self
    }

    pub fn with_sigma(mut self, sigma: u32) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_max_span(mut self, span: u64) -> Self {
        self.max_span = Some(span);
        self
    }

    pub fn with_top_n_shortest(mut self, n: usize) -> Self {
        self.top_n_shortest = Some(n);
        self
    }

    pub fn materialized(mut self) -> Self {
        self.materialize = true;
        self
    }

    pub fn validate(&self) -> Result<(), QueryError> {
        if self.k == 0 {
            return Err(QueryError::ZeroK);
        }
        if self.sigma == 0 {
            return Err(QueryError::ZeroStrength);
        }
        if self.range.start > self.range.end {
            return Err(QueryError::InvertedRange(self.range.start, self.range.end));
        }
        Ok(())
    }
}

/// Counters describing how a query was answered.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QueryStats {
    /// Cells `[ts, te]` over the distinct timestamps of the window.
    pub total_cells: u64,
    /// Cells whose core was actually induced.
    pub cells_visited: u64,
    /// Calls to temporal core decomposition, row-head maintenance included.
    pub tcd_ops: u64,
    /// Row heads advanced for a row whose head cell was pruned.
    pub head_advances: u64,
    /// Cell inductions that produced a nonempty core.
    pub nonempty_inductions: u64,
    /// Cell inductions that produced nothing.
    pub empties: u64,
    pub pruned_cells: RuleCounts,
    pub triggers: RuleCounts,
    /// Largest number of edges held by live TELs at once.
    pub peak_tel_edges: u64,
    /// Edge deletions performed on all TELs.
    pub edges_deleted: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl QueryStats {
    /// Share of schedule cells skipped by pruning, in percent.
    pub fn pruned_percentage(&self) -> f64 {
        if self.total_cells == 0 {
            0.0
        } else {
            100.0 * self.pruned_cells.total() as f64 / self.total_cells as f64
        }
    }

    fn rule_percentage(&self, cells: u64) -> f64 {
        if self.total_cells == 0 {
            0.0
        } else {
            100.0 * cells as f64 / self.total_cells as f64
        }
    }

    /// Percentages of schedule cells pruned by each rule.
    pub fn pruned_percentages(&self) -> (f64, f64, f64) {
        (
            self.rule_percentage(self.pruned_cells.por),
            self.rule_percentage(self.pruned_cells.pou),
            self.rule_percentage(self.pruned_cells.pol),
        )
    }
}

/// Distinct cores keyed by tightest time interval, plus query statistics.
#[derive(Clone, Debug, Serialize)]
pub struct ResultSet {
    pub algorithm: Algorithm,
    #[serde(serialize_with = "serialize_values")]
    pub cores: BTreeMap<TimeInterval, CoreSummary>,
    pub stats: QueryStats,
}

fn serialize_values<S: Serializer>(
    cores: &BTreeMap<TimeInterval, CoreSummary>,
    s: S,
) -> Result<S::Ok, S::Error> {
    s.collect_seq(cores.values())
}

impl ResultSet {
    pub fn new(algorithm: Algorithm) -> Self {
        ResultSet {
            algorithm,
            cores: BTreeMap::new(),
            stats: QueryStats::default(),
        }
    }

    pub fn len(&self) -> usize {
        self.cores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cores.is_empty()
    }

    /// Cores in ascending `(tti.start, tti.end)` order.
    pub fn iter(&self) -> impl Iterator<Item = &CoreSummary> {
        self.cores.values()
    }

    pub fn ttis(&self) -> Vec<TimeInterval> {
        self.cores.keys().copied().collect()
    }

    /// `(TTI, fingerprint)` of every core; requires materialization.
    pub fn signatures(&self) -> Option<BTreeSet<(TimeInterval, crate::model::Fingerprint)>> {
        self.cores
            .iter()
            .map(|(tti, c)| c.fingerprint().map(|f| (*tti, f)))
            .collect()
    }
}

pub(crate) fn summarize(
    tti: TimeInterval,
    edges: impl Iterator<Item = TemporalEdge>,
    materialize: bool,
) -> CoreSummary {
    let edges: Vec<TemporalEdge> = edges.collect();
    let vertices: BTreeSet<VertexId> = edges.iter().flat_map(|e| [e.src, e.dst]).collect();
    CoreSummary {
        tti,
        vertex_count: vertices.len(),
        edge_count: edges.len(),
        vertices: materialize.then(|| vertices.into_iter().collect()),
        edges: materialize.then_some(edges),
    }
}

/// Adds the core held by `tel` unless a core with the same TTI is already
/// present. Returns whether it was inserted.
pub fn register_result(results: &mut ResultSet, tel: &Tel, spec: &QuerySpec) -> bool {
    let tti = tel.get_tti().expect("register_result on an empty TEL");
    if results.cores.contains_key(&tti) {
        return false;
    }
    let summary = if spec.materialize {
        summarize(tti, tel.edges(), true)
    } else {
        CoreSummary {
            tti,
            vertex_count: tel.vertex_count(),
            edge_count: tel.edge_count(),
            vertices: None,
            edges: None,
        }
    };
    results.cores.insert(tti, summary);
    true
}

/// One pruning trigger observed during optimized enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PruneEvent {
    pub cell: TimeInterval,
    pub tti: TimeInterval,
}

struct Enumeration<'a> {
    spec: &'a QuerySpec,
    prune: bool,
    results: ResultSet,
    trace: Option<Vec<PruneEvent>>,
}

impl Enumeration<'_> {
    /// Records the core at `cell` and returns the next column to visit in
    /// this row, if any.
    fn visit(
        &mut self,
        tel: &Tel,
        schedule: &mut PruneSchedule,
        cell: TimeInterval,
        tti: TimeInterval,
    ) -> Option<Timestamp> {
        let stats = &mut self.results.stats;
        stats.nonempty_inductions += 1;
        register_result(&mut self.results, tel, self.spec);
        let domain = schedule.domain();
        let row = cell.start;
        let pred = |t: Timestamp| {
            let c = domain.binary_search(&t).expect("timestamp in domain");
            c.checked_sub(1).map(|c| domain[c]).filter(|&c| c >= row)
        };
        if !self.prune {
            return pred(cell.end);
        }
        // jump past the cells the right rule covers
        let before = pred(tti.end);
        let out = apply_pruning(schedule, cell, tti, self.spec.range.end);
        let stats = &mut self.results.stats;
        stats.pruned_cells.add(&out.covered);
        stats.triggers.add(&out.fired);
        if let Some(trace) = &mut self.trace {
            trace.push(PruneEvent { cell, tti });
        }
        schedule.next_unpruned_column(row, before?)
    }

    fn run(mut self, window: Tel) -> (ResultSet, Option<Vec<PruneEvent>>) {
        let started = Instant::now();
        let k = self.spec.k;
        let sigma = self.spec.sigma;
        let domain: Vec<Timestamp> = window
            .timeline()
            .map(|tl| window.tl_timestamp(tl))
            .collect();
        let mut schedule = PruneSchedule::new(domain.clone());
        self.results.stats.total_cells = schedule.total_cells();
        let Some(&top) = domain.last() else {
            self.results.stats.wall_time = started.elapsed();
            return (self.results, self.trace);
        };

        let mut head = window;
        let mut head_state = DegreeState::init(&head);
        let mut deleted_elsewhere = 0u64;
        self.results.stats.peak_tel_edges = head.edge_count() as u64;

        for &ts in &domain {
            let first = if self.prune {
                schedule.next_unpruned_column(ts, top)
            } else {
                Some(top)
            };
            let Some(first) = first else {
                continue;
            };
            let head_cell = TimeInterval::new(ts, top);
            let head_tti = tcd(&mut head, &mut head_state, k, head_cell, sigma);
            self.results.stats.tcd_ops += 1;
            if first == top {
                self.results.stats.cells_visited += 1;
            } else {
                self.results.stats.head_advances += 1;
            }
            let Some(head_tti) = head_tti else {
                // every remaining cell is nested in this one
                if first == top {
                    self.results.stats.empties += 1;
                }
                break;
            };

            let mut next = if first == top {
                self.visit(&head, &mut schedule, head_cell, head_tti)
            } else {
                Some(first)
            };
            let mut work: Option<(Tel, DegreeState)> = None;
            while let Some(te) = next {
                let (tel, state) = work.get_or_insert_with(|| {
                    let copy = head.clone();
                    let st = head_state.clone();
                    (copy, st)
                });
                let peak = (head.edge_count() + tel.edge_count()) as u64;
                let stats = &mut self.results.stats;
                stats.peak_tel_edges = stats.peak_tel_edges.max(peak);
                let cell = TimeInterval::new(ts, te);
                let tti = tcd(tel, state, k, cell, sigma);
                stats.tcd_ops += 1;
                stats.cells_visited += 1;
                match tti {
                    Some(tti) => {
                        let tel: &Tel = tel;
                        next = self.visit(tel, &mut schedule, cell, tti);
                    }
                    None => {
                        stats.empties += 1;
                        next = None;
                    }
                }
            }
            if let Some((tel, _)) = work {
                deleted_elsewhere += tel.counters().edges_deleted;
            }
        }
        self.results.stats.edges_deleted = head.counters().edges_deleted + deleted_elsewhere;
        self.results.stats.wall_time = started.elapsed();
        (self.results, self.trace)
    }
}

fn enumerate(
    window: Tel,
    spec: &QuerySpec,
    prune: bool,
    trace: bool,
) -> (ResultSet, Option<Vec<PruneEvent>>) {
    let algorithm = if prune {
        Algorithm::Otcd
    } else {
        Algorithm::Tcd
    };
    Enumeration {
        spec,
        prune,
        results: ResultSet::new(algorithm),
        trace: trace.then(Vec::new),
    }
    .run(window)
}

fn window_of(graph: &TemporalGraph, range: TimeInterval) -> Tel {
    Tel::from_sorted_edges(graph.edges_in(range))
}

/// Decremental enumeration of every cell, no pruning.
pub fn tcd_enumerate(graph: &TemporalGraph, spec: &QuerySpec) -> ResultSet {
    enumerate(window_of(graph, spec.range), spec, false, false).0
}

/// Decremental enumeration with TTI pruning.
pub fn otcd_enumerate(graph: &TemporalGraph, spec: &QuerySpec) -> ResultSet {
    enumerate(window_of(graph, spec.range), spec, true, false).0
}

/// [`otcd_enumerate`] that also returns every pruning trigger in visit order.
pub fn otcd_enumerate_traced(
    graph: &TemporalGraph,
    spec: &QuerySpec,
) -> (ResultSet, Vec<PruneEvent>) {
    let (r, t) = enumerate(window_of(graph, spec.range), spec, true, true);
    (r, t.unwrap_or_default())
}

/// Independent exhaustive enumeration.
pub fn brute_force_enumerate(graph: &TemporalGraph, spec: &QuerySpec) -> ResultSet {
    brute_force_enumerate_edges(graph.edges(), spec)
}

/// Answers a query with the algorithm named in `spec`, then applies the span
/// and top-n filters. A range outside the graph yields an empty result.
pub fn run_query(graph: &TemporalGraph, spec: &QuerySpec) -> Result<ResultSet, QueryError> {
    spec.validate()?;
    let results = match spec.algorithm {
        Algorithm::Otcd => otcd_enumerate(graph, spec),
        Algorithm::Tcd => tcd_enumerate(graph, spec),
        Algorithm::Brute => brute_force_enumerate(graph, spec),
    };
    Ok(post_filter(results, spec))
}

/// [`run_query`] against a TEL, e.g. one grown by appends. The TEL is not
/// modified.
pub fn run_query_on_tel(tel: &Tel, spec: &QuerySpec) -> Result<ResultSet, QueryError> {
    spec.validate()?;
    let window = tel.clone_window(spec.range);
    let results = match spec.algorithm {
        Algorithm::Otcd => enumerate(window, spec, true, false).0,
        Algorithm::Tcd => enumerate(window, spec, false, false).0,
        Algorithm::Brute => {
            let edges: Vec<TemporalEdge> = window.edges().collect();
            brute_force_enumerate_edges(&edges, spec)
        }
    };
    Ok(post_filter(results, spec))
}

fn post_filter(mut results: ResultSet, spec: &QuerySpec) -> ResultSet {
    if let Some(max_span) = spec.max_span {
        results.cores.retain(|tti, _| tti.length() <= max_span);
    }
    if let Some(n) = spec.top_n_shortest {
        let mut keys: Vec<TimeInterval> = results.cores.keys().copied().collect();
        keys.sort_by_key(|tti| (tti.length(), *tti));
        for tti in keys.into_iter().skip(n) {
            results.cores.remove(&tti);
        }
    }
    results
}
