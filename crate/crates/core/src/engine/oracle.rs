//! Exhaustive reference enumeration.
//!
//! Every cell of the schedule is evaluated from scratch: project the edges,
//! drop pairs below the strength bound, detemporalize and run a plain k-core
//! peel. Nothing here touches the TEL, so it serves as an independent check
//! of the decremental algorithms.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use crate::decomposition::simple_core_decompose;
use crate::model::{edge_fingerprint, Fingerprint, TemporalEdge, TimeInterval, VertexId};

use super::{summarize, Algorithm, QuerySpec, ResultSet};

/// The temporal k-core of `cell` computed directly from `edges`, which must
/// be sorted by timestamp. Edges are returned in input order.
pub fn brute_force_core(
    edges: &[TemporalEdge],
    k: u32,
    sigma: u32,
    cell: TimeInterval,
) -> Vec<TemporalEdge> {
    let lo = edges.partition_point(|e| e.t < cell.start);
    let hi = edges.partition_point(|e| e.t <= cell.end);
    let projected = &edges[lo..hi.max(lo)];

    let mut strength: BTreeMap<(VertexId, VertexId), u32> = BTreeMap::new();
    for e in projected {
        *strength.entry(e.pair()).or_default() += 1;
    }
    let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
    for (&(a, b), &c) in &strength {
        if c >= sigma {
            adjacency.entry(a).or_default().insert(b);
            adjacency.entry(b).or_default().insert(a);
        }
    }
    let core = simple_core_decompose(&adjacency, k);
    projected
        .iter()
        .filter(|e| core.contains(&e.src) && core.contains(&e.dst) && strength[&e.pair()] >= sigma)
        .copied()
        .collect()
}

/// Evaluates every cell over the distinct timestamps of the query window and
/// keeps one core per edge fingerprint.
///
/// Panics if two distinct cores share a tightest time interval, or one core
/// shows two, since the TTI would then not identify a core.
pub fn brute_force_enumerate_edges(edges: &[TemporalEdge], spec: &QuerySpec) -> ResultSet {
    let started = Instant::now();
    let lo = edges.partition_point(|e| e.t < spec.range.start);
    let hi = edges.partition_point(|e| e.t <= spec.range.end);
    let window = &edges[lo..hi.max(lo)];
    let mut domain: Vec<_> = window.iter().map(|e| e.t).collect();
    domain.dedup();

    let n = domain.len() as u64;
    let mut results = ResultSet::new(Algorithm::Brute);
    results.stats.total_cells = n * (n + 1) / 2;

    let mut by_fingerprint: BTreeMap<Fingerprint, TimeInterval> = BTreeMap::new();
    let mut by_tti: BTreeMap<TimeInterval, Fingerprint> = BTreeMap::new();
    for (i, &ts) in domain.iter().enumerate() {
        for &te in &domain[i..] {
            let cell = TimeInterval::new(ts, te);
            let core = brute_force_core(window, spec.k, spec.sigma, cell);
            results.stats.cells_visited += 1;
            if core.is_empty() {
                results.stats.empties += 1;
                continue;
            }
            results.stats.nonempty_inductions += 1;
            let tti = TimeInterval::new(core[0].t, core[core.len() - 1].t);
            let fp = edge_fingerprint(&core);
            if let Some(prev) = by_tti.insert(tti, fp) {
                assert_eq!(prev, fp, "two distinct cores share TTI {tti}");
            }
            if let Some(prev) = by_fingerprint.insert(fp, tti) {
                assert_eq!(prev, tti, "one core reports two TTIs");
                continue;
            }
            let summary = summarize(tti, core.iter().copied(), spec.materialize);
            results.cores.insert(tti, summary);
        }
    }
    assert_eq!(by_fingerprint.len(), by_tti.len());
    results.stats.peak_tel_edges = 0;
    results.stats.wall_time = started.elapsed();
    results
}
