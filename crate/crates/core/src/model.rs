//! Shared vocabulary: vertices, timestamps, intervals, temporal edges and
//! the immutable temporal multigraph.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Integer timestamp. Normalized graphs use 1-based offsets.
pub type Timestamp = u64;

/// Dense vertex id assigned by the ingestion interning table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Closed time interval `[start, end]`.
///
/// Ordered by start, then end, which is also the result ordering of a query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TimeInterval {
    pub start: Timestamp,
    pub end: Timestamp,
}

impl TimeInterval {
    /// Panics if `start > end`; use [`TimeInterval::try_new`] for untrusted input.
    pub fn new(start: Timestamp, end: Timestamp) -> Self {
        assert!(start <= end, "invalid interval [{start},{end}]");
        TimeInterval { start, end }
    }

    pub fn try_new(start: Timestamp, end: Timestamp) -> Option<Self> {
        (start <= end).then_some(TimeInterval { start, end })
    }

    /// True iff `inner` is nested in `self`.
    #[inline]
    pub fn contains(&self, inner: &TimeInterval) -> bool {
        self.start <= inner.start && inner.end <= self.end
    }

    #[inline]
    pub fn contains_time(&self, t: Timestamp) -> bool {
        self.start <= t && t <= self.end
    }

    /// `end - start`, in time units.
    #[inline]
    pub fn span(&self) -> u64 {
        self.end - self.start
    }

    /// Number of time units covered, `end - start + 1`.
    pub fn length(&self) -> u64 {
        self.end - self.start + 1
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

/// Free-function form of [`TimeInterval::contains`].
pub fn interval_contains(outer: &TimeInterval, inner: &TimeInterval) -> bool {
    outer.contains(inner)
}

/// A timestamped interaction. Orientation is kept for storage only; all
/// degree and strength semantics treat the edge as undirected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub t: Timestamp,
}

impl TemporalEdge {
    pub fn new(src: impl Into<VertexId>, dst: impl Into<VertexId>, t: Timestamp) -> Self {
        TemporalEdge {
            src: src.into(),
            dst: dst.into(),
            t,
        }
    }

    /// The unordered endpoint pair, smaller id first.
    #[inline]
    pub fn pair(&self) -> (VertexId, VertexId) {
        canonical_pair(self.src, self.dst)
    }

    /// `(min endpoint, max endpoint, t)`.
    #[inline]
    pub fn canonical(&self) -> (u32, u32, Timestamp) {
        let (a, b) = self.pair();
        (a.0, b.0, self.t)
    }
}

#[inline]
pub fn canonical_pair(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable temporal multigraph.
///
/// Edges are stably sorted by timestamp. Self-loops are rejected at
/// construction; exact duplicates are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TemporalGraph {
    vertex_count: usize,
    edges: Vec<TemporalEdge>,
    timeline: Vec<Timestamp>,
    external_ids: Option<Vec<u64>>,
    time_origin: Option<Timestamp>,
}

impl TemporalGraph {
    /// Builds a graph over vertices `0..vertex_count`. Self-loops are dropped.
    ///
    /// Panics if an edge references a vertex outside the range.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = TemporalEdge>) -> Self {
        let mut edges: Vec<TemporalEdge> = edges.into_iter().filter(|e| e.src != e.dst).collect();
        for e in &edges {
            assert!(
                e.src.index() < vertex_count && e.dst.index() < vertex_count,
                "edge ({}, {}, {}) outside vertex range {vertex_count}",
                e.src,
                e.dst,
                e.t
            );
        }
        edges.sort_by_key(|e| e.t);
        let mut timeline: Vec<Timestamp> = edges.iter().map(|e| e.t).collect();
        timeline.dedup();
        TemporalGraph {
            vertex_count,
            edges,
            timeline,
            external_ids: None,
            time_origin: None,
        }
    }

    /// Convenience constructor from `(u, v, t)` triples; the vertex count is
    /// one past the largest id mentioned.
    pub fn from_triples(triples: impl IntoIterator<Item = (u32, u32, Timestamp)>) -> Self {
        let edges: Vec<TemporalEdge> = triples
            .into_iter()
            .map(|(u, v, t)| TemporalEdge::new(u, v, t))
            .collect();
        let n = edges
            .iter()
            .map(|e| e.src.0.max(e.dst.0) as usize + 1)
            .max()
            .unwrap_or(0);
        Self::new(n, edges)
    }

    pub(crate) fn with_provenance(
        mut self,
        external_ids: Vec<u64>,
        time_origin: Option<Timestamp>,
    ) -> Self {
        debug_assert_eq!(external_ids.len(), self.vertex_count);
        self.external_ids = Some(external_ids);
        self.time_origin = time_origin;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    /// Sorted distinct timestamps present in the graph.
    pub fn timeline(&self) -> &[Timestamp] {
        &self.timeline
    }

    pub fn t_min(&self) -> Option<Timestamp> {
        self.timeline.first().copied()
    }

    pub fn t_max(&self) -> Option<Timestamp> {
        self.timeline.last().copied()
    }

    /// Edges with timestamps inside `range`, as a contiguous slice.
    pub fn edges_in(&self, range: TimeInterval) -> &[TemporalEdge] {
        let lo = self.edges.partition_point(|e| e.t < range.start);
        let hi = self.edges.partition_point(|e| e.t <= range.end);
        &self.edges[lo..hi.max(lo)]
    }

    /// Distinct timestamps inside `range`.
    pub fn timeline_in(&self, range: TimeInterval) -> &[Timestamp] {
        let lo = self.timeline.partition_point(|&t| t < range.start);
        let hi = self.timeline.partition_point(|&t| t <= range.end);
        &self.timeline[lo..hi.max(lo)]
    }

    /// Raw input id of a vertex when the graph came from a file.
    pub fn external_id(&self, v: VertexId) -> u64 {
        match &self.external_ids {
            Some(ids) => ids[v.index()],
            None => v.0 as u64,
        }
    }

    /// Raw timestamp of the normalized offset 1, if the graph was normalized.
    pub fn time_origin(&self) -> Option<Timestamp> {
        self.time_origin
    }

    /// Raw value of a stored timestamp.
    pub fn raw_timestamp(&self, t: Timestamp) -> Timestamp {
        match self.time_origin {
            Some(o) => t + o - 1,
            None => t,
        }
    }

    /// Stored value of a raw timestamp; saturates below the origin.
    pub fn normalized_timestamp(&self, raw: Timestamp) -> Timestamp {
        match self.time_origin {
            Some(o) => raw.saturating_sub(o - 1),
            None => raw,
        }
    }
}

/// Canonical identity of an edge multiset: SHA-256 over the sorted list of
/// `(min endpoint, max endpoint, t)` triples.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint([u8; 32]);

impl Fingerprint {
    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// All 32 bytes as lowercase hex.
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fingerprint({self})")
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl Serialize for Fingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Sorted canonical triples of an edge multiset.
pub fn canonical_edges<'a>(
    edges: impl IntoIterator<Item = &'a TemporalEdge>,
) -> Vec<(u32, u32, Timestamp)> {
    let mut out: Vec<_> = edges.into_iter().map(TemporalEdge::canonical).collect();
    out.sort_unstable_by(|a, b| match a.2.cmp(&b.2) {
        Ordering::Equal => (a.0, a.1).cmp(&(b.0, b.1)),
        o => o,
    });
    out
}

pub fn edge_fingerprint<'a>(edges: impl IntoIterator<Item = &'a TemporalEdge>) -> Fingerprint {
    let mut h = Sha256::new();
    for (a, b, t) in canonical_edges(edges) {
        h.update(a.to_le_bytes());
        h.update(b.to_le_bytes());
        h.update(t.to_le_bytes());
    }
    Fingerprint(h.finalize().into())
}

/// One distinct temporal k-core found by a query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreSummary {
    pub tti: TimeInterval,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Present when materialization was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertices: Option<Vec<VertexId>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<TemporalEdge>>,
}

impl CoreSummary {
    pub fn is_materialized(&self) -> bool {
        self.edges.is_some()
    }

    pub fn fingerprint(&self) -> Option<Fingerprint> {
        self.edges.as_ref().map(|e| edge_fingerprint(e))
    }
}
