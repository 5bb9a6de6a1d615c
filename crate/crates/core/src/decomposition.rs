//! Temporal core decomposition on a [`Tel`].
//!
//! [`tcd`] trims a TEL in place to the temporal k-core of a target interval:
//! it first truncates Time Lists outside the interval, then peels vertices
//! with fewer than `k` distinct neighbors. With a link-strength bound
//! `sigma > 1`, any vertex pair left with fewer than `sigma` parallel edges
//! loses all of them.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use crate::model::{TemporalEdge, TimeInterval, VertexId};
use crate::tel::{EdgeHandle, Tel};

type Pair = (VertexId, VertexId);

/// Per-vertex distinct-neighbor degrees, per-pair multiplicities and the
/// min-priority queue that drives peeling.
///
/// The queue is lazy: every degree decrease pushes a fresh entry and stale
/// entries are skipped when they surface.
#[derive(Debug, Default)]
pub struct DegreeState {
    pair_count: HashMap<Pair, u32>,
    degree: HashMap<VertexId, u32>,
    heap: BinaryHeap<Reverse<(u32, u64, VertexId)>>,
    tie_salt: u64,
    weak_pairs: Vec<Pair>,
    // strength bound every live pair is known to satisfy
    swept_sigma: u32,
}

impl DegreeState {
    /// Degree state of everything stored in `tel`.
    pub fn init(tel: &Tel) -> Self {
        Self::init_with_tie_salt(tel, 0)
    }

    /// Like [`DegreeState::init`] but breaks ties between equal degrees by a
    /// salted hash of the vertex id instead of the id itself.
    pub fn init_with_tie_salt(tel: &Tel, tie_salt: u64) -> Self {
        let mut state = DegreeState {
            tie_salt,
            ..Default::default()
        };
        for e in tel.edges() {
            let c = state.pair_count.entry(e.pair()).or_insert(0);
            *c += 1;
            if *c == 1 {
                *state.degree.entry(e.src).or_insert(0) += 1;
                *state.degree.entry(e.dst).or_insert(0) += 1;
            }
        }
        state.rebuild_heap();
        state
    }

    fn rebuild_heap(&mut self) {
        let entries: Vec<_> = self
            .degree
            .iter()
            .map(|(&v, &d)| Reverse((d, self.rank(v), v)))
            .collect();
        self.heap = BinaryHeap::from(entries);
    }

    #[inline]
    fn rank(&self, v: VertexId) -> u64 {
        if self.tie_salt == 0 {
            v.0 as u64
        } else {
            splitmix64(v.0 as u64 ^ self.tie_salt)
        }
    }

    /// Number of distinct live neighbors of `v` (0 if absent).
    pub fn degree(&self, v: VertexId) -> u32 {
        self.degree.get(&v).copied().unwrap_or(0)
    }

    /// Number of live parallel edges between `u` and `v`.
    pub fn pair_count(&self, u: VertexId, v: VertexId) -> u32 {
        let key = crate::model::canonical_pair(u, v);
        self.pair_count.get(&key).copied().unwrap_or(0)
    }

    /// Vertices with degree ≥ 1.
    pub fn live_vertices(&self) -> usize {
        self.degree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degree.is_empty()
    }

    /// Smallest live degree and its vertex, discarding stale queue entries.
    pub fn peek_min(&mut self) -> Option<(u32, VertexId)> {
        while let Some(&Reverse((d, _, v))) = self.heap.peek() {
            if self.degree.get(&v) == Some(&d) {
                return Some((d, v));
            }
            self.heap.pop();
        }
        None
    }

    fn on_edge_removed(&mut self, edge: &TemporalEdge, sigma: u32) {
        let pair = edge.pair();
        let c = self
            .pair_count
            .get_mut(&pair)
            .expect("removed edge missing from pair counts");
        *c -= 1;
        if *c == 0 {
            self.pair_count.remove(&pair);
            self.decrement(pair.0);
            self.decrement(pair.1);
        } else if *c < sigma {
            self.weak_pairs.push(pair);
        }
    }

    fn decrement(&mut self, v: VertexId) {
        let d = self.degree.get_mut(&v).expect("degree of a live vertex");
        *d -= 1;
        if *d == 0 {
            self.degree.remove(&v);
        } else {
            let entry = Reverse((*d, self.rank(v), v));
            self.heap.push(entry);
        }
    }

    /// Recomputes the state from `tel` and compares.
    pub fn validate(&self, tel: &Tel) -> Result<(), String> {
        let fresh = DegreeState::init(tel);
        if fresh.pair_count != self.pair_count {
            return Err("pair counts diverge from TEL".into());
        }
        if fresh.degree != self.degree {
            return Err("degrees diverge from TEL".into());
        }
        Ok(())
    }
}

impl Clone for DegreeState {
    /// Copies the counts and rebuilds a compact queue without stale entries.
    fn clone(&self) -> Self {
        let mut out = DegreeState {
            pair_count: self.pair_count.clone(),
            degree: self.degree.clone(),
            heap: BinaryHeap::new(),
            tie_salt: self.tie_salt,
            weak_pairs: self.weak_pairs.clone(),
            swept_sigma: self.swept_sigma,
        };
        out.rebuild_heap();
        out
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

pub fn init_state(tel: &Tel) -> DegreeState {
    DegreeState::init(tel)
}

/// Deletes one edge from the TEL and the degree state. With `drop_empty_tl`
/// the edge's Time List is unlinked once it runs empty.
fn remove_edge(
    tel: &mut Tel,
    state: &mut DegreeState,
    e: EdgeHandle,
    sigma: u32,
    drop_empty_tl: bool,
) {
    let edge = tel.edge(e);
    let tl = tel.tl_of(e);
    tel.del_edge(e);
    if drop_empty_tl && tel.tl_len(tl) == 0 {
        tel.del_tl(tl);
    }
    state.on_edge_removed(&edge, sigma);
}

/// Removes every remaining parallel edge of pairs that fell below `sigma`.
fn sweep_weak_pairs(tel: &mut Tel, state: &mut DegreeState, sigma: u32, buf: &mut Vec<EdgeHandle>) {
    while let Some((a, b)) = state.weak_pairs.pop() {
        let c = state.pair_count.get(&(a, b)).copied().unwrap_or(0);
        if c == 0 || c >= sigma {
            continue;
        }
        // scan the endpoint with the shorter incidence lists
        let (x, y) = if tel.incident_len(a) <= tel.incident_len(b) {
            (a, b)
        } else {
            (b, a)
        };
        buf.clear();
        buf.extend(tel.get_sl(x).filter(|&e| tel.edge(e).dst == y));
        buf.extend(tel.get_dl(x).filter(|&e| tel.edge(e).src == y));
        debug_assert_eq!(buf.len() as u32, c);
        for &e in buf.iter() {
            remove_edge(tel, state, e, sigma, true);
        }
    }
}

/// Drops Time Lists from the timeline head while they precede `start` and from
/// the tail while they follow `end`, deleting their edges first.
fn truncate(
    tel: &mut Tel,
    state: &mut DegreeState,
    target: TimeInterval,
    sigma: u32,
    buf: &mut Vec<EdgeHandle>,
) {
    while let Some(tl) = tel.head_tl() {
        if tel.tl_timestamp(tl) >= target.start {
            break;
        }
        buf.clear();
        buf.extend(tel.tl_edges(tl));
        for &e in buf.iter() {
            remove_edge(tel, state, e, sigma, false);
        }
        tel.del_tl(tl);
    }
    while let Some(tl) = tel.tail_tl() {
        if tel.tl_timestamp(tl) <= target.end {
            break;
        }
        buf.clear();
        buf.extend(tel.tl_edges(tl));
        for &e in buf.iter() {
            remove_edge(tel, state, e, sigma, false);
        }
        tel.del_tl(tl);
    }
}

/// Temporal core decomposition.
///
/// `tel` must hold a graph whose temporal k-core over `target` is a subgraph
/// of it (the whole projected graph, or any enclosing temporal k-core), and
/// `state` must describe `tel`. On return `tel` holds the temporal k-core of
/// `target` with every linked pair carrying at least `sigma` parallel edges;
/// the result's tightest time interval is returned, or `None` if it is empty.
pub fn tcd(
    tel: &mut Tel,
    state: &mut DegreeState,
    k: u32,
    target: TimeInterval,
    sigma: u32,
) -> Option<TimeInterval> {
    debug_assert!(k >= 1 && sigma >= 1);
    let mut buf = Vec::new();
    truncate(tel, state, target, sigma, &mut buf);
    if sigma > 1 {
        if state.swept_sigma < sigma {
            let weak: Vec<Pair> = state
                .pair_count
                .iter()
                .filter(|&(_, &c)| c < sigma)
                .map(|(&p, _)| p)
                .collect();
            state.weak_pairs.extend(weak);
            state.swept_sigma = sigma;
        }
        sweep_weak_pairs(tel, state, sigma, &mut buf);
    }
    while let Some((d, v)) = state.peek_min() {
        if d >= k {
            break;
        }
        buf.clear();
        buf.extend(tel.get_sl(v));
        buf.extend(tel.get_dl(v));
        for &e in buf.iter() {
            remove_edge(tel, state, e, sigma, true);
        }
        debug_assert_eq!(state.degree(v), 0);
        if sigma > 1 {
            sweep_weak_pairs(tel, state, sigma, &mut buf);
        }
    }
    tel.get_tti()
}

/// Standard k-core of a simple graph by repeated removal of vertices with
/// fewer than `k` neighbors. Vertices absent from the map have no neighbors.
pub fn simple_core_decompose(
    adjacency: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    k: u32,
) -> BTreeSet<VertexId> {
    let mut degree: BTreeMap<VertexId, usize> =
        adjacency.iter().map(|(&v, n)| (v, n.len())).collect();
    let mut removed: BTreeSet<VertexId> = BTreeSet::new();
    let mut stack: Vec<VertexId> = degree
        .iter()
        .filter(|&(_, &d)| d < k as usize)
        .map(|(&v, _)| v)
        .collect();
    while let Some(v) = stack.pop() {
        if !removed.insert(v) {
            continue;
        }
        for u in &adjacency[&v] {
            if removed.contains(u) {
                continue;
            }
            let d = degree.get_mut(u).expect("asymmetric adjacency");
            *d -= 1;
            if *d + 1 == k as usize {
                stack.push(*u);
            }
        }
    }
    degree
        .into_keys()
        .filter(|v| !removed.contains(v))
        .collect()
}
