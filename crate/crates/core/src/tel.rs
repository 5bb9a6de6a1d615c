//! Temporal Edge List.
//!
//! Every live edge is stored once in an arena and threaded through three
//! intrusive doubly linked lists: the Time List of its timestamp, the Source
//! List of its source vertex and the Destination List of its destination
//! vertex. Time Lists are themselves linked into an ascending timeline, so the
//! tightest time interval of the stored graph is read off the timeline head
//! and tail.
//!
//! All list manipulations are O(1): an edge node holds its own prev/next links
//! for each of the three lists plus a back-handle to its Time List node, so no
//! traversal or timestamp lookup is needed to unlink it.

use std::collections::HashMap;

use thiserror::Error;

use crate::model::{TemporalEdge, TemporalGraph, TimeInterval, Timestamp, VertexId};

const NIL: u32 = u32::MAX;

/// Handle of an edge node inside one [`Tel`]. Not valid across clones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeHandle(u32);

/// Handle of a Time List node inside one [`Tel`]. Not valid across clones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TlHandle(u32);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TelError {
    #[error("out-of-order append: timestamp {t} is before the current maximum {max}")]
    OutOfOrder { t: Timestamp, max: Timestamp },
    #[error("self-loop ({0}, {0}) cannot be stored")]
    SelfLoop(VertexId),
}

/// Pointer writes and structural operations performed on a TEL.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub link_writes: u64,
    pub edges_deleted: u64,
    pub tls_deleted: u64,
    pub edges_added: u64,
}

#[derive(Clone, Copy, Debug)]
struct Links {
    prev: u32,
    next: u32,
}

const UNLINKED: Links = Links {
    prev: NIL,
    next: NIL,
};

#[derive(Clone, Copy, Debug)]
struct ListHead {
    head: u32,
    tail: u32,
    len: u32,
}

const EMPTY_LIST: ListHead = ListHead {
    head: NIL,
    tail: NIL,
    len: 0,
};

#[derive(Clone, Debug)]
struct EdgeNode {
    edge: TemporalEdge,
    tl: u32,
    // indexed by Dim
    links: [Links; 3],
    live: bool,
}

#[derive(Clone, Debug)]
struct TlNode {
    t: Timestamp,
    edges: ListHead,
    prev: u32,
    next: u32,
    live: bool,
}

#[derive(Clone, Copy, Debug)]
struct VertexLists {
    sl: ListHead,
    dl: ListHead,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dim {
    Time = 0,
    Source = 1,
    Destination = 2,
}

const DIMS: [Dim; 3] = [Dim::Time, Dim::Source, Dim::Destination];

/// The mutable three-dimension edge list that temporal core decomposition
/// trims in place.
#[derive(Debug, Default)]
pub struct Tel {
    edges: Vec<EdgeNode>,
    tls: Vec<TlNode>,
    head: u32,
    tail: u32,
    timeline_len: usize,
    vertices: HashMap<VertexId, VertexLists>,
    edge_count: usize,
    counters: OpCounters,
}

impl Tel {
    pub fn new() -> Self {
        Tel {
            head: NIL,
            tail: NIL,
            ..Default::default()
        }
    }

    /// Builds the TEL of a whole graph.
    pub fn build(graph: &TemporalGraph) -> Self {
        Self::from_sorted_edges(graph.edges())
    }

    /// Builds a TEL by appending edges in order. Panics if the edges are not
    /// sorted by timestamp or contain a self-loop.
    pub fn from_sorted_edges<'a>(edges: impl IntoIterator<Item = &'a TemporalEdge>) -> Self {
        let edges = edges.into_iter();
        let mut tel = Tel::new();
        tel.edges.reserve(edges.size_hint().0);
        for e in edges {
            tel.add_edge(e.src, e.dst, e.t)
                .expect("edges must be sorted by timestamp and loop-free");
        }
        tel
    }

    /// Deep copy containing only the Time Lists inside `range`. List orders
    /// are preserved; handles are fresh.
    pub fn clone_window(&self, range: TimeInterval) -> Self {
        let mut out = Tel::new();
        let mut cur = self.head;
        while cur != NIL && self.tls[cur as usize].t < range.start {
            cur = self.tls[cur as usize].next;
        }
        while cur != NIL && self.tls[cur as usize].t <= range.end {
            let node = &self.tls[cur as usize];
            let mut e = node.edges.head;
            while e != NIL {
                let en = &self.edges[e as usize];
                out.push_edge(en.edge);
                e = en.links[Dim::Time as usize].next;
            }
            cur = node.next;
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.edge_count == 0
    }

    /// Number of Time List nodes currently linked into the timeline.
    pub fn timeline_len(&self) -> usize {
        self.timeline_len
    }

    /// Number of vertices with a nonempty Source or Destination List.
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edge nodes + Time List nodes + per-vertex list entries.
    pub fn live_node_count(&self) -> usize {
        self.edge_count + self.timeline_len + self.vertices.len()
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    /// `[head.t, tail.t]`, or `None` when the timeline is empty.
    pub fn get_tti(&self) -> Option<TimeInterval> {
        if self.head == NIL {
            None
        } else {
            Some(TimeInterval {
                start: self.tls[self.head as usize].t,
                end: self.tls[self.tail as usize].t,
            })
        }
    }

    pub fn head_tl(&self) -> Option<TlHandle> {
        handle(self.head).map(TlHandle)
    }

    pub fn tail_tl(&self) -> Option<TlHandle> {
        handle(self.tail).map(TlHandle)
    }

    pub fn next_tl(&self, tl: TlHandle) -> Option<TlHandle> {
        let node = &self.tls[tl.0 as usize];
        debug_assert!(node.live, "next_tl on a deleted TL");
        handle(node.next).map(TlHandle)
    }

    pub fn prev_tl(&self, tl: TlHandle) -> Option<TlHandle> {
        let node = &self.tls[tl.0 as usize];
        debug_assert!(node.live, "prev_tl on a deleted TL");
        handle(node.prev).map(TlHandle)
    }

    pub fn tl_timestamp(&self, tl: TlHandle) -> Timestamp {
        self.tls[tl.0 as usize].t
    }

    pub fn tl_len(&self, tl: TlHandle) -> usize {
        self.tls[tl.0 as usize].edges.len as usize
    }

    pub fn tl_is_live(&self, tl: TlHandle) -> bool {
        self.tls[tl.0 as usize].live
    }

    /// The Time List holding an edge (live or just deleted).
    pub fn tl_of(&self, e: EdgeHandle) -> TlHandle {
        TlHandle(self.edges[e.0 as usize].tl)
    }

    pub fn edge(&self, e: EdgeHandle) -> TemporalEdge {
        self.edges[e.0 as usize].edge
    }

    pub fn is_live(&self, e: EdgeHandle) -> bool {
        self.edges[e.0 as usize].live
    }

    /// Edges of a Time List in insertion order.
    pub fn tl_edges(&self, tl: TlHandle) -> ListIter<'_> {
        ListIter {
            tel: self,
            cur: self.tls[tl.0 as usize].edges.head,
            dim: Dim::Time,
        }
    }

    /// Source List of `v`: live edges whose source is `v`, in insertion order.
    pub fn get_sl(&self, v: VertexId) -> ListIter<'_> {
        ListIter {
            tel: self,
            cur: self.vertices.get(&v).map_or(NIL, |l| l.sl.head),
            dim: Dim::Source,
        }
    }

    /// Destination List of `v`.
    pub fn get_dl(&self, v: VertexId) -> ListIter<'_> {
        ListIter {
            tel: self,
            cur: self.vertices.get(&v).map_or(NIL, |l| l.dl.head),
            dim: Dim::Destination,
        }
    }

    /// Length of `v`'s Source List plus its Destination List.
    pub fn incident_len(&self, v: VertexId) -> usize {
        self.vertices
            .get(&v)
            .map_or(0, |l| (l.sl.len + l.dl.len) as usize)
    }

    /// Iterates the timeline from head to tail.
    pub fn timeline(&self) -> impl Iterator<Item = TlHandle> + '_ {
        let mut cur = self.head;
        std::iter::from_fn(move || {
            let h = handle(cur)?;
            cur = self.tls[h as usize].next;
            Some(TlHandle(h))
        })
    }

    /// All live edges in timeline order.
    pub fn edges(&self) -> impl Iterator<Item = TemporalEdge> + '_ {
        self.timeline()
            .flat_map(move |tl| self.tl_edges(tl).map(move |e| self.edge(e)))
    }

    /// Vertices that still have at least one incident edge.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    /// Appends an edge. The timestamp must not precede the current maximum.
    pub fn add_edge(
        &mut self,
        src: VertexId,
        dst: VertexId,
        t: Timestamp,
    ) -> Result<EdgeHandle, TelError> {
        if src == dst {
            return Err(TelError::SelfLoop(src));
        }
        if let Some(max) = self.get_tti().map(|i| i.end) {
            if t < max {
                return Err(TelError::OutOfOrder { t, max });
            }
        }
        Ok(self.push_edge(TemporalEdge { src, dst, t }))
    }

    fn push_edge(&mut self, edge: TemporalEdge) -> EdgeHandle {
        if self.tail == NIL || self.tls[self.tail as usize].t != edge.t {
            self.add_tl(edge.t);
        }
        let id = u32::try_from(self.edges.len()).expect("TEL edge arena overflow");
        assert!(id != NIL, "TEL edge arena overflow");
        self.edges.push(EdgeNode {
            edge,
            tl: self.tail,
            links: [UNLINKED; 3],
            live: true,
        });
        self.vertices.entry(edge.src).or_insert(VertexLists {
            sl: EMPTY_LIST,
            dl: EMPTY_LIST,
        });
        self.vertices.entry(edge.dst).or_insert(VertexLists {
            sl: EMPTY_LIST,
            dl: EMPTY_LIST,
        });
        for dim in DIMS {
            self.append(id, dim);
        }
        self.edge_count += 1;
        self.counters.edges_added += 1;
        EdgeHandle(id)
    }

    /// Links a fresh empty Time List at the end of the timeline.
    fn add_tl(&mut self, t: Timestamp) {
        debug_assert!(self.tail == NIL || self.tls[self.tail as usize].t < t);
        let id = u32::try_from(self.tls.len()).expect("TEL timeline arena overflow");
        self.tls.push(TlNode {
            t,
            edges: EMPTY_LIST,
            prev: self.tail,
            next: NIL,
            live: true,
        });
        if self.tail == NIL {
            self.head = id;
        } else {
            self.tls[self.tail as usize].next = id;
        }
        self.tail = id;
        self.timeline_len += 1;
        self.counters.link_writes += 3;
    }

    /// Unlinks an edge from its Time, Source and Destination Lists. The Time
    /// List node stays in the timeline even when it becomes empty.
    pub fn del_edge(&mut self, e: EdgeHandle) {
        let id = e.0;
        debug_assert!(self.edges[id as usize].live, "del_edge on a dead edge");
        if !self.edges[id as usize].live {
            return;
        }
        for dim in DIMS {
            self.unlink(id, dim);
        }
        let node = &mut self.edges[id as usize];
        node.live = false;
        let TemporalEdge { src, dst, .. } = node.edge;
        self.drop_vertex_if_bare(src);
        self.drop_vertex_if_bare(dst);
        self.edge_count -= 1;
        self.counters.edges_deleted += 1;
    }

    /// Unlinks a Time List node from the timeline. Member edges still inside
    /// are deleted first.
    pub fn del_tl(&mut self, tl: TlHandle) {
        let id = tl.0;
        debug_assert!(self.tls[id as usize].live, "del_tl on a dead TL");
        if !self.tls[id as usize].live {
            return;
        }
        while let Some(e) = handle(self.tls[id as usize].edges.head) {
            self.del_edge(EdgeHandle(e));
        }
        let TlNode { prev, next, .. } = self.tls[id as usize];
        if prev == NIL {
            self.head = next;
        } else {
            self.tls[prev as usize].next = next;
        }
        if next == NIL {
            self.tail = prev;
        } else {
            self.tls[next as usize].prev = prev;
        }
        let node = &mut self.tls[id as usize];
        node.live = false;
        node.prev = NIL;
        node.next = NIL;
        self.timeline_len -= 1;
        self.counters.tls_deleted += 1;
        self.counters.link_writes += 2;
    }

    fn drop_vertex_if_bare(&mut self, v: VertexId) {
        if let Some(l) = self.vertices.get(&v) {
            if l.sl.len == 0 && l.dl.len == 0 {
                self.vertices.remove(&v);
            }
        }
    }

    fn list_mut(&mut self, id: u32, dim: Dim) -> &mut ListHead {
        let node = &self.edges[id as usize];
        match dim {
            Dim::Time => &mut self.tls[node.tl as usize].edges,
            Dim::Source => {
                &mut self
                    .vertices
                    .get_mut(&node.edge.src)
                    .expect("missing SL")
                    .sl
            }
            Dim::Destination => {
                &mut self
                    .vertices
                    .get_mut(&node.edge.dst)
                    .expect("missing DL")
                    .dl
            }
        }
    }

    fn append(&mut self, id: u32, dim: Dim) {
        let list = self.list_mut(id, dim);
        let old_tail = list.tail;
        list.tail = id;
        if old_tail == NIL {
            list.head = id;
        }
        list.len += 1;
        if old_tail != NIL {
            self.edges[old_tail as usize].links[dim as usize].next = id;
        }
        self.edges[id as usize].links[dim as usize] = Links {
            prev: old_tail,
            next: NIL,
        };
        self.counters.link_writes += 3;
    }

    fn unlink(&mut self, id: u32, dim: Dim) {
        let Links { prev, next } = self.edges[id as usize].links[dim as usize];
        if prev != NIL {
            self.edges[prev as usize].links[dim as usize].next = next;
        }
        if next != NIL {
            self.edges[next as usize].links[dim as usize].prev = prev;
        }
        let list = self.list_mut(id, dim);
        if prev == NIL {
            list.head = next;
        }
        if next == NIL {
            list.tail = prev;
        }
        list.len -= 1;
        self.edges[id as usize].links[dim as usize] = UNLINKED;
        self.counters.link_writes += 3;
    }

    /// Checks every structural invariant; used by tests and debug tooling.
    pub fn validate(&self) -> Result<(), String> {
        let mut from_tl: Vec<u32> = Vec::new();
        let mut prev_t: Option<Timestamp> = None;
        let mut prev = NIL;
        let mut cur = self.head;
        let mut tl_count = 0;
        while cur != NIL {
            let node = &self.tls[cur as usize];
            if !node.live {
                return Err(format!("dead TL {cur} linked in timeline"));
            }
            if node.prev != prev {
                return Err(format!("TL {cur} has wrong prev link"));
            }
            if prev_t.is_some_and(|p| p >= node.t) {
                return Err("timeline not strictly ascending".into());
            }
            let members = self.walk(node.edges, Dim::Time)?;
            for &e in &members {
                if self.edges[e as usize].tl != cur || self.edges[e as usize].edge.t != node.t {
                    return Err(format!("edge {e} in wrong TL"));
                }
            }
            from_tl.extend(members);
            prev_t = Some(node.t);
            prev = cur;
            cur = node.next;
            tl_count += 1;
        }
        if prev != self.tail {
            return Err("timeline tail mismatch".into());
        }
        if tl_count != self.timeline_len {
            return Err("timeline length mismatch".into());
        }
        let mut from_sl = Vec::new();
        let mut from_dl = Vec::new();
        for (&v, lists) in &self.vertices {
            if lists.sl.len == 0 && lists.dl.len == 0 {
                return Err(format!("vertex {v} kept with empty lists"));
            }
            for e in self.walk(lists.sl, Dim::Source)? {
                if self.edges[e as usize].edge.src != v {
                    return Err(format!("edge {e} in SL of {v}"));
                }
                from_sl.push(e);
            }
            for e in self.walk(lists.dl, Dim::Destination)? {
                if self.edges[e as usize].edge.dst != v {
                    return Err(format!("edge {e} in DL of {v}"));
                }
                from_dl.push(e);
            }
        }
        from_tl.sort_unstable();
        from_sl.sort_unstable();
        from_dl.sort_unstable();
        if from_tl != from_sl || from_tl != from_dl {
            return Err("TL/SL/DL memberships disagree".into());
        }
        if from_tl.len() != self.edge_count {
            return Err("edge_count mismatch".into());
        }
        if from_tl.iter().any(|&e| !self.edges[e as usize].live) {
            return Err("dead edge still linked".into());
        }
        Ok(())
    }

    fn walk(&self, list: ListHead, dim: Dim) -> Result<Vec<u32>, String> {
        let mut out = Vec::with_capacity(list.len as usize);
        let mut prev = NIL;
        let mut cur = list.head;
        while cur != NIL {
            let l = self.edges[cur as usize].links[dim as usize];
            if l.prev != prev {
                return Err(format!("broken prev link at edge {cur} ({dim:?})"));
            }
            out.push(cur);
            if out.len() > self.edges.len() {
                return Err("cycle in list".into());
            }
            prev = cur;
            cur = l.next;
        }
        if prev != list.tail || out.len() != list.len as usize {
            return Err(format!("list tail/len mismatch ({dim:?})"));
        }
        Ok(out)
    }
}

impl Clone for Tel {
    /// Compacting deep copy: only live content is copied, list orders are
    /// preserved and handles are fresh.
    fn clone(&self) -> Self {
        let mut out = Tel::new();
        out.edges.reserve(self.edge_count);
        for tl in self.timeline() {
            for e in self.tl_edges(tl) {
                out.push_edge(self.edge(e));
            }
        }
        out
    }
}

#[inline]
fn handle(raw: u32) -> Option<u32> {
    (raw != NIL).then_some(raw)
}

/// Iterator over one intrusive list. Collect the handles before deleting.
pub struct ListIter<'a> {
    tel: &'a Tel,
    cur: u32,
    dim: Dim,
}

impl Iterator for ListIter<'_> {
    type Item = EdgeHandle;

    fn next(&mut self) -> Option<EdgeHandle> {
        let id = handle(self.cur)?;
        self.cur = self.tel.edges[id as usize].links[self.dim as usize].next;
        Some(EdgeHandle(id))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn tel_of(triples: &[(u32, u32, u64)]) -> Tel {
        let mut tel = Tel::new();
        for &(a, b, t) in triples {
            tel.add_edge(v(a), v(b), t).unwrap();
        }
        tel.validate().unwrap();
        tel
    }

    fn triples(tel: &Tel, it: ListIter<'_>) -> Vec<(u32, u32, u64)> {
        it.map(|e| {
            let e = tel.edge(e);
            (e.src.0, e.dst.0, e.t)
        })
        .collect()
    }

    const A: u32 = 0;
    const B: u32 = 1;
    const C: u32 = 2;

    #[test]
    fn build_empty() {
        let tel = Tel::build(&TemporalGraph::default());
        assert_eq!(tel.edge_count(), 0);
        assert_eq!(tel.get_tti(), None);
        assert!(tel.head_tl().is_none());
    }

    #[test]
    fn build_groups_by_timestamp() {
        let tel = tel_of(&[(A, B, 1), (B, C, 1), (A, C, 2)]);
        let tls: Vec<_> = tel.timeline().collect();
        assert_eq!(tls.len(), 2);
        assert_eq!(tel.tl_timestamp(tls[0]), 1);
        assert_eq!(tel.tl_len(tls[0]), 2);
        assert_eq!(tel.tl_len(tls[1]), 1);
        assert_eq!(triples(&tel, tel.get_sl(v(A))), vec![(A, B, 1), (A, C, 2)]);
        assert_eq!(triples(&tel, tel.get_dl(v(C))), vec![(B, C, 1), (A, C, 2)]);
    }

    #[test]
    fn clone_is_independent() {
        let empty = Tel::new().clone();
        assert!(empty.is_empty());

        let tel = tel_of(&[(A, B, 1), (B, C, 1), (A, C, 2)]);
        let mut copy = tel.clone();
        copy.validate().unwrap();
        assert_eq!(copy.get_tti(), tel.get_tti());
        assert_eq!(copy.edge_count(), tel.edge_count());
        let first = copy.get_sl(v(A)).next().unwrap();
        copy.del_edge(first);
        assert_eq!(tel.edge_count(), 3);
        assert_eq!(copy.edge_count(), 2);
        tel.validate().unwrap();
    }

    #[test]
    fn clone_compacts_and_keeps_order() {
        let mut tel = tel_of(&[(A, B, 1), (B, C, 1), (A, C, 2), (A, B, 3), (C, A, 3)]);
        let e = tel.get_sl(v(B)).next().unwrap();
        tel.del_edge(e);
        let copy = tel.clone();
        copy.validate().unwrap();
        assert_eq!(copy.edges.len(), 4);
        assert_eq!(
            triples(&copy, copy.get_sl(v(A))),
            triples(&tel, tel.get_sl(v(A)))
        );
        assert_eq!(triples(&copy, copy.get_dl(v(A))), vec![(C, A, 3)]);
    }

    #[test]
    fn del_edge_leaves_empty_tl() {
        let mut tel = tel_of(&[(A, B, 3), (A, C, 5)]);
        let e = tel.get_dl(v(C)).next().unwrap();
        let tl = tel.tl_of(e);
        tel.del_edge(e);
        assert_eq!(tel.tl_len(tl), 0);
        assert!(tel.tl_is_live(tl));
        assert_eq!(tel.get_tti(), Some(TimeInterval::new(3, 5)));
        tel.del_tl(tl);
        assert_eq!(tel.get_tti(), Some(TimeInterval::new(3, 3)));
        tel.validate().unwrap();
    }

    #[test]
    fn del_one_parallel_edge() {
        let mut tel = tel_of(&[(A, B, 3), (A, B, 3)]);
        let e = tel.get_sl(v(A)).next().unwrap();
        tel.del_edge(e);
        assert_eq!(tel.get_sl(v(A)).count(), 1);
        assert_eq!(tel.get_tti(), Some(TimeInterval::new(3, 3)));
        tel.validate().unwrap();
    }

    #[test]
    fn delete_everything() {
        let mut tel = tel_of(&[(A, B, 1), (B, C, 2), (C, A, 2)]);
        let handles: Vec<_> = tel
            .timeline()
            .flat_map(|tl| tel.tl_edges(tl).collect::<Vec<_>>())
            .collect();
        for e in handles {
            tel.del_edge(e);
        }
        assert_eq!(tel.edge_count(), 0);
        assert_eq!(tel.vertex_count(), 0);
        assert_eq!(tel.timeline_len(), 2);
        tel.validate().unwrap();
    }

    #[test]
    fn del_tl_head_tail_only() {
        let mut tel = tel_of(&[(A, B, 1), (A, B, 3), (A, B, 7)]);
        let head = tel.head_tl().unwrap();
        tel.del_tl(head);
        assert_eq!(tel.get_tti(), Some(TimeInterval::new(3, 7)));
        let tail = tel.tail_tl().unwrap();
        tel.del_tl(tail);
        assert_eq!(tel.get_tti(), Some(TimeInterval::new(3, 3)));
        let only = tel.head_tl().unwrap();
        tel.del_tl(only);
        assert_eq!(tel.get_tti(), None);
        assert_eq!(tel.edge_count(), 0);
        tel.validate().unwrap();
    }

    #[test]
    fn timeline_navigation() {
        let tel = tel_of(&[(A, B, 1), (A, B, 3), (A, B, 7)]);
        let head = tel.head_tl().unwrap();
        let tail = tel.tail_tl().unwrap();
        assert_eq!(tel.prev_tl(head), None);
        assert_eq!(tel.next_tl(tail), None);
        let mid = tel.next_tl(head).unwrap();
        assert_eq!(tel.tl_timestamp(mid), 3);
        assert_eq!(tel.next_tl(mid).map(|t| tel.tl_timestamp(t)), Some(7));
        assert_eq!(tel.prev_tl(mid), Some(head));
    }

    #[test]
    fn vertex_lists() {
        let mut tel = tel_of(&[(A, B, 1), (C, A, 2)]);
        assert_eq!(tel.get_sl(v(B)).count(), 0);
        assert_eq!(tel.get_sl(v(9)).count(), 0);
        let e = tel.get_dl(v(A)).next().unwrap();
        tel.del_edge(e);
        assert_eq!(tel.get_dl(v(A)).count(), 0);
    }

    #[test]
    fn sl_of_hand_built_tel() {
        let v5 = 5;
        let tel = tel_of(&[
            (v5, 1, 1),
            (2, v5, 1),
            (v5, 3, 2),
            (4, 3, 2),
            (v5, 1, 3),
            (3, v5, 4),
        ]);
        assert_eq!(
            triples(&tel, tel.get_sl(v(v5))),
            vec![(v5, 1, 1), (v5, 3, 2), (v5, 1, 3)]
        );
        assert_eq!(
            triples(&tel, tel.get_dl(v(v5))),
            vec![(2, v5, 1), (3, v5, 4)]
        );
    }

    #[test]
    fn tti_reads_head_and_tail() {
        assert_eq!(
            tel_of(&[(A, B, 7)]).get_tti(),
            Some(TimeInterval::new(7, 7))
        );
        assert_eq!(
            tel_of(&[(A, B, 2), (B, C, 3)]).get_tti(),
            Some(TimeInterval::new(2, 3))
        );
    }

    #[test]
    fn append_semantics() {
        let mut tel = tel_of(&[(A, B, 7)]);
        tel.add_edge(v(A), v(B), 9).unwrap();
        assert_eq!(tel.tl_timestamp(tel.tail_tl().unwrap()), 9);
        tel.add_edge(v(A), v(B), 9).unwrap();
        assert_eq!(tel.tl_len(tel.tail_tl().unwrap()), 2);
        assert_eq!(tel.timeline_len(), 2);
        assert_eq!(
            tel.add_edge(v(A), v(B), 3),
            Err(TelError::OutOfOrder { t: 3, max: 9 })
        );
        assert_eq!(tel.add_edge(v(A), v(A), 10), Err(TelError::SelfLoop(v(A))));
        tel.validate().unwrap();
    }

    #[test]
    fn clone_window_copies_only_range() {
        let tel = tel_of(&[(A, B, 1), (B, C, 2), (C, A, 4), (A, B, 6)]);
        let w = tel.clone_window(TimeInterval::new(2, 5));
        w.validate().unwrap();
        assert_eq!(w.edge_count(), 2);
        assert_eq!(w.get_tti(), Some(TimeInterval::new(2, 4)));
        assert!(tel.clone_window(TimeInterval::new(7, 9)).is_empty());
    }
}
