use std::collections::BTreeMap;

use crate::model::{CoreSummary, TemporalEdge, VertexId};

/// Connected components of the undirected graph spanned by `edges`, each
/// sorted, ordered by smallest member.
pub fn components_of(edges: &[TemporalEdge]) -> Vec<Vec<VertexId>> {
    let mut index: BTreeMap<VertexId, usize> = BTreeMap::new();
    for e in edges {
        let n = index.len();
        index.entry(e.src).or_insert(n);
        let n = index.len();
        index.entry(e.dst).or_insert(n);
    }
    let mut parent: Vec<usize> = (0..index.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        let a = find(&mut parent, index[&e.src]);
        let b = find(&mut parent, index[&e.dst]);
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (&v, &i) in &index {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(v);
    }
    let mut out: Vec<Vec<VertexId>> = groups.into_values().collect();
    out.sort();
    out
}

/// Components of a materialized core; `None` if the core carries no edges.
pub fn connected_components(core: &CoreSummary) -> Option<Vec<Vec<VertexId>>> {
    core.edges.as_deref().map(components_of)
}
