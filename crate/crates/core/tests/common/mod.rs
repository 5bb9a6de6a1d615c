#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use tkc_core::{Fingerprint, ResultSet, TemporalEdge, TemporalGraph, TimeInterval, Timestamp};

/// Random multigraph with at most `max_v` vertices, `max_e` edges and
/// `max_ts` distinct timestamps drawn from `1..=2 * max_ts`.
pub fn random_graph(rng: &mut StdRng, max_v: u32, max_e: usize, max_ts: usize) -> TemporalGraph {
    let n = rng.gen_range(2..=max_v);
    let m = rng.gen_range(1..=max_e);
    let mut pool: Vec<Timestamp> = (1..=2 * max_ts as Timestamp).collect();
    pool.shuffle(rng);
    let times = &pool[..rng.gen_range(1..=max_ts)];
    let edges: Vec<TemporalEdge> = (0..m)
        .filter_map(|_| {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            let t = *times.choose(rng).unwrap();
            (u != v).then(|| TemporalEdge::new(u, v, t))
        })
        .collect();
    TemporalGraph::new(n as usize, edges)
}

pub fn corpus(count: usize, seed: u64) -> Vec<TemporalGraph> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_graph(&mut rng, 30, 300, 20))
        .collect()
}

/// Proptest strategy over small graphs, as a seed for [`random_graph`].
pub fn graph_strategy(
    max_v: u32,
    max_e: usize,
    max_ts: usize,
) -> impl Strategy<Value = TemporalGraph> {
    any::<u64>()
        .prop_map(move |seed| random_graph(&mut StdRng::seed_from_u64(seed), max_v, max_e, max_ts))
}

pub fn full_range(g: &TemporalGraph) -> TimeInterval {
    match (g.t_min(), g.t_max()) {
        (Some(a), Some(b)) => TimeInterval::new(a, b),
        _ => TimeInterval::new(1, 1),
    }
}

pub fn signatures(r: &ResultSet) -> BTreeSet<(TimeInterval, Fingerprint)> {
    r.signatures().expect("materialized result set")
}

pub fn cells(domain: &[Timestamp]) -> impl Iterator<Item = TimeInterval> + '_ {
    domain
        .iter()
        .enumerate()
        .flat_map(move |(i, &s)| domain[i..].iter().map(move |&e| TimeInterval::new(s, e)))
}
