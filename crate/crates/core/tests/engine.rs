mod common;

use proptest::prelude::*;
use tkc_core::engine::{brute_force_core, otcd_enumerate_traced, PruneEvent};
use tkc_core::{
    edge_fingerprint, otcd_enumerate, run_query, Algorithm, QuerySpec, TemporalGraph, TimeInterval,
    Timestamp,
};

use common::{full_range, graph_strategy, signatures};

fn core_print(g: &TemporalGraph, k: u32, sigma: u32, cell: TimeInterval) -> tkc_core::Fingerprint {
    edge_fingerprint(&brute_force_core(g.edges(), k, sigma, cell))
}

/// Every cell a trigger covers, paired with the cell whose core it repeats.
fn covered_with_sources(domain: &[Timestamp], ev: PruneEvent) -> Vec<(TimeInterval, TimeInterval)> {
    let PruneEvent { cell, tti } = ev;
    let cols =
        |lo: Timestamp, hi: Timestamp| domain.iter().copied().filter(move |&c| lo <= c && c <= hi);
    let mut out = Vec::new();
    if tti.end < cell.end {
        for c in cols(tti.end, cell.end - 1) {
            out.push((TimeInterval::new(cell.start, c), cell));
        }
    }
    if tti.start > cell.start {
        for r in cols(cell.start + 1, tti.start) {
            for c in cols(r, cell.end) {
                out.push((TimeInterval::new(r, c), TimeInterval::new(cell.start, c)));
            }
        }
    }
    if tti.start > cell.start && tti.end < cell.end {
        for r in cols(tti.start + 1, tti.end) {
            for c in cols(tti.end + 1, cell.end) {
                out.push((TimeInterval::new(r, c), TimeInterval::new(r, tti.end)));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn algorithms_agree(
        g in graph_strategy(30, 300, 20),
        k in 1u32..=5,
        sigma in 1u32..=2,
    ) {
        let spec = QuerySpec::new(k, full_range(&g)).with_sigma(sigma).materialized();
        let brute = signatures(&run_query(&g, &spec.clone().with_algorithm(Algorithm::Brute)).unwrap());
        let tcd = signatures(&run_query(&g, &spec.clone().with_algorithm(Algorithm::Tcd)).unwrap());
        let otcd = signatures(&run_query(&g, &spec).unwrap());
        prop_assert_eq!(&tcd, &brute);
        prop_assert_eq!(&otcd, &brute);
    }

    #[test]
    fn algorithms_agree_on_subranges(
        g in graph_strategy(20, 200, 15),
        k in 1u32..=4,
        a in 1u64..40,
        len in 0u64..30,
    ) {
        let spec = QuerySpec::new(k, TimeInterval::new(a, a + len)).materialized();
        let brute = signatures(&run_query(&g, &spec.clone().with_algorithm(Algorithm::Brute)).unwrap());
        let otcd = signatures(&run_query(&g, &spec).unwrap());
        prop_assert_eq!(otcd, brute);
    }

    #[test]
    fn every_core_is_induced_at_least_once(
        g in graph_strategy(30, 300, 20),
        k in 1u32..=5,
        sigma in 1u32..=2,
    ) {
        let otcd = otcd_enumerate(&g, &QuerySpec::new(k, full_range(&g)).with_sigma(sigma));
        let tcd = tkc_core::tcd_enumerate(&g, &QuerySpec::new(k, full_range(&g)).with_sigma(sigma));
        prop_assert!(otcd.stats.nonempty_inductions >= otcd.len() as u64);
        prop_assert!(otcd.stats.nonempty_inductions <= tcd.stats.nonempty_inductions);
    }

    #[test]
    fn pruned_cells_repeat_their_source(
        g in graph_strategy(16, 120, 10),
        k in 1u32..=4,
        sigma in 1u32..=2,
    ) {
        let range = full_range(&g);
        let (_, events) = otcd_enumerate_traced(&g, &QuerySpec::new(k, range).with_sigma(sigma));
        let domain = g.timeline_in(range).to_vec();
        for ev in events {
            for (cell, source) in covered_with_sources(&domain, ev) {
                prop_assert_eq!(
                    core_print(&g, k, sigma, cell),
                    core_print(&g, k, sigma, source),
                    "cell {} vs source {} (trigger {} tti {})", cell, source, ev.cell, ev.tti
                );
            }
        }
    }

    #[test]
    fn counts_fall_with_k_and_sigma(g in graph_strategy(30, 300, 20)) {
        let range = full_range(&g);
        for sigma in 1..=3 {
            let counts: Vec<usize> = (1..=6)
                .map(|k| otcd_enumerate(&g, &QuerySpec::new(k, range).with_sigma(sigma)).len())
                .collect();
            prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]), "sigma {}: {:?}", sigma, counts);
        }
        for k in 1..=4 {
            let counts: Vec<usize> = (1..=3)
                .map(|s| otcd_enumerate(&g, &QuerySpec::new(k, range).with_sigma(s)).len())
                .collect();
            prop_assert!(counts.windows(2).all(|w| w[0] >= w[1]), "k {}: {:?}", k, counts);
        }
    }

    #[test]
    fn output_is_deterministic(g in graph_strategy(30, 300, 20), k in 1u32..=4) {
        let spec = QuerySpec::new(k, full_range(&g)).materialized();
        let a = serde_json::to_string(&run_query(&g, &spec).unwrap()).unwrap();
        let b = serde_json::to_string(&run_query(&g, &spec).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn filters_hold(
        g in graph_strategy(30, 300, 20),
        k in 1u32..=4,
        span in 1u64..10,
        n in 0usize..6,
    ) {
        let range = full_range(&g);
        let base = run_query(&g, &QuerySpec::new(k, range)).unwrap();
        let spanned = run_query(&g, &QuerySpec::new(k, range).with_max_span(span)).unwrap();
        prop_assert!(spanned.iter().all(|c| c.tti.end - c.tti.start <= span));
        let expect: Vec<_> = base.ttis().into_iter().filter(|t| t.length() <= span).collect();
        prop_assert_eq!(spanned.ttis(), expect);

        let top = run_query(&g, &QuerySpec::new(k, range).with_top_n_shortest(n)).unwrap();
        prop_assert_eq!(top.len(), n.min(base.len()));
        let worst_kept = top.iter().map(|c| c.tti.length()).max().unwrap_or(0);
        let dropped = base.iter().filter(|c| !top.cores.contains_key(&c.tti));
        for c in dropped {
            prop_assert!(c.tti.length() >= worst_kept);
        }
    }

    #[test]
    fn strength_filter_holds(g in graph_strategy(30, 300, 20), k in 1u32..=4) {
        let spec = QuerySpec::new(k, full_range(&g)).with_sigma(2).materialized();
        for core in run_query(&g, &spec).unwrap().iter() {
            let mut pairs = std::collections::BTreeMap::new();
            for e in core.edges.as_ref().unwrap() {
                *pairs.entry(e.pair()).or_insert(0u32) += 1;
            }
            prop_assert!(pairs.values().all(|&c| c >= 2));
        }
    }
}

#[test]
fn duplicate_edges_count_once_for_degree() {
    // a path with every edge repeated is never a 2-core
    let g = TemporalGraph::from_triples([(0, 1, 1), (0, 1, 1), (1, 2, 2), (1, 2, 3), (0, 1, 3)]);
    let r = run_query(&g, &QuerySpec::new(2, TimeInterval::new(1, 3))).unwrap();
    assert!(r.is_empty());
    let r = run_query(
        &g,
        &QuerySpec::new(1, TimeInterval::new(1, 3)).with_sigma(2),
    )
    .unwrap();
    assert_eq!(
        r.ttis(),
        vec![
            TimeInterval::new(1, 1),
            TimeInterval::new(1, 3),
            TimeInterval::new(2, 3)
        ]
    );
}

#[test]
fn repeated_core_outside_every_rule() {
    // [4,5] yields TTI [5,5] and the under rule covers only [5,5]; the row
    // head [5,9] is not covered and induces the same core again
    let g = TemporalGraph::from_triples([(1, 2, 4), (0, 2, 5), (2, 3, 5), (0, 3, 5), (1, 3, 9)]);
    let spec = QuerySpec::new(2, TimeInterval::new(4, 9));
    let (r, events) = otcd_enumerate_traced(&g, &spec);
    assert_eq!(
        r.ttis(),
        vec![TimeInterval::new(4, 9), TimeInterval::new(5, 5)]
    );
    assert_eq!(r.stats.nonempty_inductions, 3);
    let cells: Vec<_> = events.iter().map(|e| (e.cell, e.tti)).collect();
    assert_eq!(
        cells,
        vec![
            (TimeInterval::new(4, 9), TimeInterval::new(4, 9)),
            (TimeInterval::new(4, 5), TimeInterval::new(5, 5)),
            (TimeInterval::new(5, 9), TimeInterval::new(5, 5)),
        ]
    );
}
