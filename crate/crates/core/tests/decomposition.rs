mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tkc_core::engine::brute_force_core;
use tkc_core::{edge_fingerprint, tcd, DegreeState, Tel, TimeInterval};

use common::{cells, graph_strategy};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn decremental_induction_matches_direct(
        g in graph_strategy(14, 90, 8),
        k in 1u32..5,
        sigma in 1u32..3,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 2),
    ) {
        let domain = g.timeline().to_vec();
        let all: Vec<TimeInterval> = cells(&domain).collect();
        let outer = *picks[0].get(&all);
        let nested: Vec<TimeInterval> = all.iter().copied().filter(|c| outer.contains(c)).collect();
        let inner = *picks[1].get(&nested);

        let mut tel = Tel::build(&g);
        let mut state = DegreeState::init(&tel);
        tcd(&mut tel, &mut state, k, outer, sigma);
        let tti = tcd(&mut tel, &mut state, k, inner, sigma);
        tel.validate().map_err(TestCaseError::fail)?;
        state.validate(&tel).map_err(TestCaseError::fail)?;

        let direct = brute_force_core(g.edges(), k, sigma, inner);
        let got: Vec<_> = tel.edges().collect();
        prop_assert_eq!(edge_fingerprint(&got), edge_fingerprint(&direct));
        let span = direct.first().map(|f| TimeInterval::new(f.t, direct.last().unwrap().t));
        prop_assert_eq!(tti, span);
    }

    #[test]
    fn tti_target_is_a_fixed_point(
        g in graph_strategy(14, 90, 8),
        k in 1u32..5,
        sigma in 1u32..3,
    ) {
        let domain = g.timeline().to_vec();
        for cell in cells(&domain) {
            let mut tel = Tel::build(&g);
            let mut state = DegreeState::init(&tel);
            let Some(tti) = tcd(&mut tel, &mut state, k, cell, sigma) else { continue };
            prop_assert!(cell.contains(&tti));
            let before: Vec<_> = tel.edges().collect();
            let deleted = tel.counters().edges_deleted;
            prop_assert_eq!(tcd(&mut tel, &mut state, k, tti, sigma), Some(tti));
            prop_assert_eq!(tel.counters().edges_deleted, deleted);
            prop_assert_eq!(tel.edges().collect::<Vec<_>>(), before);
        }
    }

    #[test]
    fn nested_cells_give_nested_cores(
        g in graph_strategy(14, 90, 8),
        k in 1u32..5,
    ) {
        let domain = g.timeline().to_vec();
        let all: Vec<TimeInterval> = cells(&domain).collect();
        for &outer in &all {
            let big = brute_force_core(g.edges(), k, 1, outer);
            let big_set: BTreeSet<_> = big.iter().map(|e| e.canonical()).collect();
            for inner in all.iter().filter(|c| outer.contains(c)) {
                let small = brute_force_core(g.edges(), k, 1, *inner);
                prop_assert!(small.iter().all(|e| big_set.contains(&e.canonical())));
                if let (Some(a), Some(b)) = (small.first(), big.first()) {
                    prop_assert!(a.t >= b.t);
                    prop_assert!(small.last().unwrap().t <= big.last().unwrap().t);
                }
            }
        }
    }

    #[test]
    fn peel_order_does_not_matter(
        g in graph_strategy(20, 150, 10),
        k in 1u32..6,
        sigma in 1u32..3,
        salt in 1u64..,
    ) {
        let range = common::full_range(&g);
        let mut a = Tel::build(&g);
        let mut sa = DegreeState::init(&a);
        let mut b = Tel::build(&g);
        let mut sb = DegreeState::init_with_tie_salt(&b, salt);
        prop_assert_eq!(
            tcd(&mut a, &mut sa, k, range, sigma),
            tcd(&mut b, &mut sb, k, range, sigma)
        );
        let ea: Vec<_> = a.edges().collect();
        let eb: Vec<_> = b.edges().collect();
        prop_assert_eq!(edge_fingerprint(&ea), edge_fingerprint(&eb));
    }

    #[test]
    fn core_degrees_and_strengths_hold(
        g in graph_strategy(20, 150, 10),
        k in 1u32..6,
        sigma in 1u32..4,
    ) {
        let range = common::full_range(&g);
        let mut tel = Tel::build(&g);
        let mut state = DegreeState::init(&tel);
        tcd(&mut tel, &mut state, k, range, sigma);
        for v in tel.vertices().collect::<Vec<_>>() {
            prop_assert!(state.degree(v) >= k, "{v} has degree {}", state.degree(v));
        }
        for e in tel.edges() {
            prop_assert!(state.pair_count(e.src, e.dst) >= sigma);
        }
    }
}
