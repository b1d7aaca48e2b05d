mod common;

use std::collections::BTreeSet;

use hubpaths::apsp::round_depth;
use hubpaths::hubset::{
    build_hub_hierarchy, collect_minimal_paths, greedy_hitting_set, hitting_set_bound, sample_hubs, sample_size,
    shortest_negative_cycle, verify_hub_property, HierarchyOutcome, HubHierarchy,
};
use hubpaths::oracle::{hop_limited_levels, min_negative_closed_walk_hops};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn greedy_hits_every_set_within_bound(
        sets in proptest::collection::vec(proptest::collection::btree_set(0usize..30, 1..8), 0..40)
    ) {
        let sets: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let hit = greedy_hitting_set(&sets, 30);
        let chosen: BTreeSet<usize> = hit.iter().copied().collect();
        prop_assert_eq!(chosen.len(), hit.len());
        for s in &sets {
            prop_assert!(s.iter().any(|v| chosen.contains(v)));
        }
        if let Some(min) = sets.iter().map(Vec::len).min() {
            prop_assert!(hit.len() <= hitting_set_bound(30, min, sets.len()));
        } else {
            prop_assert!(hit.is_empty());
        }
    }

    #[test]
    fn hierarchy_levels_are_hub_sets(g in common::feasible_digraph(14)) {
        let d = round_depth(g.n());
        let HierarchyOutcome::Hubs(h) = build_hub_hierarchy(&g, d).unwrap() else {
            panic!("no negative cycle, so no cycle outcome");
        };
        prop_assert_eq!(h.level(0).len(), g.n());
        for k in 0..=h.k() {
            prop_assert!(verify_hub_property(&g, h.level(k), 1 << k), "level {}", k);
        }
        for rec in &h.hitting {
            prop_assert!(rec.size <= rec.bound(g.n()));
        }
    }

    #[test]
    fn shortest_negative_cycle_has_fewest_hops(g in common::digraph(9, -5, 9)) {
        let found = shortest_negative_cycle(&g);
        prop_assert_eq!(found.as_ref().map(|c| c.hops()), min_negative_closed_walk_hops(&g));
        if let Some(c) = found {
            prop_assert!(c.cycle.is_closed() && c.cycle.is_simple());
            let resum: f64 = c.cycle.edges.iter().map(|&e| g.edge(e).weight).sum();
            prop_assert!(resum < 0.0);
            prop_assert_eq!(resum, c.weight());
        }
    }

    #[test]
    fn collected_paths_match_improving_pairs(g in common::feasible_digraph(9), h in 1usize..5) {
        let hubs: Vec<usize> = (0..g.n()).step_by(2).collect();
        let levels = hop_limited_levels(&g, h);
        let mut expected = BTreeSet::new();
        for &s in &hubs {
            for t in 0..g.n() {
                if levels[h].get(s, t) < levels[h - 1].get(s, t) {
                    expected.insert((s, t));
                }
            }
        }
        let paths = collect_minimal_paths(&g, &hubs, h).unwrap();
        let got: BTreeSet<(usize, usize)> = paths.iter().map(|p| (p.source(), p.target())).collect();
        prop_assert_eq!(got.len(), paths.len());
        prop_assert_eq!(got, expected);
        for p in &paths {
            prop_assert_eq!(p.hops(), h);
            prop_assert_eq!(p.length, levels[h].get(p.source(), p.target()));
            prop_assert!(p.is_simple());
        }
    }

    #[test]
    fn sampling_is_seeded(n in 1usize..200, h in 1usize..50, seed in any::<u64>()) {
        let h = h.min(n);
        let a = sample_hubs(n, h, seed);
        prop_assert_eq!(&a, &sample_hubs(n, h, seed));
        prop_assert_eq!(a.len(), sample_size(n, h));
        prop_assert!(a.windows(2).all(|w| w[0] < w[1]) && a.iter().all(|&v| v < n));
    }
}

#[test]
fn small_examples() {
    let g = |n, e: &[(usize, usize, f64)]| hubpaths::Digraph::new(n, e).unwrap();
    assert_eq!(greedy_hitting_set(&[vec![1, 2, 3], vec![3, 4, 5]], 6), vec![3]);
    assert_eq!(greedy_hitting_set(&[vec![0, 1], vec![2, 3], vec![4, 5]], 6).len(), 3);
    assert_eq!(sample_size(10, 1), 10);
    let path = g(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
    assert!(verify_hub_property(&path, &[1], 2));
    assert!(!verify_hub_property(&path, &[], 2));
    let two_plus_three = g(
        5,
        &[(0, 1, 1.0), (1, 0, -2.0), (2, 3, 1.0), (3, 4, 1.0), (4, 2, -3.0)],
    );
    let c = shortest_negative_cycle(&two_plus_three).unwrap();
    assert_eq!((c.hops(), c.weight()), (2, -1.0));
    let sampled = HubHierarchy::sampled(16, 8, 5).unwrap();
    assert_eq!(sampled.sizes().len(), 4);
}
