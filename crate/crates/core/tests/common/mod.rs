#![allow(dead_code)]

use hubpaths::gen;
use hubpaths::parametric::TimedDigraph;
use hubpaths::Digraph;
use proptest::prelude::*;

/// Arbitrary small digraph: self-loops and parallel edges allowed.
pub fn digraph(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n, lo..=hi), 0..=2 * n + 2).prop_map(move |es| {
            let es: Vec<_> = es.into_iter().map(|(u, v, w)| (u, v, w as f64)).collect();
            Digraph::new(n, &es).unwrap()
        })
    })
}

/// Erdos-Renyi digraph without negative cycles, from a random seed.
pub fn feasible_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (any::<u64>(), 1..=max_n, 0.1..0.6f64)
        .prop_map(|(seed, n, p)| {
            let p = p * (4.0 / n as f64).min(1.0);
            gen::negative_cycle_free(&mut gen::rng(seed), n, p, -4, 12)
        })
}

/// Timed digraph with at least one cycle, integer weights and times.
pub fn timed_digraph(max_n: usize) -> impl Strategy<Value = TimedDigraph> {
    (any::<u64>(), 2..=max_n, 0.15..0.6f64)
        .prop_map(|(seed, n, p)| gen::timed_with_cycle(&mut gen::rng(seed), n, p, (-3, 9), (1, 3)))
}
