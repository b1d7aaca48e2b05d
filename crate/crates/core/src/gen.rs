//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Digraph;
use crate::oracle::floyd_warshall_oracle;
use crate::parametric::TimedDigraph;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each ordered pair `u != v` becomes an edge with probability `p`; integer
/// weights uniform in `lo..=hi`.
pub fn erdos_renyi<R: Rng>(rng: &mut R, n: usize, p: f64, lo: i64, hi: i64) -> Digraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(lo..=hi) as f64));
            }
        }
    }
    Digraph::new(n, &edges).expect("ids and weights in range")
}

/// Exactly `m` distinct edges (`u != v`), integer weights in `lo..=hi`.
pub fn with_edge_count<R: Rng>(rng: &mut R, n: usize, m: usize, lo: i64, hi: i64) -> Digraph {
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    assert!(m <= pairs.len(), "too many edges for {n} vertices");
    let (chosen, _) = pairs.partial_shuffle(rng, m);
    let mut chosen = chosen.to_vec();
    chosen.sort_unstable();
    let edges: Vec<_> = chosen
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(lo..=hi) as f64))
        .collect();
    Digraph::new(n, &edges).expect("ids and weights in range")
}

/// [`erdos_renyi`] redrawn until the Floyd-Warshall oracle finds no
/// negative cycle.
pub fn negative_cycle_free<R: Rng>(rng: &mut R, n: usize, p: f64, lo: i64, hi: i64) -> Digraph {
    loop {
        let g = erdos_renyi(rng, n, p, lo, hi);
        if floyd_warshall_oracle(&g).is_ok() {
            return g;
        }
    }
}

/// [`erdos_renyi`] redrawn until it has a negative cycle.
pub fn with_negative_cycle<R: Rng>(rng: &mut R, n: usize, p: f64, lo: i64, hi: i64) -> Digraph {
    assert!(n >= 2 && p > 0.0 && lo < 0, "a negative cycle must be possible");
    loop {
        let g = erdos_renyi(rng, n, p, lo, hi);
        if floyd_warshall_oracle(&g).is_err() {
            return g;
        }
    }
}

/// Random timed digraph with at least one cycle; integer times in
/// `t_lo..=t_hi`.
pub fn timed_with_cycle<R: Rng>(
    rng: &mut R,
    n: usize,
    p: f64,
    (lo, hi): (i64, i64),
    (t_lo, t_hi): (i64, i64),
) -> TimedDigraph {
    assert!(n >= 2 && p > 0.0, "a cycle must be possible");
    loop {
        let g = erdos_renyi(rng, n, p, lo, hi);
        if g.has_cycle() {
            let times = (0..g.m()).map(|_| rng.gen_range(t_lo..=t_hi) as f64).collect();
            return TimedDigraph::new(g, times).expect("positive times");
        }
    }
}
