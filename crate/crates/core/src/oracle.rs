//! Brute-force reference computations.
//!
//! Nothing here shares code with the algorithms it is used to check: the
//! hop-bounded table is built from exact-hop walk counts, not from the
//! snapshot Bellman-Ford engine, and cycles are found by exhaustive search.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Digraph, DistMatrix, Path};

/// Default size guard for exhaustive cycle enumeration.
pub const MAX_ENUMERATION_N: usize = 12;

fn all_vertices(g: &Digraph) -> Vec<usize> {
    (0..g.n()).collect()
}

/// `E[j](s, v)`: best walk with exactly `j` hops, for `j = 0..=k`.
fn exact_hop_tables(g: &Digraph, k: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut tables = Vec::with_capacity(k + 1);
    let mut cur = vec![f64::INFINITY; n * n];
    for s in 0..n {
        cur[s * n + s] = 0.0;
    }
    tables.push(cur);
    for _ in 0..k {
        let prev = tables.last().unwrap();
        let mut next = vec![f64::INFINITY; n * n];
        for s in 0..n {
            for e in g.edges() {
                let a = prev[s * n + e.from];
                if a < f64::INFINITY {
                    let slot = &mut next[s * n + e.to];
                    *slot = slot.min(a + e.weight);
                }
            }
        }
        tables.push(next);
    }
    tables
}

/// `delta^j` for every `j = 0..=k`: best walk with at most `j` hops.
pub fn hop_limited_levels(g: &Digraph, k: usize) -> Vec<DistMatrix> {
    let exact = exact_hop_tables(g, k);
    let n = g.n();
    let mut best = vec![f64::INFINITY; n * n];
    exact
        .iter()
        .map(|t| {
            for (b, &x) in best.iter_mut().zip(t) {
                *b = b.min(x);
            }
            let rows = best.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
            DistMatrix::from_rows(all_vertices(g), rows)
        })
        .collect()
}

/// `delta^k(u, v)` for all pairs; the empty walk gives `delta^k(u, u) <= 0`.
pub fn hop_limited_oracle(g: &Digraph, k: usize) -> DistMatrix {
    hop_limited_levels(g, k).pop().unwrap()
}

/// Smallest `k` with `delta^k(v, v) < 0` for some `v`, searching up to `n`.
pub fn min_negative_closed_walk_hops(g: &Digraph) -> Option<usize> {
    let levels = hop_limited_levels(g, g.n());
    (1..levels.len()).find(|&k| (0..g.n()).any(|v| levels[k].get(v, v) < 0.0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NegativeCycleDetected {
    /// A vertex on a negative closed walk.
    pub witness: usize,
}

/// Textbook Floyd-Warshall. Stops as soon as a diagonal entry goes negative.
pub fn floyd_warshall_oracle(g: &Digraph) -> std::result::Result<DistMatrix, NegativeCycleDetected> {
    let n = g.n();
    let mut d = vec![f64::INFINITY; n * n];
    for v in 0..n {
        d[v * n + v] = 0.0;
    }
    for e in g.edges() {
        let slot = &mut d[e.from * n + e.to];
        *slot = slot.min(e.weight);
    }
    if let Some(v) = (0..n).find(|&v| d[v * n + v] < 0.0) {
        return Err(NegativeCycleDetected { witness: v });
    }
    for k in 0..n {
        for i in 0..n {
            let ik = d[i * n + k];
            if ik == f64::INFINITY {
                continue;
            }
            for j in 0..n {
                let kj = d[k * n + j];
                if kj < f64::INFINITY && ik + kj < d[i * n + j] {
                    d[i * n + j] = ik + kj;
                }
            }
        }
        if let Some(v) = (0..n).find(|&v| d[v * n + v] < 0.0) {
            return Err(NegativeCycleDetected { witness: v });
        }
    }
    let rows = d.chunks(n.max(1)).take(n).map(|r| r.to_vec()).collect();
    Ok(DistMatrix::from_rows(all_vertices(g), rows))
}

/// Every simple directed cycle, once per rotation class. Cycles are distinct
/// edge sequences, so parallel edges give distinct cycles. Each cycle starts
/// at its smallest vertex.
pub fn enumerate_simple_cycles(g: &Digraph, max_n: usize) -> Result<Vec<Path>> {
    if g.n() > max_n {
        return Err(Error::TooLarge { n: g.n(), max: max_n });
    }
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    let mut edges = Vec::new();
    for s in 0..g.n() {
        on_path[s] = true;
        dfs_cycles(g, s, s, &mut on_path, &mut edges, &mut out);
        on_path[s] = false;
    }
    Ok(out)
}

fn dfs_cycles(
    g: &Digraph,
    start: usize,
    at: usize,
    on_path: &mut [bool],
    edges: &mut Vec<usize>,
    out: &mut Vec<Path>,
) {
    for &e in g.out_edges(at) {
        let v = g.edge(e).to;
        if v == start {
            edges.push(e);
            out.push(Path::from_edges(g, edges.clone()).unwrap());
            edges.pop();
        } else if v > start && !on_path[v] {
            on_path[v] = true;
            edges.push(e);
            dfs_cycles(g, start, v, on_path, edges, out);
            edges.pop();
            on_path[v] = false;
        }
    }
}

/// Minimum of `sum w / sum t` over all simple cycles, exact for integer
/// weights and times. `None` when the graph is acyclic.
pub fn min_ratio_brute_exact(g: &Digraph, times: &[i64]) -> Result<Option<Ratio<i128>>> {
    let cycles = enumerate_simple_cycles(g, MAX_ENUMERATION_N)?;
    Ok(cycles
        .iter()
        .map(|c| {
            let w: i128 = c.edges.iter().map(|&e| g.edge(e).weight as i128).sum();
            let t: i128 = c.edges.iter().map(|&e| times[e] as i128).sum();
            Ratio::new(w, t)
        })
        .min())
}

/// Floating-point minimum cycle ratio by enumeration.
pub fn min_ratio_brute(g: &Digraph, times: &[f64]) -> Result<Option<f64>> {
    let cycles = enumerate_simple_cycles(g, MAX_ENUMERATION_N)?;
    Ok(cycles
        .iter()
        .map(|c| c.length / c.sum_over(times))
        .min_by(|a, b| a.partial_cmp(b).unwrap()))
}

/// Checks the `h`-hub property of `hubs` by dynamic programming over
/// (vertex, hops used, hub visited): for every pair with
/// `delta^h(u, v) < delta^{h-1}(u, v)`, the best exactly-`h`-hop walk that
/// touches a hub (endpoints included) must reach `delta^h(u, v)`. Such a walk
/// is itself a minimal path, so this is exact.
pub fn verify_hub_property(g: &Digraph, hubs: &[usize], h: usize) -> bool {
    if h == 0 {
        return true;
    }
    let n = g.n();
    let mut is_hub = vec![false; n];
    for &z in hubs {
        is_hub[z] = true;
    }
    let levels = hop_limited_levels(g, h);
    let (upper, lower) = (&levels[h], &levels[h - 1]);
    for u in 0..n {
        // best[flag][v]
        let mut best = [vec![f64::INFINITY; n], vec![f64::INFINITY; n]];
        best[is_hub[u] as usize][u] = 0.0;
        for _ in 0..h {
            let mut next = [vec![f64::INFINITY; n], vec![f64::INFINITY; n]];
            for e in g.edges() {
                for flag in 0..2 {
                    let a = best[flag][e.from];
                    if a < f64::INFINITY {
                        let f = (flag == 1 || is_hub[e.to]) as usize;
                        next[f][e.to] = next[f][e.to].min(a + e.weight);
                    }
                }
            }
            best = next;
        }
        for v in 0..n {
            let target = upper.get(u, v);
            if target < lower.get(u, v) && best[1][v] != target {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: f64 = f64::INFINITY;

    fn triangle() -> Digraph {
        Digraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, -3.0)]).unwrap()
    }

    fn path3() -> Digraph {
        Digraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap()
    }

    #[test]
    fn hop_bound_limits_reach() {
        assert_eq!(hop_limited_oracle(&path3(), 1).get(0, 2), INF);
        assert_eq!(hop_limited_oracle(&path3(), 2).get(0, 2), 2.0);
    }

    #[test]
    fn two_tours_of_negative_triangle() {
        assert_eq!(hop_limited_oracle(&triangle(), 6).get(0, 0), -2.0);
        assert_eq!(min_negative_closed_walk_hops(&triangle()), Some(3));
    }

    #[test]
    fn floyd_warshall_on_four_cycle() {
        let g = Digraph::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap();
        let d = floyd_warshall_oracle(&g).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(d.get(i, j), ((j + 4 - i) % 4) as f64);
            }
        }
    }

    #[test]
    fn floyd_warshall_disconnected() {
        let d = floyd_warshall_oracle(&Digraph::new(2, &[]).unwrap()).unwrap();
        assert_eq!(d.row(0), &[0.0, INF]);
        assert_eq!(d.row(1), &[INF, 0.0]);
    }

    #[test]
    fn floyd_warshall_detects_negative_triangle() {
        assert!(floyd_warshall_oracle(&triangle()).is_err());
        let loopy = Digraph::new(2, &[(1, 1, -1.0)]).unwrap();
        assert_eq!(floyd_warshall_oracle(&loopy), Err(NegativeCycleDetected { witness: 1 }));
    }

    #[test]
    fn cycles_of_small_graphs() {
        let c = enumerate_simple_cycles(&triangle(), 12).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].hops(), 3);
        let two = Digraph::new(2, &[(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let c = enumerate_simple_cycles(&two, 12).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].hops(), 2);
    }

    #[test]
    fn cycles_of_complete_digraph_on_four() {
        let mut e = Vec::new();
        for u in 0..4 {
            for v in 0..4 {
                if u != v {
                    e.push((u, v, 1.0));
                }
            }
        }
        let g = Digraph::new(4, &e).unwrap();
        let cycles = enumerate_simple_cycles(&g, 12).unwrap();
        let count = |h| cycles.iter().filter(|c| c.hops() == h).count();
        assert_eq!((cycles.len(), count(2), count(3), count(4)), (20, 6, 8, 6));
    }

    #[test]
    fn enumeration_guard() {
        let g = Digraph::new(13, &[]).unwrap();
        assert!(matches!(enumerate_simple_cycles(&g, 12), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn hub_property_examples() {
        let g = path3();
        assert!(verify_hub_property(&g, &[0, 1, 2], 2));
        assert!(verify_hub_property(&g, &[1], 2));
        assert!(!verify_hub_property(&g, &[], 2));
    }

    #[test]
    fn exact_brute_ratio() {
        let g = Digraph::new(4, &[(0, 1, 3.0), (1, 0, 0.0), (2, 3, 1.0), (3, 2, 1.0)]).unwrap();
        let r = min_ratio_brute_exact(&g, &[1, 1, 1, 1]).unwrap();
        assert_eq!(r, Some(Ratio::new(1, 1)));
    }
}
