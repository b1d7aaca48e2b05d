use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};

/// `a / b` against `c / d` for positive `b`, `d`.
fn cmp_fractions(a: f64, b: f64, c: f64, d: f64) -> Ordering {
    (a * d).partial_cmp(&(c * b)).expect("finite")
}

/// Minimum cycle mean by Karp's characterization
/// `min_v max_k (D_n(v) - D_k(v)) / (n - k)`, where `D_k(v)` is the lightest
/// walk of exactly `k` edges ending at `v` from any start.
pub fn min_mean_cycle_karp(g: &Digraph) -> Result<(f64, Path)> {
    let n = g.n();
    if !g.has_cycle() {
        return Err(Error::NoCycle);
    }
    let mut dist = vec![vec![0.0; n]];
    let mut parent: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
    for k in 1..=n {
        let prev = &dist[k - 1];
        let mut row = vec![f64::INFINITY; n];
        let mut par = vec![None; n];
        for (e, edge) in g.edges().iter().enumerate() {
            let cand = prev[edge.from] + edge.weight;
            if cand < row[edge.to] {
                row[edge.to] = cand;
                par[edge.to] = Some(e);
            }
        }
        dist.push(row);
        parent.push(par);
    }

    // (numerator, denominator) of the best mean, and its vertex.
    let mut best: Option<(f64, f64, usize)> = None;
    for v in 0..n {
        if dist[n][v] == f64::INFINITY {
            continue;
        }
        let mut worst: Option<(f64, f64)> = None;
        for k in 0..n {
            if dist[k][v] == f64::INFINITY {
                continue;
            }
            let frac = (dist[n][v] - dist[k][v], (n - k) as f64);
            if worst.is_none_or(|w| cmp_fractions(frac.0, frac.1, w.0, w.1) == Ordering::Greater) {
                worst = Some(frac);
            }
        }
        let (a, b) = worst.expect("D_0 is finite everywhere");
        if best.is_none_or(|(c, d, _)| cmp_fractions(a, b, c, d) == Ordering::Less) {
            best = Some((a, b, v));
        }
    }
    let (_, _, v) = best.expect("a cycle exists, so some n-edge walk does");

    // Walk the critical n-edge walk backwards; its lightest-mean closed
    // segment is a minimum mean cycle.
    let mut walk_edges = Vec::with_capacity(n);
    let mut at = v;
    for k in (1..=n).rev() {
        let e = parent[k][at].expect("finite label has a parent");
        walk_edges.push(e);
        at = g.edge(e).from;
    }
    walk_edges.reverse();
    let verts: Vec<usize> = std::iter::once(g.edge(walk_edges[0]).from)
        .chain(walk_edges.iter().map(|&e| g.edge(e).to))
        .collect();
    let mut seg: Option<(f64, f64, usize, usize)> = None;
    let mut last_seen = vec![None; n];
    for (j, &x) in verts.iter().enumerate() {
        if let Some(i) = last_seen[x] {
            let w: f64 = walk_edges[i..j].iter().map(|&e| g.edge(e).weight).sum();
            let len = (j - i) as f64;
            if seg.is_none_or(|(c, d, _, _)| cmp_fractions(w, len, c, d) == Ordering::Less) {
                seg = Some((w, len, i, j));
            }
        }
        last_seen[x] = Some(j);
    }
    let (w, len, i, j) = seg.expect("n edges over n vertices repeat a vertex");
    let cycle = Path::from_edges(g, walk_edges[i..j].to_vec())?;
    Ok((w / len, cycle))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle() {
        let g = Digraph::new(2, &[(0, 1, 1.0), (1, 0, 2.0)]).unwrap();
        let (mean, c) = min_mean_cycle_karp(&g).unwrap();
        assert_eq!(mean, 1.5);
        assert_eq!(c.hops(), 2);
    }

    #[test]
    fn triangle_beats_two_cycle() {
        let g = Digraph::new(
            5,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, -3.0), (3, 4, 1.0), (4, 3, 1.0)],
        )
        .unwrap();
        let (mean, c) = min_mean_cycle_karp(&g).unwrap();
        assert_eq!(mean, -1.0 / 3.0);
        assert_eq!(c.hops(), 3);
        assert!(c.is_closed() && c.is_simple());
    }

    #[test]
    fn acyclic() {
        let g = Digraph::new(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(min_mean_cycle_karp(&g), Err(Error::NoCycle));
    }

    #[test]
    fn self_loop() {
        let g = Digraph::new(3, &[(0, 1, 5.0), (1, 1, -2.0), (1, 2, 0.0), (2, 0, 0.0)]).unwrap();
        let (mean, c) = min_mean_cycle_karp(&g).unwrap();
        assert_eq!(mean, -2.0);
        assert_eq!(c.hops(), 1);
    }
}
