//! Weighted digraph, paths and dense distance matrices.

use std::fmt;

use crate::error::{Error, Result};

/// A directed edge `from -> to` with a finite weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Immutable weighted digraph with forward and reverse adjacency.
///
/// Adjacency lists hold edge indices and are sorted by the neighbouring
/// vertex id (then by edge index), so every scan over them is deterministic.
/// Self-loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq)]
pub struct Digraph {
    n: usize,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph on vertices `0..n` from `(u, v, w)` triples.
    pub fn new(n: usize, edge_list: &[(usize, usize, f64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(edge_list.len());
        for (i, &(from, to, weight)) in edge_list.iter().enumerate() {
            if from >= n || to >= n {
                return Err(Error::VertexOutOfRange {
                    edge: i,
                    vertex: from.max(to),
                    n,
                });
            }
            if !weight.is_finite() {
                return Err(Error::NonFiniteWeight { edge: i });
            }
            edges.push(Edge { from, to, weight });
        }
        Ok(Self::from_edges(n, edges))
    }

    fn from_edges(n: usize, edges: Vec<Edge>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            out_adj[e.from].push(i);
            in_adj[e.to].push(i);
        }
        for list in &mut out_adj {
            list.sort_by_key(|&i| (edges[i].to, i));
        }
        for list in &mut in_adj {
            list.sort_by_key(|&i| (edges[i].from, i));
        }
        Digraph {
            n,
            edges,
            out_adj,
            in_adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Indices of edges leaving `v`, sorted by head vertex.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_adj[v]
    }

    /// Indices of edges entering `v`, sorted by tail vertex.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_adj[v]
    }

    /// Edge weights in edge-index order.
    pub fn weights(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.weight).collect()
    }

    /// Same topology with the weight of edge `i` replaced by `weights[i]`.
    pub fn with_weights(&self, weights: &[f64]) -> Result<Self> {
        assert_eq!(weights.len(), self.m(), "one weight per edge");
        if let Some(i) = weights.iter().position(|w| !w.is_finite()) {
            return Err(Error::NonFiniteWeight { edge: i });
        }
        let mut g = self.clone();
        for (e, &w) in g.edges.iter_mut().zip(weights) {
            e.weight = w;
        }
        Ok(g)
    }

    /// The transposed graph. Edge `i` of the result is edge `i` reversed.
    pub fn transpose(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                from: e.to,
                to: e.from,
                weight: e.weight,
            })
            .collect();
        Self::from_edges(self.n, edges)
    }

    /// `true` when the graph contains at least one directed cycle
    /// (self-loops included).
    pub fn has_cycle(&self) -> bool {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.in_adj[v].len()).collect();
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &e in &self.out_adj[u] {
                let v = self.edges[e].to;
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    stack.push(v);
                }
            }
        }
        seen < self.n
    }
}

/// A walk `vertices[0] -> ... -> vertices[hops]` through concrete edges.
///
/// Cycles are represented with `vertices.first() == vertices.last()`.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub length: f64,
}

impl Path {
    /// Builds a path from a list of edge indices, checking that they chain.
    pub fn from_edges(g: &Digraph, edges: Vec<usize>) -> Result<Self> {
        if edges.is_empty() {
            return Err(Error::EmptyPath);
        }
        let mut vertices = Vec::with_capacity(edges.len() + 1);
        vertices.push(g.edge(edges[0]).from);
        let mut length = 0.0;
        for &e in &edges {
            let edge = g.edge(e);
            if edge.from != *vertices.last().unwrap() {
                return Err(Error::BrokenPath { edge: e });
            }
            vertices.push(edge.to);
            length += edge.weight;
        }
        Ok(Path {
            vertices,
            edges,
            length,
        })
    }

    pub fn hops(&self) -> usize {
        self.edges.len()
    }

    pub fn source(&self) -> usize {
        self.vertices[0]
    }

    pub fn target(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.source() == self.target()
    }

    /// No vertex repeats, except the closing vertex of a cycle.
    pub fn is_simple(&self) -> bool {
        let inner = if self.is_closed() {
            &self.vertices[..self.vertices.len() - 1]
        } else {
            &self.vertices[..]
        };
        let mut sorted = inner.to_vec();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Sum of an arbitrary per-edge quantity along the path.
    pub fn sum_over(&self, per_edge: &[f64]) -> f64 {
        self.edges.iter().map(|&e| per_edge[e]).sum()
    }

    /// Contiguous sub-path covering hops `from..to`.
    pub fn subpath(&self, g: &Digraph, from: usize, to: usize) -> Self {
        Path::from_edges(g, self.edges[from..to].to_vec()).expect("sub-range of a valid path")
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{} (length {}, {} hops)", parts.join("->"), self.length, self.hops())
    }
}

/// Square min-plus matrix over an ordered vertex subset. `f64::INFINITY`
/// marks "no path".
#[derive(Clone, Debug, PartialEq)]
pub struct DistMatrix {
    index: Vec<usize>,
    entries: Vec<f64>,
}

impl DistMatrix {
    pub fn filled(index: Vec<usize>, value: f64) -> Self {
        let b = index.len();
        DistMatrix {
            index,
            entries: vec![value; b * b],
        }
    }

    /// Zero diagonal, `+inf` elsewhere: the min-plus identity.
    pub fn identity(index: Vec<usize>) -> Self {
        let mut m = Self::filled(index, f64::INFINITY);
        for i in 0..m.size() {
            m.set(i, i, 0.0);
        }
        m
    }

    pub fn from_rows(index: Vec<usize>, rows: Vec<Vec<f64>>) -> Self {
        let b = index.len();
        assert_eq!(rows.len(), b);
        let mut entries = Vec::with_capacity(b * b);
        for row in rows {
            assert_eq!(row.len(), b);
            entries.extend(row);
        }
        DistMatrix { index, entries }
    }

    pub fn size(&self) -> usize {
        self.index.len()
    }

    /// The vertex ids labelling rows and columns.
    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let b = self.size();
        self.entries[i * b + j] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let b = self.size();
        &self.entries[i * b..(i + 1) * b]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.entries.chunks(self.size().max(1)).take(self.size())
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [f64] {
        &mut self.entries
    }
}
