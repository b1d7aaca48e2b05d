//! Snapshot Bellman-Ford.
//!
//! Every step recomputes all labels from the previous row only:
//! `d[i+1](v) = min(d[i](v), min over edges uv of d[i](u) + w(uv))`.
//! After `i` steps `d[i](v)` is exactly the best `source -> v` walk of at
//! most `i` hops. Each row also records, for every vertex whose label strictly
//! improved, the neighbour that attained the minimum (smallest vertex id on
//! ties), which is enough to rebuild minimal paths hop by hop.
//!
//! The engine is generic over a [`Domain`] so the same code runs on real
//! weights, exact integers and the symbolic values of the parametric search.

use rayon::prelude::*;

use crate::domain::{Domain, Groups, RealDomain};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};
use crate::workdepth::{ceil_log2, Cost, Meter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Distances from the source.
    Forward,
    /// Distances to the source (runs on the transposed graph).
    Reverse,
}

/// Which edge produced an improved label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Via {
    Edge(usize),
    /// Index into the job's auxiliary edge list.
    Aux(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pred {
    pub vertex: usize,
    pub via: Via,
}

/// One single-source run: a source plus optional auxiliary edges leaving it.
#[derive(Clone, Debug)]
pub struct Job<W> {
    pub source: usize,
    pub aux: Vec<(usize, W)>,
}

impl<W> Job<W> {
    pub fn plain(source: usize) -> Self {
        Job {
            source,
            aux: Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum History {
    /// Keep every row and every predecessor row.
    Full,
    /// Keep only the last row.
    FinalOnly,
}

/// Labels of one run. With full history, `row(i)` is the label vector after
/// `i` steps and `pred(i, v)` is the predecessor recorded by step `i -> i+1`.
#[derive(Clone, Debug, PartialEq)]
pub struct HopLabels<W = f64> {
    pub source: usize,
    pub direction: Direction,
    steps: usize,
    history: History,
    labels: Vec<Vec<Option<W>>>,
    preds: Vec<Vec<Option<Pred>>>,
}

impl<W> HopLabels<W> {
    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn history(&self) -> History {
        self.history
    }

    fn row_slot(&self, i: usize) -> usize {
        match self.history {
            History::Full => i,
            History::FinalOnly => {
                assert_eq!(i, self.steps, "only the final row was kept");
                0
            }
        }
    }

    /// Label vector after `i` steps; `None` is +inf.
    pub fn row(&self, i: usize) -> &[Option<W>] {
        &self.labels[self.row_slot(i)]
    }

    pub fn final_row(&self) -> &[Option<W>] {
        self.labels.last().expect("at least one row")
    }

    pub fn label(&self, i: usize, v: usize) -> Option<&W> {
        self.row(i)[v].as_ref()
    }

    /// Predecessor recorded when `v` improved during step `i -> i+1`.
    pub fn pred(&self, i: usize, v: usize) -> Option<Pred> {
        assert_eq!(self.history, History::Full, "predecessors need full history");
        self.preds[i][v]
    }

    /// `true` iff `d[h](v) < d[h-1](v)`.
    pub fn improved_at(&self, v: usize, h: usize) -> bool {
        h >= 1 && self.pred(h - 1, v).is_some()
    }

    /// The chain of predecessors from state `(v, h)` back to `(source, 0)`,
    /// in that order. Requires `d[h](v) < d[h-1](v)`.
    pub fn trace(&self, v: usize, h: usize) -> Result<Vec<Pred>> {
        if !self.improved_at(v, h) {
            return Err(Error::NotMinimal { vertex: v, hops: h });
        }
        let mut chain = Vec::with_capacity(h);
        let mut at = v;
        for i in (0..h).rev() {
            // Each improvement at row i+1 was attained from a label that
            // itself improved at row i, so the chain never stalls.
            let p = self.preds[i][at].expect("improving chain");
            chain.push(p);
            at = p.vertex;
        }
        debug_assert_eq!(at, self.source);
        Ok(chain)
    }
}

impl HopLabels<f64> {
    /// Label after `i` steps with `f64::INFINITY` for unreached vertices.
    pub fn dist(&self, i: usize, v: usize) -> f64 {
        self.label(i, v).copied().unwrap_or(f64::INFINITY)
    }

    pub fn dist_row(&self, i: usize) -> Vec<f64> {
        to_real_row(self.row(i))
    }
}

pub(crate) fn to_real_row(row: &[Option<f64>]) -> Vec<f64> {
    row.iter().map(|x| x.unwrap_or(f64::INFINITY)).collect()
}

pub(crate) fn from_real_row(row: &[f64]) -> Vec<Option<f64>> {
    row.iter()
        .map(|&x| if x == f64::INFINITY { None } else { Some(x) })
        .collect()
}

fn max_degree(g: &Digraph, dir: Direction) -> usize {
    (0..g.n())
        .map(|v| match dir {
            Direction::Forward => g.in_edges(v).len(),
            Direction::Reverse => g.out_edges(v).len(),
        })
        .max()
        .unwrap_or(0)
}

/// Cost of one step over `jobs`: every edge (and auxiliary edge) is relaxed
/// once per job; each vertex then takes a tree-shaped minimum.
fn step_cost<W>(g: &Digraph, dir: Direction, jobs: &[&Job<W>]) -> Cost {
    let depth = 1 + ceil_log2(max_degree(g, dir) + 2);
    Cost::parallel(
        jobs.iter()
            .map(|j| Cost::new((g.m() + j.aux.len()) as u64, depth)),
    )
}

/// Builds the candidate groups for one job: per vertex, the current label
/// first (it wins ties, so only strict improvements are recorded), then the
/// relaxations ordered by neighbour id.
fn candidates<D: Domain>(
    domain: &D,
    g: &Digraph,
    weights: &[D::W],
    dir: Direction,
    current: &[Option<D::W>],
    job: &Job<D::W>,
    aux_sorted: &[(usize, usize)],
) -> (Groups<D::W>, Vec<Option<Pred>>) {
    let mut groups = Groups::new();
    let mut origin = Vec::new();
    let src_label = current[job.source].as_ref();
    let mut aux_cursor = 0;
    for v in 0..g.n() {
        if let Some(x) = &current[v] {
            groups.push(x.clone());
            origin.push(None);
        }
        let aux_start = aux_cursor;
        while aux_cursor < aux_sorted.len() && aux_sorted[aux_cursor].0 == v {
            aux_cursor += 1;
        }
        let here = &aux_sorted[aux_start..aux_cursor];
        let mut aux_done = here.is_empty() || src_label.is_none();
        let push_aux = |groups: &mut Groups<D::W>, origin: &mut Vec<Option<Pred>>| {
            let ds = src_label.unwrap();
            for &(_, a) in here {
                groups.push(domain.add(ds, &job.aux[a].1));
                origin.push(Some(Pred {
                    vertex: job.source,
                    via: Via::Aux(a),
                }));
            }
        };
        let nbrs = match dir {
            Direction::Forward => g.in_edges(v),
            Direction::Reverse => g.out_edges(v),
        };
        for &e in nbrs {
            let edge = g.edge(e);
            let u = match dir {
                Direction::Forward => edge.from,
                Direction::Reverse => edge.to,
            };
            if !aux_done && u > job.source {
                push_aux(&mut groups, &mut origin);
                aux_done = true;
            }
            if let Some(du) = &current[u] {
                groups.push(domain.add(du, &weights[e]));
                origin.push(Some(Pred {
                    vertex: u,
                    via: Via::Edge(e),
                }));
            }
        }
        if !aux_done {
            push_aux(&mut groups, &mut origin);
        }
        groups.seal();
    }
    (groups, origin)
}

type StepOutput<W> = (Vec<Option<W>>, Vec<Option<Pred>>);

/// One synchronous step for several independent runs at once. All
/// comparisons of the step reach the domain in a single batch.
pub fn step_all<D: Domain>(
    domain: &mut D,
    g: &Digraph,
    weights: &[D::W],
    dir: Direction,
    states: &[(&[Option<D::W>], &Job<D::W>)],
) -> Vec<StepOutput<D::W>> {
    let built: Vec<(Groups<D::W>, Vec<Option<Pred>>)> = {
        let shared: &D = domain;
        states
            .par_iter()
            .map(|(current, job)| {
                let mut aux_sorted: Vec<(usize, usize)> =
                    job.aux.iter().enumerate().map(|(i, a)| (a.0, i)).collect();
                aux_sorted.sort_unstable();
                candidates(shared, g, weights, dir, current, job, &aux_sorted)
            })
            .collect()
    };
    let (groups, origins): (Vec<_>, Vec<_>) = built.into_iter().unzip();
    let winners = domain.argmin_groups(&groups);
    groups
        .into_par_iter()
        .zip(origins)
        .zip(winners)
        .map(|((grp, origin), win)| {
            let n = grp.len();
            let mut next = Vec::with_capacity(n);
            let mut preds = Vec::with_capacity(n);
            for v in 0..n {
                let (lo, hi) = (grp.offsets[v], grp.offsets[v + 1]);
                if lo == hi {
                    next.push(None);
                    preds.push(None);
                } else {
                    let k = lo + win[v];
                    next.push(Some(grp.values[k].clone()));
                    preds.push(origin[k]);
                }
            }
            (next, preds)
        })
        .collect()
}

/// Runs `k` steps from every job in lockstep.
pub fn run_jobs<D: Domain>(
    domain: &mut D,
    g: &Digraph,
    weights: &[D::W],
    jobs: &[Job<D::W>],
    k: usize,
    dir: Direction,
    history: History,
    meter: &mut Meter,
) -> Vec<HopLabels<D::W>> {
    let zero = domain.zero();
    let mut out: Vec<HopLabels<D::W>> = jobs
        .iter()
        .map(|j| {
            let mut row = vec![None; g.n()];
            row[j.source] = Some(zero.clone());
            HopLabels {
                source: j.source,
                direction: dir,
                steps: 0,
                history,
                labels: vec![row],
                preds: Vec::new(),
            }
        })
        .collect();
    let job_refs: Vec<&Job<D::W>> = jobs.iter().collect();
    let cost = step_cost(g, dir, &job_refs);
    for _ in 0..k {
        let results = {
            let states: Vec<(&[Option<D::W>], &Job<D::W>)> = out
                .iter()
                .zip(jobs)
                .map(|(l, j)| (l.final_row(), j))
                .collect();
            step_all(domain, g, weights, dir, &states)
        };
        for (labels, (next, preds)) in out.iter_mut().zip(results) {
            labels.steps += 1;
            match history {
                History::Full => {
                    labels.labels.push(next);
                    labels.preds.push(preds);
                }
                History::FinalOnly => labels.labels[0] = next,
            }
        }
        meter.charge(cost);
    }
    out
}

/// One real-weighted step from an arbitrary label vector
/// (`f64::INFINITY` = unreached). Returns the next labels and, for strictly
/// improved vertices, the attaining predecessor.
pub fn bf_step(g: &Digraph, current: &[f64]) -> (Vec<f64>, Vec<Option<usize>>) {
    assert_eq!(current.len(), g.n(), "one label per vertex");
    let cur = from_real_row(current);
    let job = Job::plain(0);
    let weights = g.weights();
    let mut out = step_all(
        &mut RealDomain::new(),
        g,
        &weights,
        Direction::Forward,
        &[(&cur, &job)],
    );
    let (next, preds) = out.pop().unwrap();
    (
        to_real_row(&next),
        preds.into_iter().map(|p| p.map(|p| p.vertex)).collect(),
    )
}

fn check_vertex(g: &Digraph, v: usize) -> Result<()> {
    if v < g.n() {
        Ok(())
    } else {
        Err(Error::NoSuchVertex(v))
    }
}

/// `k` steps from `source`, keeping every row.
pub fn bf_run(g: &Digraph, source: usize, k: usize) -> Result<HopLabels> {
    Ok(bf_run_multi(g, &[source], k, Direction::Forward)?.pop().unwrap())
}

/// Independent runs from each source, executed in lockstep.
pub fn bf_run_multi(
    g: &Digraph,
    sources: &[usize],
    k: usize,
    dir: Direction,
) -> Result<Vec<HopLabels>> {
    bf_run_multi_metered(g, sources, k, dir, &mut Meter::new())
}

pub fn bf_run_multi_metered(
    g: &Digraph,
    sources: &[usize],
    k: usize,
    dir: Direction,
    meter: &mut Meter,
) -> Result<Vec<HopLabels>> {
    for &s in sources {
        check_vertex(g, s)?;
    }
    let jobs: Vec<Job<f64>> = sources.iter().map(|&s| Job::plain(s)).collect();
    Ok(run_jobs(
        &mut RealDomain::new(),
        g,
        &g.weights(),
        &jobs,
        k,
        dir,
        History::Full,
        meter,
    ))
}

/// Run on `g` plus extra edges `source -> target` with the given weights,
/// without building the augmented graph. Infinite auxiliary weights are
/// treated as absent edges.
pub fn bf_run_augmented(
    g: &Digraph,
    source: usize,
    aux: &[(usize, f64)],
    k: usize,
) -> Result<HopLabels> {
    check_vertex(g, source)?;
    for &(t, _) in aux {
        check_vertex(g, t)?;
    }
    let job = Job {
        source,
        aux: aux
            .iter()
            .filter(|(_, w)| w.is_finite())
            .copied()
            .collect(),
    };
    Ok(run_jobs(
        &mut RealDomain::new(),
        g,
        &g.weights(),
        &[job],
        k,
        Direction::Forward,
        History::Full,
        &mut Meter::new(),
    )
    .pop()
    .unwrap())
}

/// Graph edges of the traced chain, oriented along the path.
pub(crate) fn chain_edges<W>(labels: &HopLabels<W>, chain: &[Pred]) -> Result<Vec<usize>> {
    let mut edges = Vec::with_capacity(chain.len());
    for p in chain {
        match p.via {
            Via::Edge(e) => edges.push(e),
            Via::Aux(_) => return Err(Error::BrokenPath { edge: usize::MAX }),
        }
    }
    if labels.direction == Direction::Forward {
        edges.reverse();
    }
    Ok(edges)
}

/// Rebuilds the minimal `h`-hop path ending at `v` (starting at `v` for a
/// reverse run). Requires `d[h](v) < d[h-1](v)`; the result has exactly `h`
/// hops and length `d[h](v)`.
pub fn extract_minimal_path(g: &Digraph, labels: &HopLabels, v: usize, h: usize) -> Result<Path> {
    let chain = labels.trace(v, h)?;
    Path::from_edges(g, chain_edges(labels, &chain)?)
}
