//! Hub sets: deterministic hierarchy construction by greedy hitting sets,
//! random sampling, and hop-shortest negative cycle detection.
//!
//! A set `H` is an `h`-hub set when every pair `(u, v)` whose best walk
//! strictly improves at hop `h` has some minimal `h`-hop path through `H`.
//! Starting from `H_1 = V`, each level `H_{2h}` is a hitting set of one
//! minimal `h`-hop path per pair in `H_h x V`. The same Bellman-Ford runs,
//! extended to `2h` steps, reveal the hop-shortest negative cycle whenever it
//! has at most `2h` edges.

use std::cmp::Ordering;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bellman_ford::{chain_edges, run_jobs, Direction, History, HopLabels, Job};
use crate::domain::{Domain, RealDomain};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};
use crate::workdepth::{ceil_log2, Cost, Meter};

pub use crate::oracle::verify_hub_property;

/// Constant in the sampled hub size `c * (n / h) * ln n`.
pub const SAMPLE_CONSTANT: f64 = 4.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum Provenance {
    Deterministic,
    Sampled { seed: u64 },
}

/// One greedy hitting-set call: how many sets, the smallest set size, and
/// the size of the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HittingRecord {
    pub hop: usize,
    pub paths: usize,
    pub min_size: usize,
    pub size: usize,
}

impl HittingRecord {
    pub fn bound(&self, n: usize) -> usize {
        hitting_set_bound(n, self.min_size, self.paths)
    }
}

/// Levels `H_1, H_2, H_4, ..., H_d` (each sorted), `H_1 = V`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HubHierarchy {
    pub levels: Vec<Vec<usize>>,
    pub provenance: Provenance,
    pub hitting: Vec<HittingRecord>,
}

impl HubHierarchy {
    /// Number of doublings `K`, so `d = 2^K`.
    pub fn k(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn d(&self) -> usize {
        1 << self.k()
    }

    /// `H_{2^k}`.
    pub fn level(&self, k: usize) -> &[usize] {
        &self.levels[k]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Randomly sampled levels for `h = 1, 2, ..., d`.
    pub fn sampled(n: usize, d: usize, seed: u64) -> Result<Self> {
        check_power_of_two(d, n)?;
        let k = d.trailing_zeros() as usize;
        let levels = (0..=k)
            .map(|i| sample_hubs(n, 1 << i, seed.wrapping_add(i as u64)))
            .collect();
        Ok(HubHierarchy {
            levels,
            provenance: Provenance::Sampled { seed },
            hitting: Vec::new(),
        })
    }
}

/// A negative cycle with the fewest hops among all negative closed walks.
#[derive(Clone, Debug, PartialEq)]
pub struct NegativeCycle {
    pub cycle: Path,
}

impl NegativeCycle {
    pub fn hops(&self) -> usize {
        self.cycle.hops()
    }

    pub fn weight(&self) -> f64 {
        self.cycle.length
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Extension {
    NewLevel(Vec<usize>, HittingRecord),
    Cycle(NegativeCycle),
}

#[derive(Clone, Debug, PartialEq)]
pub enum HierarchyOutcome {
    Hubs(HubHierarchy),
    Cycle(NegativeCycle),
}

/// `ceil((n / min_size) * (ln k + 1))`, the greedy guarantee for `k` sets
/// of at least `min_size` elements over a universe of `n`.
pub fn hitting_set_bound(n: usize, min_size: usize, k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    ((n as f64 / min_size as f64) * ((k as f64).ln() + 1.0)).ceil() as usize
}

/// Greedy hitting set: repeatedly take the vertex in the most unhit sets
/// (smallest id on ties). Duplicate members inside a set are ignored.
pub fn greedy_hitting_set(sets: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut members: Vec<Vec<usize>> = sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    let mut containing = vec![Vec::new(); n];
    let mut count = vec![0usize; n];
    for (i, s) in members.iter().enumerate() {
        for &v in s {
            containing[v].push(i);
            count[v] += 1;
        }
    }
    let mut hit = vec![false; sets.len()];
    let mut remaining = sets.len();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best = 0;
        for v in 1..n {
            if count[v] > count[best] {
                best = v;
            }
        }
        debug_assert!(count[best] > 0, "every set is nonempty");
        chosen.push(best);
        for &s in &containing[best] {
            if !hit[s] {
                hit[s] = true;
                remaining -= 1;
                for &u in &members[s] {
                    count[u] -= 1;
                }
            }
        }
    }
    members.clear();
    chosen.sort_unstable();
    chosen
}

/// Size of a sampled `h`-hub set.
pub fn sample_size(n: usize, h: usize) -> usize {
    let raw = SAMPLE_CONSTANT * (n as f64 / h as f64) * (n.max(2) as f64).ln();
    (raw.ceil() as usize).min(n)
}

/// Uniform random subset of `0..n` of size [`sample_size`], reproducible
/// from `seed`.
pub fn sample_hubs(n: usize, h: usize, seed: u64) -> Vec<usize> {
    assert!(h >= 1, "hop bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = rand::seq::index::sample(&mut rng, n, sample_size(n, h)).into_vec();
    picked.sort_unstable();
    picked
}

fn check_power_of_two(d: usize, n: usize) -> Result<()> {
    if d == 0 || !d.is_power_of_two() || d > n {
        return Err(Error::InvalidDepth { d, n });
    }
    Ok(())
}

/// Outcome of one doubling step, domain-generic. Cycles are edge lists.
pub(crate) enum Step {
    Next(Vec<usize>, HittingRecord),
    Cycle(Vec<usize>),
}

/// Smallest `k <= 2h` with `d[k](z, z) < 0` over all runs, smallest `z` on
/// ties, as the edges of the closed walk.
fn negative_cycle_sweep<D: Domain>(
    domain: &mut D,
    runs: &[HopLabels<D::W>],
    max_hops: usize,
    meter: &mut Meter,
) -> Option<Vec<usize>> {
    let mut keys = Vec::new();
    let mut values = Vec::new();
    for k in 1..=max_hops {
        for (j, run) in runs.iter().enumerate() {
            if let Some(x) = run.label(k, run.source) {
                keys.push((k, j));
                values.push(x.clone());
            }
        }
    }
    meter.parallel_region(
        std::iter::once(Cost::new(values.len() as u64, 1 + ceil_log2(values.len()))),
    );
    let signs = domain.signs(&values);
    let (k, j) = keys
        .into_iter()
        .zip(signs)
        .filter(|(_, s)| *s == Ordering::Less)
        .map(|(key, _)| key)
        .min_by_key(|&(k, j)| (k, runs[j].source))?;
    let run = &runs[j];
    let chain = run.trace(run.source, k).expect("first negative row is a strict improvement");
    Some(chain_edges(run, &chain).expect("no auxiliary edges"))
}

/// One minimal `h`-hop path per `(s, t)` with `d[h](t) < d[h-1](t)`, as edge
/// lists, ordered by `(s, t)`.
fn minimal_paths_of<W: Send + Sync>(
    runs: &[HopLabels<W>],
    n: usize,
    h: usize,
    meter: &mut Meter,
) -> Vec<Vec<usize>> {
    let paths: Vec<Vec<usize>> = runs
        .par_iter()
        .flat_map_iter(|run| {
            (0..n).filter(move |&t| run.improved_at(t, h)).map(move |t| {
                let chain = run.trace(t, h).expect("improved");
                chain_edges(run, &chain).expect("no auxiliary edges")
            })
        })
        .collect();
    meter.parallel_region(paths.iter().map(|_| Cost::new(h as u64, h as u64)));
    paths
}

pub(crate) fn extend_hubs_in<D: Domain>(
    domain: &mut D,
    g: &Digraph,
    weights: &[D::W],
    hubs: &[usize],
    h: usize,
    meter: &mut Meter,
) -> Step {
    let jobs: Vec<Job<D::W>> = hubs.iter().map(|&s| Job::plain(s)).collect();
    let runs = meter.phase("bellman-ford", |m| {
        run_jobs(domain, g, weights, &jobs, 2 * h, Direction::Forward, History::Full, m)
    });
    if let Some(cycle) = meter.phase("cycle sweep", |m| negative_cycle_sweep(domain, &runs, 2 * h, m)) {
        return Step::Cycle(cycle);
    }
    let paths = meter.phase("minimal paths", |m| minimal_paths_of(&runs, g.n(), h, m));
    let sets: Vec<Vec<usize>> = paths
        .iter()
        .map(|edges| {
            let mut vs: Vec<usize> = edges.iter().map(|&e| g.edge(e).from).collect();
            vs.push(g.edge(*edges.last().unwrap()).to);
            vs
        })
        .collect();
    let hitting = greedy_hitting_set(&sets, g.n());
    let record = HittingRecord {
        hop: h,
        paths: sets.len(),
        min_size: sets
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                s.len()
            })
            .min()
            .unwrap_or(h + 1),
        size: hitting.len(),
    };
    // Charged at the cost of a polylog-depth parallel hitting set.
    let log_n = ceil_log2(g.n()).max(1);
    meter.record_modeled(
        "hitting set",
        (sets.len() * h + g.n()) as u64,
        log_n * log_n,
    );
    Step::Next(hitting, record)
}

/// Levels up to `d = 2^K`, or the hop-shortest negative cycle if it has at
/// most `d` edges. `d` is not checked against `n`.
pub(crate) fn hierarchy_in<D: Domain>(
    domain: &mut D,
    g: &Digraph,
    weights: &[D::W],
    d: usize,
    meter: &mut Meter,
) -> std::result::Result<(Vec<Vec<usize>>, Vec<HittingRecord>), Vec<usize>> {
    let mut levels = vec![(0..g.n()).collect::<Vec<usize>>()];
    let mut records = Vec::new();
    let mut h = 1;
    while h < d {
        let name = format!("level h={h}");
        let step = meter.phase(&name, |m| {
            extend_hubs_in(domain, g, weights, levels.last().unwrap(), h, m)
        });
        match step {
            Step::Next(level, rec) => {
                levels.push(level);
                records.push(rec);
            }
            Step::Cycle(c) => return Err(c),
        }
        h *= 2;
    }
    Ok((levels, records))
}

/// Smallest power of two that is at least `max(n, 2)`; the hierarchy depth
/// at which every cycle length is covered.
pub fn full_depth(n: usize) -> usize {
    n.max(2).next_power_of_two()
}

pub(crate) fn shortest_negative_cycle_in<D: Domain>(
    domain: &mut D,
    g: &Digraph,
    weights: &[D::W],
    meter: &mut Meter,
) -> Option<Vec<usize>> {
    if g.n() == 0 {
        return None;
    }
    hierarchy_in(domain, g, weights, full_depth(g.n()), meter).err()
}

fn to_cycle(g: &Digraph, edges: Vec<usize>) -> NegativeCycle {
    NegativeCycle {
        cycle: Path::from_edges(g, edges).expect("traced walk is connected"),
    }
}

/// Minimal `h`-hop paths from each hub: one per `(s, t)` in `hubs x V` with
/// `delta^h(s, t) < delta^{h-1}(s, t)`.
pub fn collect_minimal_paths(g: &Digraph, hubs: &[usize], h: usize) -> Result<Vec<Path>> {
    if h == 0 {
        return Err(Error::ZeroHops);
    }
    let jobs: Vec<Job<f64>> = hubs.iter().map(|&s| Job::plain(s)).collect();
    let mut meter = Meter::new();
    let runs = run_jobs(
        &mut RealDomain::new(),
        g,
        &g.weights(),
        &jobs,
        h,
        Direction::Forward,
        History::Full,
        &mut meter,
    );
    minimal_paths_of(&runs, g.n(), h, &mut meter)
        .into_iter()
        .map(|e| Path::from_edges(g, e))
        .collect()
}

/// Given an `h`-hub set and no negative cycle of at most `h` edges, returns
/// either a `2h`-hub set or the hop-shortest negative cycle (which then has
/// at most `2h` edges). The cycle check runs first.
pub fn extend_hubs(g: &Digraph, hubs: &[usize], h: usize) -> Result<Extension> {
    extend_hubs_metered(g, hubs, h, &mut Meter::new())
}

pub fn extend_hubs_metered(g: &Digraph, hubs: &[usize], h: usize, meter: &mut Meter) -> Result<Extension> {
    if h == 0 {
        return Err(Error::ZeroHops);
    }
    Ok(
        match extend_hubs_in(&mut RealDomain::new(), g, &g.weights(), hubs, h, meter) {
            Step::Next(level, rec) => Extension::NewLevel(level, rec),
            Step::Cycle(edges) => Extension::Cycle(to_cycle(g, edges)),
        },
    )
}

/// Deterministic hub levels for `h = 1, 2, ..., d`; `d` must be a power of
/// two in `[1, n]`.
pub fn build_hub_hierarchy(g: &Digraph, d: usize) -> Result<HierarchyOutcome> {
    build_hub_hierarchy_metered(g, d, &mut Meter::new())
}

pub fn build_hub_hierarchy_metered(g: &Digraph, d: usize, meter: &mut Meter) -> Result<HierarchyOutcome> {
    check_power_of_two(d, g.n())?;
    Ok(hierarchy_outcome(g, d, meter))
}

pub(crate) fn hierarchy_outcome(g: &Digraph, d: usize, meter: &mut Meter) -> HierarchyOutcome {
    match hierarchy_in(&mut RealDomain::new(), g, &g.weights(), d, meter) {
        Ok((levels, hitting)) => HierarchyOutcome::Hubs(HubHierarchy {
            levels,
            provenance: Provenance::Deterministic,
            hitting,
        }),
        Err(edges) => HierarchyOutcome::Cycle(to_cycle(g, edges)),
    }
}

/// The negative cycle with the fewest edges, if any negative cycle exists.
pub fn shortest_negative_cycle(g: &Digraph) -> Option<NegativeCycle> {
    shortest_negative_cycle_metered(g, &mut Meter::new())
}

pub fn shortest_negative_cycle_metered(g: &Digraph, meter: &mut Meter) -> Option<NegativeCycle> {
    shortest_negative_cycle_in(&mut RealDomain::new(), g, &g.weights(), meter).map(|e| to_cycle(g, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::hop_limited_levels;

    fn g(n: usize, e: &[(usize, usize, f64)]) -> Digraph {
        Digraph::new(n, e).unwrap()
    }

    #[test]
    fn greedy_picks_common_element() {
        assert_eq!(greedy_hitting_set(&[vec![1, 2, 3], vec![3, 4, 5]], 6), vec![3]);
    }

    #[test]
    fn greedy_on_nothing() {
        assert!(greedy_hitting_set(&[], 6).is_empty());
    }

    #[test]
    fn greedy_disjoint_sets_need_one_each() {
        let hs = greedy_hitting_set(&[vec![0, 1], vec![2, 3], vec![4, 5]], 6);
        assert_eq!(hs, vec![0, 2, 4]);
    }

    #[test]
    fn sample_sizes() {
        assert_eq!(sample_hubs(50, 1, 7).len(), 50);
        assert_eq!(sample_size(1000, 1000), 28);
        assert_eq!(sample_hubs(30, 30, 11), sample_hubs(30, 30, 11));
    }

    #[test]
    fn collect_on_path() {
        let gr = g(3, &[(0, 1, 1.0), (1, 2, 1.0)]);
        assert!(collect_minimal_paths(&gr, &[], 2).unwrap().is_empty());
        let paths = collect_minimal_paths(&gr, &[0], 2).unwrap();
        assert_eq!(paths.len(), 1);
        assert_eq!(paths[0].vertices, vec![0, 1, 2]);
    }

    #[test]
    fn collect_on_negative_triangle_matches_oracle() {
        let gr = g(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, -3.0)]);
        let lv = hop_limited_levels(&gr, 2);
        let expected: Vec<usize> = (0..3).filter(|&t| lv[2].get(0, t) < lv[1].get(0, t)).collect();
        let got: Vec<usize> = collect_minimal_paths(&gr, &[0], 2)
            .unwrap()
            .iter()
            .map(|p| p.target())
            .collect();
        assert_eq!(got, expected);
        assert_eq!(got, vec![2]);
    }

    #[test]
    fn extend_finds_negative_two_cycle() {
        let gr = g(2, &[(0, 1, 1.0), (1, 0, -2.0)]);
        match extend_hubs(&gr, &[0, 1], 1).unwrap() {
            Extension::Cycle(c) => {
                assert_eq!(c.hops(), 2);
                assert_eq!(c.weight(), -1.0);
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn extend_on_dag_hits_all_two_hop_paths() {
        let gr = g(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
        let Extension::NewLevel(level, rec) = extend_hubs(&gr, &[0, 1, 2, 3], 1).unwrap() else {
            panic!("DAG has no cycles");
        };
        // the three edges are the minimal 1-hop paths; hitting them covers
        // the minimal 2-hop paths 0-1-2 and 1-2-3
        assert_eq!(rec.paths, 3);
        assert_eq!(level, vec![1, 2]);
        assert!(verify_hub_property(&gr, &level, 2));
    }

    #[test]
    fn extend_can_produce_empty_level() {
        let gr = g(3, &[]);
        let Extension::NewLevel(level, _) = extend_hubs(&gr, &[0, 1, 2], 1).unwrap() else {
            panic!()
        };
        assert!(level.is_empty());
        assert!(verify_hub_property(&gr, &level, 2));
    }

    #[test]
    fn hierarchy_on_dag() {
        let gr = g(5, &[(0, 1, 1.0), (1, 2, 2.0), (2, 3, 1.0), (3, 4, 1.0), (0, 2, 4.0)]);
        let HierarchyOutcome::Hubs(hh) = build_hub_hierarchy(&gr, 4).unwrap() else {
            panic!()
        };
        assert_eq!(hh.level(0), &[0, 1, 2, 3, 4]);
        assert_eq!(hh.k(), 2);
        for k in 0..=2 {
            assert!(verify_hub_property(&gr, hh.level(k), 1 << k));
        }
    }

    #[test]
    fn hierarchy_forced_cycle() {
        let gr = g(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, -3.0)]);
        let HierarchyOutcome::Cycle(c) = build_hub_hierarchy(&gr, 4).unwrap() else {
            panic!()
        };
        assert_eq!((c.hops(), c.weight()), (3, -1.0));
    }

    #[test]
    fn hierarchy_rejects_bad_depth() {
        let gr = g(4, &[]);
        assert!(build_hub_hierarchy(&gr, 3).is_err());
        assert!(build_hub_hierarchy(&gr, 8).is_err());
        assert!(build_hub_hierarchy(&gr, 0).is_err());
    }

    #[test]
    fn shortest_cycle_prefers_fewer_hops() {
        let dag = g(3, &[(0, 1, -1.0), (1, 2, -1.0)]);
        assert!(shortest_negative_cycle(&dag).is_none());
        let gr = g(
            5,
            &[(0, 1, 1.0), (1, 0, -2.0), (2, 3, 1.0), (3, 4, 1.0), (4, 2, -3.0)],
        );
        let c = shortest_negative_cycle(&gr).unwrap();
        assert_eq!((c.hops(), c.weight()), (2, -1.0));
    }

    #[test]
    fn self_loop_cycles() {
        let one = g(1, &[(0, 0, -1.0)]);
        assert_eq!(shortest_negative_cycle(&one).unwrap().hops(), 1);
        let mixed = g(3, &[(0, 1, -5.0), (1, 0, -5.0), (2, 2, -0.5)]);
        assert_eq!(shortest_negative_cycle(&mixed).unwrap().hops(), 1);
    }

    #[test]
    fn hitting_bound_formula() {
        assert_eq!(hitting_set_bound(6, 2, 0), 0);
        assert_eq!(hitting_set_bound(6, 2, 1), 3);
        // (10/3)(ln 4 + 1) = 7.95...
        assert_eq!(hitting_set_bound(10, 3, 4), 8);
    }
}
