//! Depth-tunable all-pairs shortest paths.
//!
//! For `d = 2^K`: build hub levels `H_1 = V, ..., H_d`; compute
//! `delta^{d+1}` between the `H_d` hubs and close that small matrix by
//! repeated squaring; then, for `k = K` down to `0`, recover exact rows and
//! columns for every hub of `H_{2^k}` with `2^{k+1} + 1` Bellman-Ford steps
//! on the graph plus shortcut edges to the hubs of the level above.
//! Bellman-Ford phases have depth proportional to `d`; the closure costs
//! about `|H_d|^3` work.

use rayon::prelude::*;
use serde::Serialize;

use crate::bellman_ford::{run_jobs, to_real_row, Direction, History, Job};
use crate::domain::RealDomain;
use crate::error::{Error, Result};
use crate::graph::{Digraph, DistMatrix};
use crate::hubset::{hierarchy_outcome, shortest_negative_cycle_metered, HierarchyOutcome, HubHierarchy, NegativeCycle};
use crate::minplus::minplus_closure_metered;
use crate::workdepth::{ceil_log2, Cost, Meter, WorkDepthReport};

/// Exact distances for some hub set: `rows[s] = delta(s, .)` and
/// `cols[s] = delta(., s)` for each hub `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct HubDistances {
    hubs: Vec<usize>,
    rows: Vec<Option<Vec<f64>>>,
    cols: Vec<Option<Vec<f64>>>,
}

impl HubDistances {
    pub fn new(n: usize) -> Self {
        HubDistances {
            hubs: Vec::new(),
            rows: vec![None; n],
            cols: vec![None; n],
        }
    }

    pub fn hubs(&self) -> &[usize] {
        &self.hubs
    }

    /// Registers `s` as a hub with the given row and column (length `n`).
    pub fn insert(&mut self, s: usize, row: Vec<f64>, col: Option<Vec<f64>>) {
        if self.rows[s].is_none() {
            self.hubs.push(s);
            self.hubs.sort_unstable();
        }
        self.rows[s] = Some(row);
        self.cols[s] = col;
    }

    pub fn row(&self, s: usize) -> Option<&[f64]> {
        self.rows[s].as_deref()
    }

    pub fn col(&self, s: usize) -> Option<&[f64]> {
        self.cols[s].as_deref()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApspResult {
    #[serde(skip)]
    pub dist: DistMatrix,
    pub hierarchy: HubHierarchy,
    pub meter: WorkDepthReport,
    /// The power of two actually used.
    pub d: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ApspOutcome {
    Distances(ApspResult),
    NegativeCycle {
        cycle: NegativeCycle,
        meter: WorkDepthReport,
    },
}

impl ApspOutcome {
    pub fn distances(self) -> Option<ApspResult> {
        match self {
            ApspOutcome::Distances(r) => Some(r),
            ApspOutcome::NegativeCycle { .. } => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, ApspOutcome::NegativeCycle { .. })
    }
}

/// `delta^{d+1}(u, v)` for all `u, v` in `hubs`.
pub fn build_hub_graph(g: &Digraph, hubs: &[usize], d: usize) -> DistMatrix {
    build_hub_graph_metered(g, hubs, d, &mut Meter::new())
}

pub fn build_hub_graph_metered(g: &Digraph, hubs: &[usize], d: usize, meter: &mut Meter) -> DistMatrix {
    let jobs: Vec<Job<f64>> = hubs.iter().map(|&s| Job::plain(s)).collect();
    let runs = run_jobs(
        &mut RealDomain::new(),
        g,
        &g.weights(),
        &jobs,
        d + 1,
        Direction::Forward,
        History::FinalOnly,
        meter,
    );
    let rows = runs
        .iter()
        .map(|r| {
            let last = r.final_row();
            hubs.iter().map(|&v| last[v].unwrap_or(f64::INFINITY)).collect()
        })
        .collect();
    DistMatrix::from_rows(hubs.to_vec(), rows)
}

/// Exact rows and columns for the hubs `level`, given exact distances for
/// the hubs of the level above (`known`), with `2h + 1` steps per run.
pub fn lift_level(g: &Digraph, level: &[usize], known: &HubDistances, h: usize) -> HubDistances {
    lift_level_metered(g, level, known, h, true, &mut Meter::new())
}

fn lift_level_metered(
    g: &Digraph,
    level: &[usize],
    known: &HubDistances,
    h: usize,
    with_cols: bool,
    meter: &mut Meter,
) -> HubDistances {
    let upper = known.hubs();
    let steps = 2 * h + 1;
    let finite = |w: f64| w < f64::INFINITY;
    // Forward from s: shortcut s -> v of weight delta(s, v), read from v's column.
    let forward: Vec<Job<f64>> = level
        .iter()
        .map(|&s| Job {
            source: s,
            aux: upper
                .iter()
                .filter(|&&v| v != s)
                .map(|&v| (v, known.col(v).expect("upper hub")[s]))
                .filter(|&(_, w)| finite(w))
                .collect(),
        })
        .collect();
    let weights = g.weights();
    let rows = run_jobs(
        &mut RealDomain::new(),
        g,
        &weights,
        &forward,
        steps,
        Direction::Forward,
        History::FinalOnly,
        meter,
    );
    let cols = if with_cols {
        // Reverse: shortcut v -> s of weight delta(v, s), read from v's row.
        let backward: Vec<Job<f64>> = level
            .iter()
            .map(|&s| Job {
                source: s,
                aux: upper
                    .iter()
                    .filter(|&&v| v != s)
                    .map(|&v| (v, known.row(v).expect("upper hub")[s]))
                    .filter(|&(_, w)| finite(w))
                    .collect(),
            })
            .collect();
        Some(run_jobs(
            &mut RealDomain::new(),
            g,
            &weights,
            &backward,
            steps,
            Direction::Reverse,
            History::FinalOnly,
            meter,
        ))
    } else {
        None
    };
    let mut out = HubDistances::new(g.n());
    for (i, &s) in level.iter().enumerate() {
        let col = cols.as_ref().map(|c| to_real_row(c[i].final_row()));
        out.insert(s, to_real_row(rows[i].final_row()), col);
    }
    out
}

/// Largest power of two not exceeding `d`.
pub fn round_depth(d: usize) -> usize {
    assert!(d >= 1);
    1 << (usize::BITS - 1 - d.leading_zeros())
}

/// Rows of `dist` respect every edge and the diagonal is zero. For any
/// negative cycle this must fail on the row of one of its vertices.
fn certifies_no_negative_cycle(g: &Digraph, dist: &DistMatrix) -> bool {
    (0..g.n()).into_par_iter().all(|s| {
        let row = dist.row(s);
        row[s] == 0.0 && g.edges().iter().all(|e| row[e.to] <= row[e.from] + e.weight)
    })
}

/// All-pairs shortest paths with depth parameter `d_requested` in `[1, n]`
/// (rounded down to a power of two), or the hop-shortest negative cycle.
pub fn apsp(g: &Digraph, d_requested: usize) -> Result<ApspOutcome> {
    let n = g.n();
    if d_requested == 0 || d_requested > n {
        return Err(Error::InvalidDepth { d: d_requested, n });
    }
    let d = round_depth(d_requested);
    let k_top = d.trailing_zeros() as usize;
    let mut meter = Meter::new();

    let witness = |meter: &mut Meter| {
        let cycle = meter.phase("witness", |m| shortest_negative_cycle_metered(g, m))
            .expect("a negative closed walk was observed");
        let meter = meter.report().expect("balanced phases");
        Ok(ApspOutcome::NegativeCycle { cycle, meter })
    };

    let hierarchy = match meter.phase("hub hierarchy", |m| hierarchy_outcome(g, d, m)) {
        HierarchyOutcome::Hubs(h) => h,
        HierarchyOutcome::Cycle(cycle) => {
            let meter = meter.report().expect("balanced phases");
            return Ok(ApspOutcome::NegativeCycle { cycle, meter });
        }
    };
    let top = hierarchy.level(k_top).to_vec();
    let hub_graph = meter.phase("hub graph", |m| build_hub_graph_metered(g, &top, d, m));
    let closure = match meter.phase("closure", |m| minplus_closure_metered(&hub_graph, m)) {
        Ok(c) => c,
        Err(_) => return witness(&mut meter),
    };

    // H_{2d} := H_d: the first lift reads hub-to-hub distances from the closure.
    let mut known = HubDistances::new(n);
    for (i, &s) in top.iter().enumerate() {
        let mut row = vec![f64::INFINITY; n];
        let mut col = vec![f64::INFINITY; n];
        for (j, &t) in top.iter().enumerate() {
            row[t] = closure.get(i, j);
            col[t] = closure.get(j, i);
        }
        known.insert(s, row, Some(col));
    }
    for k in (0..=k_top).rev() {
        let h = 1 << k;
        known = meter.phase(&format!("lift h={h}"), |m| {
            lift_level_metered(g, hierarchy.level(k), &known, h, k > 0, m)
        });
    }
    let rows = (0..n).map(|s| known.row(s).expect("H_1 = V").to_vec()).collect();
    let dist = DistMatrix::from_rows((0..n).collect(), rows);

    let ok = meter.phase("certificate", |m| {
        m.charge(Cost::new((n * g.m()) as u64, 1 + ceil_log2(g.m())));
        certifies_no_negative_cycle(g, &dist)
    });
    if !ok {
        return witness(&mut meter);
    }
    Ok(ApspOutcome::Distances(ApspResult {
        dist,
        hierarchy,
        meter: meter.report().expect("balanced phases"),
        d,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::floyd_warshall_oracle;

    const INF: f64 = f64::INFINITY;

    fn four_cycle() -> Digraph {
        Digraph::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 0, 1.0)]).unwrap()
    }

    #[test]
    fn hub_graph_examples() {
        let g = Digraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(build_hub_graph(&g, &[], 2).size(), 0);
        let m = build_hub_graph(&g, &[0, 2], 2);
        assert_eq!((m.get(0, 1), m.get(1, 0)), (2.0, INF));
        assert_eq!(build_hub_graph(&g, &[1], 2).get(0, 0), 0.0);
    }

    #[test]
    fn lift_through_shortcut() {
        let g = Digraph::new(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let exact = floyd_warshall_oracle(&g).unwrap();
        let mut known = HubDistances::new(4);
        known.insert(2, exact.row(2).to_vec(), Some((0..4).map(|v| exact.get(v, 2)).collect()));
        let lifted = lift_level(&g, &[0], &known, 1);
        assert_eq!(lifted.row(0).unwrap(), exact.row(0));
        assert_eq!(lifted.row(0).unwrap()[3], 3.0);
    }

    #[test]
    fn lift_is_idempotent_on_overlap() {
        let g = four_cycle();
        let exact = floyd_warshall_oracle(&g).unwrap();
        let mut known = HubDistances::new(4);
        for s in [1, 3] {
            known.insert(s, exact.row(s).to_vec(), Some((0..4).map(|v| exact.get(v, s)).collect()));
        }
        let lifted = lift_level(&g, &[1, 3], &known, 1);
        assert_eq!(lifted, known);
    }

    #[test]
    fn lift_isolated_source() {
        let g = Digraph::new(3, &[(1, 2, 1.0)]).unwrap();
        let lifted = lift_level(&g, &[0], &HubDistances::new(3), 1);
        assert_eq!(lifted.row(0).unwrap(), &[0.0, INF, INF]);
    }

    #[test]
    fn four_cycle_distances() {
        for d in [1, 2, 4] {
            let r = apsp(&four_cycle(), d).unwrap().distances().unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(r.dist.get(i, j), ((j + 4 - i) % 4) as f64);
                }
            }
        }
    }

    #[test]
    fn depth_is_rounded_down_and_checked() {
        assert_eq!(round_depth(7), 4);
        assert_eq!(round_depth(1), 1);
        let r = apsp(&four_cycle(), 3).unwrap().distances().unwrap();
        assert_eq!(r.d, 2);
        assert!(apsp(&four_cycle(), 0).is_err());
        assert!(apsp(&four_cycle(), 5).is_err());
    }

    #[test]
    fn negative_triangle_is_infeasible() {
        let g = Digraph::new(3, &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, -3.0)]).unwrap();
        for d in [1, 2] {
            match apsp(&g, d).unwrap() {
                ApspOutcome::NegativeCycle { cycle, .. } => {
                    assert_eq!((cycle.hops(), cycle.weight()), (3, -1.0))
                }
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn negative_self_loop_with_unit_depth() {
        let g = Digraph::new(2, &[(0, 1, 1.0), (1, 1, -1.0)]).unwrap();
        assert!(apsp(&g, 1).unwrap().is_infeasible());
    }
}
