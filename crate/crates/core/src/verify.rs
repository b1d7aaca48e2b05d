//! Oracle suites over random or given instances, with pass/fail counts.

use rand::Rng;
use serde::Serialize;

use crate::apsp::{apsp, round_depth, ApspOutcome};
use crate::bellman_ford::bf_run;
use crate::gen;
use crate::graph::Digraph;
use crate::hubset::{build_hub_hierarchy, shortest_negative_cycle, HierarchyOutcome};
use crate::oracle::{
    floyd_warshall_oracle, hop_limited_levels, min_negative_closed_walk_hops, min_ratio_brute_exact,
    verify_hub_property, MAX_ENUMERATION_N,
};
use crate::parametric::{min_mean_cycle_karp, min_ratio_binary_search, min_ratio_parametric, TimedDigraph};

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub instances: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

type Check = std::result::Result<(), String>;

impl SuiteResult {
    fn new(name: &str) -> Self {
        SuiteResult {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn record(&mut self, instance: usize, outcome: Check) {
        match outcome {
            Ok(()) => self.passed += 1,
            Err(msg) => {
                self.failed += 1;
                self.first_failure.get_or_insert_with(|| format!("instance {instance}: {msg}"));
            }
        }
    }
}

fn powers_of_two_upto(n: usize) -> impl Iterator<Item = usize> {
    (0..).map(|k| 1usize << k).take_while(move |&d| d <= n)
}

pub fn check_apsp(g: &Digraph) -> Check {
    let oracle = floyd_warshall_oracle(g);
    for d in powers_of_two_upto(g.n()) {
        let out = apsp(g, d).map_err(|e| e.to_string())?;
        match (&out, &oracle) {
            (ApspOutcome::Distances(r), Ok(fw)) => {
                if r.dist != *fw {
                    return Err(format!("d={d}: distances differ from Floyd-Warshall"));
                }
            }
            (ApspOutcome::NegativeCycle { cycle, .. }, Err(_)) => {
                let resum: f64 = cycle.cycle.edges.iter().map(|&e| g.edge(e).weight).sum();
                if !(resum < 0.0 && cycle.cycle.is_closed()) {
                    return Err(format!("d={d}: witness is not a negative cycle"));
                }
            }
            _ => return Err(format!("d={d}: feasibility disagrees with Floyd-Warshall")),
        }
    }
    Ok(())
}

pub fn check_negative_cycle(g: &Digraph) -> Check {
    let found = shortest_negative_cycle(g);
    let expected = min_negative_closed_walk_hops(g);
    match (found, expected) {
        (None, None) => Ok(()),
        (Some(c), Some(k)) if c.hops() == k && c.weight() < 0.0 && c.cycle.is_simple() => Ok(()),
        (found, expected) => Err(format!(
            "found {:?} hops, oracle {expected:?}",
            found.map(|c| c.hops())
        )),
    }
}

pub fn check_hubs(g: &Digraph) -> Check {
    let d = round_depth(g.n());
    let feasible = floyd_warshall_oracle(g).is_ok();
    match build_hub_hierarchy(g, d).map_err(|e| e.to_string())? {
        // Hub levels carry no guarantee once a negative cycle exists.
        HierarchyOutcome::Hubs(_) if !feasible => Ok(()),
        HierarchyOutcome::Hubs(h) => {
            for k in 0..=h.k() {
                if !verify_hub_property(g, h.level(k), 1 << k) {
                    return Err(format!("level h={} fails the hub property", 1 << k));
                }
            }
            for rec in &h.hitting {
                if rec.size > rec.bound(g.n()) {
                    return Err(format!("hitting set at h={} exceeds its bound", rec.hop));
                }
            }
            Ok(())
        }
        HierarchyOutcome::Cycle(c) => {
            if feasible || c.weight() >= 0.0 {
                Err("spurious negative cycle".into())
            } else {
                Ok(())
            }
        }
    }
}

pub fn check_bellman_ford(g: &Digraph) -> Check {
    let k = g.n();
    let levels = hop_limited_levels(g, k);
    for s in 0..g.n() {
        let labels = bf_run(g, s, k).map_err(|e| e.to_string())?;
        for (i, level) in levels.iter().enumerate() {
            if labels.dist_row(i) != level.row(s) {
                return Err(format!("source {s}, step {i} differs from the hop oracle"));
            }
        }
    }
    Ok(())
}

pub fn check_min_ratio(tg: &TimedDigraph) -> Check {
    if tg.base.n() > MAX_ENUMERATION_N || !tg.base.has_cycle() {
        return Ok(());
    }
    let ints: Vec<i64> = tg.times.iter().map(|&t| t as i64).collect();
    let brute = min_ratio_brute_exact(&tg.base, &ints)
        .map_err(|e| e.to_string())?
        .ok_or("enumeration found no cycle")?;
    let ans = min_ratio_parametric(tg).map_err(|e| e.to_string())?;
    if ans.exact != Some(brute) {
        return Err(format!("parametric {:?}, brute force {brute}", ans.exact));
    }
    let iv = min_ratio_binary_search(tg, 40).map_err(|e| e.to_string())?;
    let hist = iv.exact_history.ok_or("instance not exact")?;
    if !hist.iter().all(|(lo, hi)| *lo <= brute && brute <= *hi) {
        return Err("a bisection bracket misses the optimum".into());
    }
    if tg.times.iter().all(|&t| t == 1.0) {
        let (mean, _) = min_mean_cycle_karp(&tg.base).map_err(|e| e.to_string())?;
        if (mean - ans.lambda_star).abs() > 1e-9 {
            return Err(format!("Karp {mean} vs parametric {}", ans.lambda_star));
        }
    }
    Ok(())
}

/// Runs every suite on `count` random instances drawn from `seed`.
pub fn verify_random(seed: u64, count: usize) -> VerifyReport {
    let mut rng = gen::rng(seed);
    let mut suites: Vec<SuiteResult> = ["apsp", "negative-cycle", "hubs", "bellman-ford", "min-ratio"]
        .into_iter()
        .map(SuiteResult::new)
        .collect();
    for i in 0..count {
        let n = rng.gen_range(2..=12);
        let p = rng.gen_range(0.15..0.5);
        let g = if i % 2 == 0 {
            gen::negative_cycle_free(&mut rng, n, p, -4, 12)
        } else {
            gen::erdos_renyi(&mut rng, n, p, -4, 12)
        };
        suites[0].record(i, check_apsp(&g));
        suites[1].record(i, check_negative_cycle(&g));
        suites[2].record(i, check_hubs(&g));
        suites[3].record(i, check_bellman_ford(&g));
        let tg = gen::timed_with_cycle(&mut rng, n.min(8), 0.35, (-3, 9), (1, 3));
        suites[4].record(i, check_min_ratio(&tg));
    }
    VerifyReport {
        seed,
        instances: count,
        suites,
    }
}

/// Runs every applicable suite on one given instance.
pub fn verify_graph(tg: &TimedDigraph) -> VerifyReport {
    let g = &tg.base;
    let mut suites = Vec::new();
    for (name, check) in [
        ("apsp", check_apsp as fn(&Digraph) -> Check),
        ("negative-cycle", check_negative_cycle),
        ("hubs", check_hubs),
        ("bellman-ford", check_bellman_ford),
    ] {
        let mut s = SuiteResult::new(name);
        if g.n() > 0 {
            s.record(0, check(g));
        }
        suites.push(s);
    }
    let mut s = SuiteResult::new("min-ratio");
    if tg.is_integral() && g.n() <= MAX_ENUMERATION_N && g.has_cycle() {
        s.record(0, check_min_ratio(tg));
    }
    suites.push(s);
    VerifyReport {
        seed: 0,
        instances: 1,
        suites,
    }
}
