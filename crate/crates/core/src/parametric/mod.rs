//! Minimum mean and minimum cost-to-time ratio cycles.
//!
//! `lambda* = min_C w(C) / t(C)`. For a fixed `x`, a cycle of negative weight
//! under `w - x t` exists iff `lambda* < x`, so negative-cycle detection is a
//! decision oracle for `lambda*`. [`min_ratio_binary_search`] bisects with it;
//! [`min_ratio_parametric`] runs the hub-based detector itself over affine
//! values `b - lambda a` and locates `lambda*` among the breakpoints its
//! comparisons generate.
//!
//! Integer instances of moderate magnitude are solved over exact rationals;
//! everything else runs in `f64`.

mod karp;
mod linear;
mod megiddo;

use std::ops::Add;

pub use karp::min_mean_cycle_karp;
pub use linear::{LinearValue, Rational, Scalar};
pub use megiddo::{LambdaOracle, ParametricDomain, SearchStats};

use crate::domain::{ExactDomain, RealDomain};
use crate::error::{Error, Result};
use crate::graph::{Digraph, Path};
use crate::hubset::{shortest_negative_cycle, shortest_negative_cycle_in, NegativeCycle};
use crate::workdepth::Meter;

/// Largest `|w|`, `|t|` for which the exact path is taken. Keeps every
/// scaled sum well inside `i128`.
pub const EXACT_LIMIT: i64 = 1 << 15;

/// Cap on exact bisection rounds; denominators double every round.
pub const EXACT_BISECTIONS: usize = 64;

/// Relative slack for "zero reduced weight" on the float path.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// A digraph with a positive time on every edge.
#[derive(Clone, Debug, PartialEq)]
pub struct TimedDigraph {
    pub base: Digraph,
    pub times: Vec<f64>,
}

impl TimedDigraph {
    pub fn new(base: Digraph, times: Vec<f64>) -> Result<Self> {
        if times.len() != base.m() {
            return Err(Error::TimeCount {
                got: times.len(),
                m: base.m(),
            });
        }
        if let Some(edge) = times.iter().position(|&t| !(t.is_finite() && t > 0.0)) {
            return Err(Error::NonPositiveTime { edge });
        }
        Ok(TimedDigraph { base, times })
    }

    /// Every edge takes one time unit.
    pub fn unit(base: Digraph) -> Self {
        let times = vec![1.0; base.m()];
        TimedDigraph { base, times }
    }

    /// Integer weights and times, all of magnitude at most [`EXACT_LIMIT`].
    pub fn is_integral(&self) -> bool {
        let ok = |x: f64| x.fract() == 0.0 && x.abs() <= EXACT_LIMIT as f64;
        self.base.edges().iter().all(|e| ok(e.weight)) && self.times.iter().all(|&t| ok(t))
            && self.base.n() <= 1 << 16
    }

    fn integer_parts(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        if !self.is_integral() {
            return Err(Error::NotExact { limit: EXACT_LIMIT });
        }
        Ok((
            self.base.edges().iter().map(|e| e.weight as i64).collect(),
            self.times.iter().map(|&t| t as i64).collect(),
        ))
    }

    /// `w(e) - lambda t(e)` per edge.
    pub fn reduced_weights(&self, lambda: f64) -> Vec<f64> {
        self.base
            .edges()
            .iter()
            .zip(&self.times)
            .map(|(e, &t)| e.weight - lambda * t)
            .collect()
    }

    /// `w(C) / t(C)` of a cycle.
    pub fn ratio(&self, cycle: &Path) -> f64 {
        cycle.length / cycle.sum_over(&self.times)
    }

    pub fn exact_ratio(&self, cycle: &Path) -> Result<Rational> {
        let (w, t) = self.integer_parts()?;
        let sw: i128 = cycle.edges.iter().map(|&e| w[e] as i128).sum();
        let st: i128 = cycle.edges.iter().map(|&e| t[e] as i128).sum();
        Ok(Rational::new(sw, st))
    }

    /// The initial bracket `[min w/t, max w/t]` over all edges.
    fn edge_ratio_range(&self) -> (f64, f64) {
        let ratios = self.base.edges().iter().zip(&self.times).map(|(e, &t)| e.weight / t);
        ratios.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| (lo.min(r), hi.max(r)))
    }

    fn exact_edge_ratio_range(&self, w: &[i64], t: &[i64]) -> (Rational, Rational) {
        let ratios = w.iter().zip(t).map(|(&w, &t)| Rational::new(w as i128, t as i128));
        let lo = ratios.clone().min().expect("at least one edge");
        let hi = ratios.max().expect("at least one edge");
        (lo, hi)
    }
}

/// Result of probing one value of the parameter.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    /// Prices `p` with `w(e) - lambda t(e) + p(u) - p(v) >= 0` everywhere.
    Feasible(Vec<f64>),
    /// A negative cycle under the reduced weights (its `length` is reduced).
    Infeasible(NegativeCycle),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExactEvaluation {
    Feasible(Vec<Rational>),
    Infeasible { edges: Vec<usize>, reduced_weight: Rational },
}

/// Distances from a virtual source joined to every vertex by a 0-edge,
/// after `n` synchronous rounds (fewer if nothing changes).
fn super_source_prices<T>(g: &Digraph, weights: &[T]) -> Vec<T>
where
    T: Copy + PartialOrd + Add<Output = T> + Default,
{
    let mut p = vec![T::default(); g.n()];
    for _ in 0..g.n() {
        let mut next = p.clone();
        let mut changed = false;
        for (e, edge) in g.edges().iter().enumerate() {
            let cand = p[edge.from] + weights[e];
            if cand < next[edge.to] {
                next[edge.to] = cand;
                changed = true;
            }
        }
        p = next;
        if !changed {
            break;
        }
    }
    p
}

/// Probes `w - lambda t` for negative cycles with the hub-based detector;
/// on absence, returns super-source prices.
pub fn evaluate_lambda(tg: &TimedDigraph, lambda: f64) -> Evaluation {
    let reduced = tg.reduced_weights(lambda);
    let g = tg.base.with_weights(&reduced).expect("finite reduced weights");
    match shortest_negative_cycle(&g) {
        Some(c) => Evaluation::Infeasible(c),
        None => Evaluation::Feasible(super_source_prices(&g, &reduced)),
    }
}

/// [`evaluate_lambda`] in exact rational arithmetic.
pub fn evaluate_lambda_exact(tg: &TimedDigraph, lambda: Rational) -> Result<ExactEvaluation> {
    let probe = ExactProbe::new(tg)?;
    let scaled = probe.scaled(&lambda);
    let q = *lambda.denom();
    let cycle = shortest_negative_cycle_in(&mut ExactDomain::new(), &tg.base, &scaled, &mut Meter::new());
    Ok(match cycle {
        Some(edges) => {
            let sum: i128 = edges.iter().map(|&e| scaled[e]).sum();
            ExactEvaluation::Infeasible {
                edges,
                reduced_weight: Rational::new(sum, q),
            }
        }
        None => ExactEvaluation::Feasible(
            super_source_prices(&tg.base, &scaled)
                .into_iter()
                .map(|p| Rational::new(p, q))
                .collect(),
        ),
    })
}

/// Probing of one arithmetic: decision oracle, prices and tightness.
trait Probe<T: Scalar>: LambdaOracle<T> {
    fn graph(&self) -> &Digraph;
    fn prices(&self, x: &T) -> Vec<T>;
    /// Whether edge `e` has zero reduced weight under `x` and prices `p`.
    fn is_tight(&self, e: usize, x: &T, p: &[T]) -> bool;
    /// [`LambdaOracle::below`], ignoring cycles that are negative only
    /// within rounding.
    fn clearly_below(&self, x: &T) -> bool {
        self.below(x)
    }
}

struct ExactProbe<'a> {
    g: &'a Digraph,
    w: Vec<i64>,
    t: Vec<i64>,
}

impl<'a> ExactProbe<'a> {
    fn new(tg: &'a TimedDigraph) -> Result<Self> {
        let (w, t) = tg.integer_parts()?;
        Ok(ExactProbe { g: &tg.base, w, t })
    }

    /// `q (w - (p/q) t)` per edge for `x = p/q`.
    fn scaled(&self, x: &Rational) -> Vec<i128> {
        let (p, q) = (*x.numer(), *x.denom());
        self.w
            .iter()
            .zip(&self.t)
            .map(|(&w, &t)| q * w as i128 - p * t as i128)
            .collect()
    }
}

impl LambdaOracle<Rational> for ExactProbe<'_> {
    fn below(&self, x: &Rational) -> bool {
        let scaled = self.scaled(x);
        shortest_negative_cycle_in(&mut ExactDomain::new(), self.g, &scaled, &mut Meter::new()).is_some()
    }
}

impl Probe<Rational> for ExactProbe<'_> {
    fn graph(&self) -> &Digraph {
        self.g
    }

    fn prices(&self, x: &Rational) -> Vec<Rational> {
        let q = *x.denom();
        super_source_prices(self.g, &self.scaled(x))
            .into_iter()
            .map(|p| Rational::new(p, q))
            .collect()
    }

    fn is_tight(&self, e: usize, x: &Rational, p: &[Rational]) -> bool {
        let edge = self.g.edge(e);
        let r = Rational::from_integer(self.w[e] as i128) - x * Rational::from_integer(self.t[e] as i128)
            + p[edge.from]
            - p[edge.to];
        r == Rational::from_integer(0)
    }
}

struct FloatProbe<'a> {
    tg: &'a TimedDigraph,
}

impl LambdaOracle<f64> for FloatProbe<'_> {
    fn below(&self, x: &f64) -> bool {
        let reduced = self.tg.reduced_weights(*x);
        shortest_negative_cycle_in(&mut RealDomain::new(), &self.tg.base, &reduced, &mut Meter::new()).is_some()
    }
}

impl Probe<f64> for FloatProbe<'_> {
    fn graph(&self) -> &Digraph {
        &self.tg.base
    }

    fn prices(&self, x: &f64) -> Vec<f64> {
        super_source_prices(&self.tg.base, &self.tg.reduced_weights(*x))
    }

    fn is_tight(&self, e: usize, x: &f64, p: &[f64]) -> bool {
        let edge = self.tg.base.edge(e);
        let lt = x * self.tg.times[e];
        let r = edge.weight - lt + p[edge.from] - p[edge.to];
        let scale = [edge.weight, lt, p[edge.from], p[edge.to], 1.0]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()));
        r <= FLOAT_TOLERANCE * scale
    }

    fn clearly_below(&self, x: &f64) -> bool {
        let slack: Vec<f64> = self
            .tg
            .reduced_weights(*x)
            .iter()
            .zip(self.tg.base.edges().iter().zip(&self.tg.times))
            .map(|(r, (e, t))| r + FLOAT_TOLERANCE * e.weight.abs().max((x * t).abs()).max(1.0))
            .collect();
        shortest_negative_cycle_in(&mut RealDomain::new(), &self.tg.base, &slack, &mut Meter::new()).is_some()
    }
}

/// Some directed cycle using only `allowed` edges, smallest start first.
fn find_cycle(g: &Digraph, allowed: &[bool]) -> Option<Vec<usize>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let n = g.n();
    let mut color = vec![WHITE; n];
    let mut via = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != WHITE {
            continue;
        }
        // (vertex, next out-edge position)
        let mut stack = vec![(root, 0usize)];
        color[root] = GREY;
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            let outs = g.out_edges(v);
            if *pos == outs.len() {
                color[v] = BLACK;
                stack.pop();
                continue;
            }
            let e = outs[*pos];
            *pos += 1;
            if !allowed[e] {
                continue;
            }
            let u = g.edge(e).to;
            match color[u] {
                WHITE => {
                    color[u] = GREY;
                    via[u] = e;
                    stack.push((u, 0));
                }
                GREY => {
                    let mut edges = vec![e];
                    let mut at = v;
                    while at != u {
                        let back = via[at];
                        edges.push(back);
                        at = g.edge(back).from;
                    }
                    edges.reverse();
                    return Some(edges);
                }
                _ => {}
            }
        }
    }
    None
}

/// A cycle of weight zero under `w - x t`, with the prices at `x`, when no
/// cycle is negative there.
fn nonpositive_cycle<T: Scalar, P: Probe<T>>(probe: &P, x: &T) -> Option<(Vec<usize>, Vec<T>)> {
    if probe.clearly_below(x) {
        return None;
    }
    let p = probe.prices(x);
    let g = probe.graph();
    let tight: Vec<bool> = (0..g.m()).map(|e| probe.is_tight(e, x, &p)).collect();
    find_cycle(g, &tight).map(|c| (c, p))
}

/// Bracket returned by bisection, with the bracket after every round.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioInterval {
    pub lo: f64,
    pub hi: f64,
    pub history: Vec<(f64, f64)>,
    /// Exact brackets, present when the instance took the exact path.
    pub exact_history: Option<Vec<(Rational, Rational)>>,
}

fn bisect<T: Scalar, O: LambdaOracle<T>>(oracle: &O, mut lo: T, mut hi: T, rounds: usize) -> Vec<(T, T)> {
    let mut history = vec![(lo.clone(), hi.clone())];
    for _ in 0..rounds {
        let mid = lo.midpoint(&hi);
        if oracle.below(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        history.push((lo.clone(), hi.clone()));
    }
    history
}

/// Bisection on `[min w/t, max w/t]`: `lambda* < mid` iff `w - mid t` has a
/// negative cycle. Exact instances run at most [`EXACT_BISECTIONS`] rounds.
pub fn min_ratio_binary_search(tg: &TimedDigraph, iterations: usize) -> Result<RatioInterval> {
    if iterations == 0 {
        return Err(Error::ZeroHops);
    }
    if !tg.base.has_cycle() {
        return Err(Error::NoCycle);
    }
    if let Ok(probe) = ExactProbe::new(tg) {
        let (lo, hi) = tg.exact_edge_ratio_range(&probe.w, &probe.t);
        let history = bisect(&probe, lo, hi, iterations.min(EXACT_BISECTIONS));
        let (lo, hi) = history.last().cloned().unwrap();
        return Ok(RatioInterval {
            lo: lo.to_f64(),
            hi: hi.to_f64(),
            history: history.iter().map(|(a, b)| (a.to_f64(), b.to_f64())).collect(),
            exact_history: Some(history),
        });
    }
    let (lo, hi) = tg.edge_ratio_range();
    let history = bisect(&FloatProbe { tg }, lo, hi, iterations);
    let (lo, hi) = *history.last().unwrap();
    Ok(RatioInterval {
        lo,
        hi,
        history,
        exact_history: None,
    })
}

/// Which arithmetic the parametric search runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    /// Exact when [`TimedDigraph::is_integral`], otherwise float.
    Auto,
    Float,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RatioAnswer {
    pub lambda_star: f64,
    pub exact: Option<Rational>,
    /// A simple cycle with `w / t == lambda_star`.
    pub witness: Path,
    /// Feasible prices for `w - lambda_star t`.
    pub certificate: Vec<f64>,
    pub exact_certificate: Option<Vec<Rational>>,
    /// The live interval after every batch that shrank it.
    pub history: Vec<(f64, f64)>,
    pub exact_history: Option<Vec<(Rational, Rational)>>,
    pub stats: SearchStats,
}

struct Found<T> {
    lambda: T,
    witness: Vec<usize>,
    prices: Vec<T>,
    history: Vec<(T, T)>,
    stats: SearchStats,
}

fn parametric_in<T: Scalar, P: Probe<T>>(probe: &P, weights: Vec<LinearValue<T>>, lo: T, hi: T) -> Result<Found<T>> {
    let g = probe.graph();
    let mut dom = ParametricDomain::new(lo, hi, probe);
    if dom.lo < dom.hi {
        let _ = shortest_negative_cycle_in(&mut dom, g, &weights, &mut Meter::new());
    }
    let (lo, hi) = (dom.lo.clone(), dom.hi.clone());
    let mut cands: Vec<T> = dom.candidates.iter().filter(|x| **x >= lo && **x <= hi).cloned().collect();
    cands.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cands.dedup();
    for x in cands {
        if let Some((witness, prices)) = nonpositive_cycle(probe, &x) {
            return Ok(Found {
                lambda: x,
                witness,
                prices,
                history: dom.history,
                stats: dom.stats,
            });
        }
    }
    Err(Error::PrecisionLoss)
}

/// Minimum ratio cycle by parametric search over the hub-based detector.
pub fn min_ratio_parametric(tg: &TimedDigraph) -> Result<RatioAnswer> {
    min_ratio_parametric_with(tg, Arithmetic::Auto)
}

pub fn min_ratio_parametric_with(tg: &TimedDigraph, arithmetic: Arithmetic) -> Result<RatioAnswer> {
    if !tg.base.has_cycle() {
        return Err(Error::NoCycle);
    }
    let g = &tg.base;
    if arithmetic == Arithmetic::Auto {
        if let Ok(probe) = ExactProbe::new(tg) {
            let weights = probe
                .w
                .iter()
                .zip(&probe.t)
                .map(|(&w, &t)| LinearValue::new(Rational::from_integer(t as i128), Rational::from_integer(w as i128)))
                .collect();
            let (lo, hi) = tg.exact_edge_ratio_range(&probe.w, &probe.t);
            let found = parametric_in(&probe, weights, lo, hi)?;
            let witness = Path::from_edges(g, found.witness)?;
            debug_assert_eq!(tg.exact_ratio(&witness)?, found.lambda);
            return Ok(RatioAnswer {
                lambda_star: found.lambda.to_f64(),
                exact: Some(found.lambda),
                witness,
                certificate: found.prices.iter().map(Scalar::to_f64).collect(),
                exact_certificate: Some(found.prices),
                history: found.history.iter().map(|(a, b)| (a.to_f64(), b.to_f64())).collect(),
                exact_history: Some(found.history),
                stats: found.stats,
            });
        }
    }
    let probe = FloatProbe { tg };
    let weights = g
        .edges()
        .iter()
        .zip(&tg.times)
        .map(|(e, &t)| LinearValue::new(t, e.weight))
        .collect();
    let (lo, hi) = tg.edge_ratio_range();
    let found = parametric_in(&probe, weights, lo, hi)?;
    let witness = Path::from_edges(g, found.witness)?;
    // Report the witness's own ratio, which the tolerance kept within
    // rounding of the selected candidate.
    let lambda_star = tg.ratio(&witness);
    Ok(RatioAnswer {
        lambda_star,
        exact: None,
        certificate: probe.prices(&lambda_star),
        exact_certificate: None,
        witness,
        history: found.history,
        exact_history: None,
        stats: found.stats,
    })
}

/// Minimum mean cycle: the ratio problem with unit times.
pub fn min_mean_cycle(g: &Digraph) -> Result<RatioAnswer> {
    min_ratio_parametric(&TimedDigraph::unit(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn timed(n: usize, e: &[(usize, usize, f64, f64)]) -> TimedDigraph {
        let edges: Vec<_> = e.iter().map(|&(u, v, w, _)| (u, v, w)).collect();
        let g = Digraph::new(n, &edges).unwrap();
        TimedDigraph::new(g, e.iter().map(|x| x.3).collect()).unwrap()
    }

    fn triangle(w: f64) -> TimedDigraph {
        timed(3, &[(0, 1, w, 1.0), (1, 2, w, 1.0), (2, 0, w, 1.0)])
    }

    fn r(p: i128, q: i128) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn times_are_validated() {
        let g = Digraph::new(2, &[(0, 1, 1.0)]).unwrap();
        assert_eq!(TimedDigraph::new(g.clone(), vec![0.0]), Err(Error::NonPositiveTime { edge: 0 }));
        assert_eq!(TimedDigraph::new(g, vec![]), Err(Error::TimeCount { got: 0, m: 1 }));
    }

    #[test]
    fn evaluate_examples() {
        let tg = triangle(1.0);
        match evaluate_lambda(&tg, 2.0) {
            Evaluation::Infeasible(c) => assert_eq!(c.weight(), -3.0),
            other => panic!("{other:?}"),
        }
        for lambda in [0.5, 1.0] {
            let Evaluation::Feasible(p) = evaluate_lambda(&tg, lambda) else {
                panic!("feasible at {lambda}");
            };
            let reduced = tg.reduced_weights(lambda);
            for (e, edge) in tg.base.edges().iter().enumerate() {
                assert!(reduced[e] + p[edge.from] - p[edge.to] >= 0.0);
            }
        }
    }

    #[test]
    fn exact_evaluation_at_optimum() {
        let tg = timed(2, &[(0, 1, 3.0, 1.0), (1, 0, 0.0, 2.0)]);
        // lambda* = 3 / 3 = 1
        assert!(matches!(evaluate_lambda_exact(&tg, r(1, 1)).unwrap(), ExactEvaluation::Feasible(_)));
        match evaluate_lambda_exact(&tg, r(101, 100)).unwrap() {
            ExactEvaluation::Infeasible { reduced_weight, .. } => assert_eq!(reduced_weight, r(-3, 100)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn find_cycle_respects_mask() {
        let g = Digraph::new(3, &[(0, 1, 0.0), (1, 0, 0.0), (1, 2, 0.0), (2, 1, 0.0)]).unwrap();
        assert_eq!(find_cycle(&g, &[true, true, true, true]), Some(vec![0, 1]));
        assert_eq!(find_cycle(&g, &[false, true, true, true]), Some(vec![2, 3]));
        assert_eq!(find_cycle(&g, &[false, true, true, false]), None);
    }

    #[test]
    fn bisection_on_two_cycle() {
        let tg = timed(2, &[(0, 1, 2.0, 1.0), (1, 0, 2.0, 1.0)]);
        let iv = min_ratio_binary_search(&tg, 10).unwrap();
        assert_eq!((iv.lo, iv.hi), (2.0, 2.0));
    }

    #[test]
    fn bisection_brackets_smaller_ratio() {
        let tg = timed(
            4,
            &[(0, 1, 1.0, 1.0), (1, 0, 1.0, 1.0), (2, 3, 3.0, 1.0), (3, 2, 0.0, 1.0)],
        );
        let iv = min_ratio_binary_search(&tg, 60).unwrap();
        let hist = iv.exact_history.unwrap();
        assert!(hist.iter().all(|(lo, hi)| *lo <= r(1, 1) && r(1, 1) <= *hi));
        assert!(iv.hi - iv.lo <= 3.0 * 2f64.powi(-60));
    }

    #[test]
    fn parametric_triangle() {
        let ans = min_ratio_parametric(&triangle(2.0)).unwrap();
        assert_eq!(ans.exact, Some(r(2, 1)));
        assert_eq!(ans.lambda_star, 2.0);
        assert_eq!(ans.witness.hops(), 3);
    }

    #[test]
    fn parametric_picks_smaller_ratio() {
        let tg = timed(
            4,
            &[(0, 1, 3.0, 1.0), (1, 0, 0.0, 1.0), (2, 3, 1.0, 1.0), (3, 2, 1.0, 1.0)],
        );
        let ans = min_ratio_parametric(&tg).unwrap();
        assert_eq!(ans.exact, Some(r(1, 1)));
        assert_eq!(tg.exact_ratio(&ans.witness).unwrap(), r(1, 1));
        let float = min_ratio_parametric_with(&tg, Arithmetic::Float).unwrap();
        assert_eq!(float.lambda_star, 1.0);
    }

    #[test]
    fn parametric_with_fractional_optimum() {
        // cycles: 0-1-0 ratio (1 + 2)/(2 + 1) = 1, 1-2-1 ratio (2 + 0)/(1 + 2) = 2/3
        let tg = timed(3, &[(0, 1, 1.0, 2.0), (1, 0, 2.0, 1.0), (1, 2, 2.0, 1.0), (2, 1, 0.0, 2.0)]);
        let ans = min_ratio_parametric(&tg).unwrap();
        assert_eq!(ans.exact, Some(r(2, 3)));
        let cert = ans.exact_certificate.unwrap();
        for (e, edge) in tg.base.edges().iter().enumerate() {
            let red = r(edge.weight as i128, 1) - r(2, 3) * r(tg.times[e] as i128, 1) + cert[edge.from]
                - cert[edge.to];
            assert!(red >= r(0, 1));
        }
        let float = min_ratio_parametric_with(&tg, Arithmetic::Float).unwrap();
        assert!((float.lambda_star - 2.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn non_integral_instance_uses_floats() {
        let tg = timed(2, &[(0, 1, 0.5, 1.0), (1, 0, 0.25, 0.5)]);
        let ans = min_ratio_parametric(&tg).unwrap();
        assert!(ans.exact.is_none());
        assert!((ans.lambda_star - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn acyclic_is_rejected() {
        let tg = timed(2, &[(0, 1, 1.0, 1.0)]);
        assert_eq!(min_ratio_parametric(&tg), Err(Error::NoCycle));
        assert_eq!(min_ratio_binary_search(&tg, 3), Err(Error::NoCycle));
    }

    #[test]
    fn mean_cycle_wrapper_matches_karp() {
        let g = Digraph::new(
            5,
            &[(0, 1, 1.0), (1, 2, 1.0), (2, 0, -3.0), (3, 4, 1.0), (4, 3, 1.0)],
        )
        .unwrap();
        let ans = min_mean_cycle(&g).unwrap();
        assert_eq!(ans.exact, Some(r(-1, 3)));
        assert_eq!(min_mean_cycle_karp(&g).unwrap().0, -1.0 / 3.0);
    }
}
