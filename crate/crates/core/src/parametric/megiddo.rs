//! Comparison batching for parametric search.
//!
//! Values are affine functions of the unknown optimum `lambda*`. Every batch
//! of comparisons the engine issues in one parallel step becomes a set of
//! breakpoints; the ones strictly inside the live interval are sorted and
//! `lambda*` is located among them by binary search with the sequential
//! oracle. After that no breakpoint of the batch lies inside the interval,
//! so every comparison has one answer on the whole (open) interval.

use std::cmp::Ordering;

use serde::Serialize;

use super::linear::{LinearValue, Scalar};
use crate::domain::{Domain, Groups};

/// Decides `lambda* < x`, i.e. whether the graph reweighted by `w - x t`
/// has a negative cycle.
pub trait LambdaOracle<T>: Sync {
    fn below(&self, x: &T) -> bool;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    /// Batches resolved (one per simulated parallel step).
    pub parallel_steps: u64,
    pub comparisons: u64,
    /// Breakpoints that fell strictly inside the live interval.
    pub interior_breakpoints: u64,
    pub oracle_calls: u64,
}

pub struct ParametricDomain<'o, T, O> {
    pub lo: T,
    pub hi: T,
    oracle: &'o O,
    /// Every interior breakpoint seen, plus the initial endpoints.
    pub candidates: Vec<T>,
    /// The live interval after each batch that shrank it.
    pub history: Vec<(T, T)>,
    pub stats: SearchStats,
}

impl<'o, T: Scalar, O: LambdaOracle<T>> ParametricDomain<'o, T, O> {
    pub fn new(lo: T, hi: T, oracle: &'o O) -> Self {
        ParametricDomain {
            candidates: vec![lo.clone(), hi.clone()],
            history: vec![(lo.clone(), hi.clone())],
            lo,
            hi,
            oracle,
            stats: SearchStats::default(),
        }
    }

    /// Signs of `values` at `lambda*`'s side of every breakpoint, shrinking
    /// the interval as needed.
    pub fn resolve(&mut self, values: &[LinearValue<T>]) -> Vec<Ordering> {
        if values.is_empty() {
            return Vec::new();
        }
        self.stats.parallel_steps += 1;
        self.stats.comparisons += values.len() as u64;
        let mut inside: Vec<T> = values
            .iter()
            .filter_map(LinearValue::root)
            .filter(|x| *x > self.lo && *x < self.hi)
            .collect();
        if !inside.is_empty() {
            inside.sort_by(|a, b| a.partial_cmp(b).unwrap());
            inside.dedup();
            self.stats.interior_breakpoints += inside.len() as u64;
            // lambda* lies in [inside[lo_i], inside[hi_i]], with -1 and
            // len standing for the current endpoints.
            let (mut lo_i, mut hi_i) = (-1isize, inside.len() as isize);
            while hi_i - lo_i > 1 {
                let mid = (lo_i + hi_i) / 2;
                self.stats.oracle_calls += 1;
                if self.oracle.below(&inside[mid as usize]) {
                    hi_i = mid;
                } else {
                    lo_i = mid;
                }
            }
            if lo_i >= 0 {
                self.lo = inside[lo_i as usize].clone();
            }
            if (hi_i as usize) < inside.len() {
                self.hi = inside[hi_i as usize].clone();
            }
            self.candidates.extend(inside);
            self.history.push((self.lo.clone(), self.hi.clone()));
        }
        values
            .iter()
            .map(|v| v.sign_between(&self.lo, &self.hi))
            .collect()
    }
}

impl<T: Scalar, O: LambdaOracle<T>> Domain for ParametricDomain<'_, T, O> {
    type W = LinearValue<T>;

    fn add(&self, a: &Self::W, b: &Self::W) -> Self::W {
        a + b
    }

    fn zero(&self) -> Self::W {
        LinearValue::constant(T::zero())
    }

    /// Pairwise tournaments, one round per batch of comparisons.
    fn argmin_groups(&mut self, batches: &[Groups<Self::W>]) -> Vec<Vec<usize>> {
        let mut alive: Vec<Vec<Vec<usize>>> = batches
            .iter()
            .map(|b| (0..b.len()).map(|g| (0..b.group(g).len()).collect()).collect())
            .collect();
        loop {
            let mut pairs = Vec::new();
            let mut diffs = Vec::new();
            for (bi, groups) in alive.iter().enumerate() {
                for (gi, live) in groups.iter().enumerate() {
                    let vals = batches[bi].group(gi);
                    for pair in live.chunks_exact(2) {
                        pairs.push((bi, gi));
                        diffs.push(&vals[pair[0]] - &vals[pair[1]]);
                    }
                }
            }
            if pairs.is_empty() {
                break;
            }
            let signs = self.resolve(&diffs);
            let mut outcome = signs.into_iter();
            for groups in alive.iter_mut() {
                for live in groups.iter_mut() {
                    if live.len() < 2 {
                        continue;
                    }
                    let mut next = Vec::with_capacity(live.len().div_ceil(2));
                    for pair in live.chunks(2) {
                        if pair.len() == 1 {
                            next.push(pair[0]);
                        } else if outcome.next().unwrap() == Ordering::Greater {
                            next.push(pair[1]);
                        } else {
                            next.push(pair[0]);
                        }
                    }
                    *live = next;
                }
            }
        }
        alive
            .into_iter()
            .map(|groups| groups.into_iter().map(|l| l.first().copied().unwrap_or(0)).collect())
            .collect()
    }

    fn signs(&mut self, values: &[Self::W]) -> Vec<Ordering> {
        self.resolve(values)
    }
}
