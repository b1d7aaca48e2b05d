//! Value domains the shortest-path engine can run over.
//!
//! The engine only ever adds values and asks two kinds of questions about
//! them: "which candidate in each group is smallest" and "what is the sign of
//! each value". Both questions arrive in batches, one batch per parallel step.
//! [`Direct`] answers them by plain comparison; the parametric search answers
//! them for symbolic values by locating the unknown parameter.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::Add;

use rayon::prelude::*;

/// Candidate values grouped by destination. Group `i` is
/// `values[offsets[i]..offsets[i + 1]]`; groups may be empty.
#[derive(Clone, Debug, Default)]
pub struct Groups<W> {
    pub values: Vec<W>,
    pub offsets: Vec<usize>,
}

impl<W> Groups<W> {
    pub fn new() -> Self {
        Groups {
            values: Vec::new(),
            offsets: vec![0],
        }
    }

    pub fn push(&mut self, value: W) {
        self.values.push(value);
    }

    /// Closes the group that is currently being filled.
    pub fn seal(&mut self) {
        self.offsets.push(self.values.len());
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn group(&self, i: usize) -> &[W] {
        &self.values[self.offsets[i]..self.offsets[i + 1]]
    }
}

pub trait Domain: Sync {
    type W: Clone + Send + Sync + Debug;

    fn add(&self, a: &Self::W, b: &Self::W) -> Self::W;

    fn zero(&self) -> Self::W;

    /// For every group of every batch, the position of its minimum inside the
    /// group. Ties go to the lowest position; empty groups report 0.
    fn argmin_groups(&mut self, batches: &[Groups<Self::W>]) -> Vec<Vec<usize>>;

    /// Sign of each value relative to zero.
    fn signs(&mut self, values: &[Self::W]) -> Vec<Ordering>;
}

/// Concrete totally ordered values compared directly (`f64`, `i128`).
#[derive(Clone, Copy, Debug, Default)]
pub struct Direct<T>(std::marker::PhantomData<T>);

impl<T> Direct<T> {
    pub fn new() -> Self {
        Direct(std::marker::PhantomData)
    }
}

pub type RealDomain = Direct<f64>;
pub type ExactDomain = Direct<i128>;

fn argmin<T: PartialOrd>(group: &[T]) -> usize {
    let mut best = 0;
    for (i, x) in group.iter().enumerate().skip(1) {
        if *x < group[best] {
            best = i;
        }
    }
    best
}

impl<T> Domain for Direct<T>
where
    T: Copy + PartialOrd + Add<Output = T> + Default + Send + Sync + Debug,
{
    type W = T;

    fn add(&self, a: &T, b: &T) -> T {
        *a + *b
    }

    fn zero(&self) -> T {
        T::default()
    }

    fn argmin_groups(&mut self, batches: &[Groups<T>]) -> Vec<Vec<usize>> {
        batches
            .par_iter()
            .map(|b| (0..b.len()).map(|i| argmin(b.group(i))).collect())
            .collect()
    }

    fn signs(&mut self, values: &[T]) -> Vec<Ordering> {
        let zero = T::default();
        values
            .iter()
            .map(|v| v.partial_cmp(&zero).expect("values are never NaN"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn argmin_prefers_lowest_position_on_ties() {
        let mut g = Groups::new();
        for v in [3.0, 1.0, 1.0] {
            g.push(v);
        }
        g.seal();
        g.seal();
        g.push(-2.0);
        g.seal();
        let mut d = RealDomain::new();
        assert_eq!(d.argmin_groups(&[g]), vec![vec![1, 0, 0]]);
    }

    #[test]
    fn signs_of_integers() {
        let mut d = ExactDomain::new();
        assert_eq!(
            d.signs(&[-3, 0, 7]),
            vec![Ordering::Less, Ordering::Equal, Ordering::Greater]
        );
    }
}
