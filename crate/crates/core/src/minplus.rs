//! Min-plus matrix products and closure by repeated squaring.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::DistMatrix;
use crate::workdepth::{ceil_log2, Cost, Meter};

/// A diagonal entry went negative: the matrix graph has a negative cycle
/// through `index()[position]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NegativeDiagonal {
    pub position: usize,
    pub vertex: usize,
}

fn product_cost(b: usize) -> Cost {
    let b64 = b as u64;
    Cost::new(b64 * b64 * b64, 1 + ceil_log2(b))
}

/// `C(i, j) = min_k A(i, k) + B(k, j)`, with `+inf` absorbing.
pub fn minplus_product(a: &DistMatrix, b: &DistMatrix) -> Result<DistMatrix> {
    minplus_product_metered(a, b, &mut Meter::new())
}

pub fn minplus_product_metered(a: &DistMatrix, b: &DistMatrix, meter: &mut Meter) -> Result<DistMatrix> {
    if a.index() != b.index() {
        return Err(Error::DimensionMismatch(a.size(), b.size()));
    }
    let n = a.size();
    let mut c = DistMatrix::filled(a.index().to_vec(), f64::INFINITY);
    if n > 0 {
        c.entries_mut()
            .par_chunks_mut(n)
            .enumerate()
            .for_each(|(i, out)| {
                for (k, &aik) in a.row(i).iter().enumerate() {
                    if aik == f64::INFINITY {
                        continue;
                    }
                    for (slot, &bkj) in out.iter_mut().zip(b.row(k)) {
                        let s = aik + bkj;
                        if s < *slot {
                            *slot = s;
                        }
                    }
                }
            });
    }
    meter.charge(product_cost(n));
    Ok(c)
}

fn negative_diagonal(m: &DistMatrix) -> Option<NegativeDiagonal> {
    (0..m.size()).find(|&i| m.get(i, i) < 0.0).map(|i| NegativeDiagonal {
        position: i,
        vertex: m.index()[i],
    })
}

/// Shortest-walk closure of the graph whose edge weights are the entries
/// of `a`. Diagonal entries are first clamped to `min(entry, 0)`; then
/// `ceil(log2(max(b - 1, 1)))` squarings follow. Any negative diagonal
/// (including a negative cycle of exactly `b` edges, found by one final
/// `C(i, k) + C(k, i)` scan) aborts with [`NegativeDiagonal`].
pub fn minplus_closure(a: &DistMatrix) -> std::result::Result<DistMatrix, NegativeDiagonal> {
    minplus_closure_metered(a, &mut Meter::new())
}

pub fn minplus_closure_metered(
    a: &DistMatrix,
    meter: &mut Meter,
) -> std::result::Result<DistMatrix, NegativeDiagonal> {
    let b = a.size();
    let mut c = a.clone();
    for i in 0..b {
        if c.get(i, i) > 0.0 {
            c.set(i, i, 0.0);
        }
    }
    if let Some(neg) = negative_diagonal(&c) {
        return Err(neg);
    }
    let squarings = ceil_log2((b.max(2)) - 1);
    for _ in 0..squarings {
        c = minplus_product_metered(&c, &c, meter).expect("same index");
        if let Some(neg) = negative_diagonal(&c) {
            return Err(neg);
        }
    }
    // A negative cycle through all b vertices can still hide after the
    // squarings; split it into two halves.
    let bad = (0..b)
        .into_par_iter()
        .find_first(|&i| (0..b).any(|k| c.get(i, k) + c.get(k, i) < 0.0));
    meter.charge(Cost::new((b * b) as u64, 1 + ceil_log2(b)));
    match bad {
        Some(i) => Err(NegativeDiagonal {
            position: i,
            vertex: c.index()[i],
        }),
        None => Ok(c),
    }
}
