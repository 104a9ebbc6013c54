//! Exact minimum distance of small binary codes, by exhaustive search.
//!
//! Two independent routes are available:
//!
//! * [`Route::Codewords`] walks all `2^k` codewords of a null-space basis in
//!   Gray-code order (needs `k <= MAX_DIMENSION`);
//! * [`Route::Supports`] tries supports on the unpunctured positions in order
//!   of increasing size and accepts the first whose syndrome can be cancelled
//!   by the punctured columns (needs at most `MAX_SUPPORT_POSITIONS`
//!   unpunctured positions). It never forms a generator matrix.
//!
//! Weights count unpunctured positions only. A result of
//! [`Distance::Infinite`] means every nonzero codeword vanishes after
//! puncturing (or the code is `{0}`).

use rayon::prelude::*;

use crate::bounds::Distance;
use crate::error::{Error, Result};
use crate::expansion::{expand_puncture_set, to_binary};
use crate::gf2::{self, BinaryMatrix};
use crate::qc_matrix::{IndexSet, PolyMatrix};

pub const MAX_DIMENSION: usize = 24;
pub const MAX_SUPPORT_POSITIONS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Codewords,
    Supports,
}

/// Minimum nonzero weight over unpunctured positions, choosing the
/// codeword route when the dimension allows it.
pub fn exact_min_distance(h: &BinaryMatrix, p: &IndexSet) -> Result<Distance> {
    p.check_bound(h.cols())?;
    let k = h.cols() - h.rank();
    if k <= MAX_DIMENSION {
        exact_min_distance_by(h, p, Route::Codewords)
    } else {
        exact_min_distance_by(h, p, Route::Supports)
    }
}

pub fn exact_min_distance_by(h: &BinaryMatrix, p: &IndexSet, route: Route) -> Result<Distance> {
    p.check_bound(h.cols())?;
    match route {
        Route::Codewords => by_codewords(h, p),
        Route::Supports => by_supports(h, p),
    }
}

/// [`exact_min_distance`] of the binary expansion of `h` with the subblocks
/// in `p` punctured.
pub fn exact_min_distance_qc(h: &PolyMatrix, p: &IndexSet) -> Result<Distance> {
    p.check_bound(h.cols())?;
    exact_min_distance(&to_binary(h), &expand_puncture_set(p, h.modulus_degree()))
}

/// Whether deleting the punctured positions keeps every nonzero codeword
/// nonzero, i.e. the generator restricted to unpunctured positions still
/// has rank `k`.
pub fn dimensionality_preserved(h: &BinaryMatrix, p: &IndexSet) -> Result<bool> {
    p.check_bound(h.cols())?;
    let basis = h.nullspace();
    let keep: Vec<usize> = p.complement(h.cols()).iter().collect();
    let mut g = BinaryMatrix::zeros(basis.len(), keep.len());
    for (r, v) in basis.iter().enumerate() {
        for (c, &pos) in keep.iter().enumerate() {
            if gf2::get_bit(v, pos) {
                g.set(r, c, true);
            }
        }
    }
    Ok(g.rank() == basis.len())
}

/// Same check for a QC code given by `H(x)` with punctured subblocks.
pub fn dimensionality_preserved_qc(h: &PolyMatrix, p: &IndexSet) -> Result<bool> {
    p.check_bound(h.cols())?;
    dimensionality_preserved(&to_binary(h), &expand_puncture_set(p, h.modulus_degree()))
}

fn keep_mask(n: usize, p: &IndexSet) -> Vec<u64> {
    let mut m = vec![0u64; gf2::words_for(n)];
    for i in 0..n {
        if !p.contains(i) {
            gf2::flip_bit(&mut m, i);
        }
    }
    m
}

fn masked_weight(v: &[u64], mask: &[u64]) -> usize {
    v.iter()
        .zip(mask)
        .map(|(a, b)| (a & b).count_ones() as usize)
        .sum()
}

fn by_codewords(h: &BinaryMatrix, p: &IndexSet) -> Result<Distance> {
    let basis = h.nullspace();
    let k = basis.len();
    if k > MAX_DIMENSION {
        return Err(Error::Capacity(format!(
            "code dimension {k} exceeds the enumeration limit of {MAX_DIMENSION}"
        )));
    }
    if k == 0 {
        return Ok(Distance::Infinite);
    }
    let mask = keep_mask(h.cols(), p);
    let words = mask.len();
    // fix the top `split` information bits per task, Gray-walk the rest
    let split = k.min(6);
    let low = k - split;
    let best = (0u64..1 << split)
        .into_par_iter()
        .map(|prefix| {
            let mut v = vec![0u64; words];
            for b in 0..split {
                if prefix >> b & 1 == 1 {
                    gf2::xor_into(&mut v, &basis[low + b]);
                }
            }
            let mut best = usize::MAX;
            let mut consider = |v: &[u64]| {
                let w = masked_weight(v, &mask);
                if w > 0 && w < best {
                    best = w;
                }
            };
            if prefix != 0 {
                consider(&v);
            }
            for i in 1u64..1 << low {
                gf2::xor_into(&mut v, &basis[i.trailing_zeros() as usize]);
                consider(&v);
            }
            best
        })
        .min()
        .unwrap_or(usize::MAX);
    Ok(if best == usize::MAX {
        Distance::Infinite
    } else {
        Distance::Finite(best as u128)
    })
}

/// Reduced basis of a set of vectors, for span membership tests.
struct Span {
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    fn new(vectors: impl Iterator<Item = Vec<u64>>) -> Self {
        let mut span = Span { rows: Vec::new() };
        for v in vectors {
            let r = span.reduce(v);
            let pivot = gf2::ones(&r).next();
            if let Some(pivot) = pivot {
                span.rows.push((pivot, r));
            }
        }
        span
    }

    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        for (pivot, row) in &self.rows {
            if gf2::get_bit(&v, *pivot) {
                gf2::xor_into(&mut v, row);
            }
        }
        v
    }

    fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&w| w == 0)
    }
}

fn by_supports(h: &BinaryMatrix, p: &IndexSet) -> Result<Distance> {
    let n = h.cols();
    let columns = h.transpose();
    let free: Vec<usize> = p.complement(n).iter().collect();
    if free.len() > MAX_SUPPORT_POSITIONS {
        return Err(Error::Capacity(format!(
            "{} unpunctured positions exceed the support-search limit of {MAX_SUPPORT_POSITIONS}",
            free.len()
        )));
    }
    let span = Span::new(p.iter().map(|i| columns.row(i).to_vec()));
    let cols: Vec<Vec<u64>> = free.iter().map(|&i| columns.row(i).to_vec()).collect();

    for w in 1..=free.len() {
        // parallel over the smallest member of the support
        let found = (0..free.len()).into_par_iter().any(|first| {
            let mut syndrome = cols[first].clone();
            search(&cols, &span, first + 1, w - 1, &mut syndrome)
        });
        if found {
            return Ok(Distance::Finite(w as u128));
        }
    }
    Ok(Distance::Infinite)
}

/// Whether adding `remaining` more columns from `start..` can bring the
/// syndrome into the span of the punctured columns.
fn search(
    cols: &[Vec<u64>],
    span: &Span,
    start: usize,
    remaining: usize,
    syndrome: &mut Vec<u64>,
) -> bool {
    if remaining == 0 {
        return span.contains(syndrome);
    }
    for i in start..=cols.len() - remaining {
        gf2::xor_into(syndrome, &cols[i]);
        let hit = search(cols, span, i + 1, remaining - 1, syndrome);
        gf2::xor_into(syndrome, &cols[i]);
        if hit {
            return true;
        }
    }
    false
}
