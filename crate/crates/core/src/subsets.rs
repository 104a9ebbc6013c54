//! Enumeration of k-subsets of `[n]`: colexicographic ranking, and a
//! best-first stream ordered by the sum of per-element weights.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

/// Pascal's triangle up to `n`, saturating at `u128::MAX`.
pub(crate) struct Binomials {
    table: Vec<Vec<u128>>,
}

impl Binomials {
    pub(crate) fn new(n: usize) -> Self {
        let mut table: Vec<Vec<u128>> = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let mut row = vec![1u128; m + 1];
            for k in 1..m {
                row[k] = table[m - 1][k - 1].saturating_add(table[m - 1][k]);
            }
            table.push(row);
        }
        Binomials { table }
    }

    pub(crate) fn get(&self, n: usize, k: usize) -> u128 {
        if k > n {
            0
        } else {
            self.table[n][k]
        }
    }
}

/// Colex rank: `sum_j C(s_j, j + 1)` for increasing `s`.
#[cfg(test)]
pub(crate) fn colex_rank(s: &[usize], binom: &Binomials) -> u128 {
    s.iter()
        .enumerate()
        .map(|(j, &x)| binom.get(x, j + 1))
        .sum()
}

/// The `k`-subset of colex rank `r`.
pub(crate) fn colex_unrank(mut r: u128, k: usize, n: usize, binom: &Binomials) -> Vec<usize> {
    let mut s = vec![0; k];
    let mut hi = n;
    for j in (0..k).rev() {
        // largest c < hi with C(c, j + 1) <= r; C(j, j + 1) = 0 ends the scan
        let mut c = hi - 1;
        while binom.get(c, j + 1) > r {
            c -= 1;
        }
        s[j] = c;
        r -= binom.get(c, j + 1);
        hi = c;
    }
    s
}

/// Advances `s` to its colex successor within `[n]`; false at the end.
pub(crate) fn colex_next(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for j in 0..k {
        let limit = if j + 1 < k { s[j + 1] } else { n };
        if s[j] + 1 < limit {
            s[j] += 1;
            for (p, v) in s[..j].iter_mut().enumerate() {
                *v = p;
            }
            return true;
        }
    }
    false
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    sum: u64,
    group: usize,
    members: Vec<usize>,
    positions: Vec<usize>,
}

/// Yields `(group, subset)` pairs over several subset sizes in ascending
/// order of `sum(weights[i])`, ties broken by group and then by the sorted
/// members. Every subset of every group appears exactly once.
///
/// Each subset in the weight-sorted index space has one parent, obtained by
/// decrementing its first position that differs from the initial subset;
/// children never weigh less than their parent, so a heap over the frontier
/// produces the subsets in order.
pub(crate) struct WeightOrdered {
    order: Vec<usize>,
    sorted_weights: Vec<u64>,
    heap: BinaryHeap<Reverse<Entry>>,
}

impl WeightOrdered {
    /// `sizes[g]` is the subset size of group `g`.
    pub(crate) fn new(weights: &[u64], sizes: &[usize]) -> Self {
        let n = weights.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (weights[i], i));
        let sorted_weights = order.iter().map(|&i| weights[i]).collect();
        let mut stream = WeightOrdered {
            order,
            sorted_weights,
            heap: BinaryHeap::new(),
        };
        for (g, &k) in sizes.iter().enumerate() {
            if k <= n {
                stream.push(g, (0..k).collect());
            }
        }
        stream
    }

    fn push(&mut self, group: usize, positions: Vec<usize>) {
        let sum = positions.iter().map(|&p| self.sorted_weights[p]).sum();
        let mut members: Vec<usize> = positions.iter().map(|&p| self.order[p]).collect();
        members.sort_unstable();
        self.heap.push(Reverse(Entry {
            sum,
            group,
            members,
            positions,
        }));
    }
}

impl Iterator for WeightOrdered {
    type Item = (usize, Vec<usize>);

    fn next(&mut self) -> Option<Self::Item> {
        let Reverse(e) = self.heap.pop()?;
        let n = self.order.len();
        let k = e.positions.len();
        let first_gap = (0..k).find(|&p| e.positions[p] != p).unwrap_or(k);
        for j in [first_gap.checked_sub(1), Some(first_gap)]
            .into_iter()
            .flatten()
        {
            if j >= k {
                continue;
            }
            let limit = if j + 1 < k { e.positions[j + 1] } else { n };
            if e.positions[j] + 1 < limit {
                let mut child = e.positions.clone();
                child[j] += 1;
                self.push(e.group, child);
            }
        }
        Some((e.group, e.members))
    }
}
