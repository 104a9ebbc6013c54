//! Tanner-graph girth: exact measurement on a binary parity-check matrix,
//! the tree-method upper bound from a protograph, and the structural limits
//! that quasi-cyclic lifting imposes.
//!
//! Girths are reported as `Option<usize>`; `None` means the graph has no
//! cycle (or, for the tree bound, that the protograph cannot force one).

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{self, BinaryMatrix};
use crate::qc_matrix::WeightMatrix;

/// Bipartite graph of a binary parity-check matrix. Variable `i` and check
/// `j` are adjacent when `H[j][i] = 1`.
#[derive(Clone, Debug)]
pub struct TannerGraph {
    var_adj: Vec<Vec<usize>>,
    check_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    pub fn from_binary(h: &BinaryMatrix) -> Self {
        let mut var_adj = vec![Vec::new(); h.cols()];
        let mut check_adj = vec![Vec::new(); h.rows()];
        for j in 0..h.rows() {
            for i in gf2::ones(h.row(j)) {
                var_adj[i].push(j);
                check_adj[j].push(i);
            }
        }
        TannerGraph { var_adj, check_adj }
    }

    pub fn variable_count(&self) -> usize {
        self.var_adj.len()
    }

    pub fn check_count(&self) -> usize {
        self.check_adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    pub fn variable_neighbors(&self, i: usize) -> &[usize] {
        &self.var_adj[i]
    }

    pub fn check_neighbors(&self, j: usize) -> &[usize] {
        &self.check_adj[j]
    }

    /// Shortest cycle length, or `None` for a forest.
    ///
    /// Every cycle passes through a variable node, so a breadth-first search
    /// from each variable node (never stepping straight back along the edge
    /// it arrived on) finds the girth. Searches run in parallel and stop as
    /// soon as they cannot beat the best cycle seen so far.
    pub fn girth(&self) -> Option<usize> {
        let best = AtomicUsize::new(usize::MAX);
        (0..self.variable_count()).into_par_iter().for_each(|s| {
            let limit = best.load(Ordering::Relaxed);
            if let Some(g) = self.shortest_cycle_from(s, limit) {
                best.fetch_min(g, Ordering::Relaxed);
            }
        });
        match best.into_inner() {
            usize::MAX => None,
            g => Some(g),
        }
    }

    // Nodes are numbered variables first, then checks.
    fn shortest_cycle_from(&self, source: usize, limit: usize) -> Option<usize> {
        let nv = self.variable_count();
        let total = nv + self.check_count();
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut queue = std::collections::VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        let mut found = usize::MAX;
        while let Some(u) = queue.pop_front() {
            // any cycle closed from here has length at least 2 dist[u] + 2
            if 2 * dist[u] + 2 >= found.min(limit) {
                break;
            }
            let neighbors = if u < nv {
                &self.var_adj[u]
            } else {
                &self.check_adj[u - nv]
            };
            for &w in neighbors {
                let w = if u < nv { w + nv } else { w };
                if w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else {
                    found = found.min(dist[u] + dist[w] + 1);
                }
            }
        }
        (found < limit).then_some(found)
    }
}

/// Girth of the Tanner graph of `h`; `None` when it has no cycle.
pub fn measure_girth(h: &BinaryMatrix) -> Option<usize> {
    TannerGraph::from_binary(h).girth()
}

/// Girth ceiling for any quasi-cyclic lifting of the protomatrix `a`.
///
/// An entry of 3 or more becomes a circulant of weight at least 3, which
/// always closes a 6-cycle. Otherwise a 2x3 or 3x2 submatrix of nonzero
/// entries caps the girth at 12. Returns `None` when neither applies.
pub fn qc_girth_limit(a: &WeightMatrix) -> Option<usize> {
    let (rows, cols) = (a.rows(), a.cols());
    if (0..rows).any(|j| a.row(j).iter().any(|&e| e >= 3)) {
        return Some(6);
    }
    // Shared-support counts between every pair of rows and of columns.
    let nonzero = |j: usize, i: usize| a.get(j, i) > 0;
    for j1 in 0..rows {
        for j2 in j1 + 1..rows {
            if (0..cols)
                .filter(|&i| nonzero(j1, i) && nonzero(j2, i))
                .count()
                >= 3
            {
                return Some(12);
            }
        }
    }
    for i1 in 0..cols {
        for i2 in i1 + 1..cols {
            if (0..rows)
                .filter(|&j| nonzero(j, i1) && nonzero(j, i2))
                .count()
                >= 3
            {
                return Some(12);
            }
        }
    }
    None
}

/// Tree-method girth upper bound for any lifting of `a` to block length `n`,
/// with expansion factor `n / L`.
pub fn tree_girth_bound(a: &WeightMatrix, n: usize) -> Result<Option<usize>> {
    tree_girth_bound_transmitted(a, n, 0)
}

/// As [`tree_girth_bound`], with `n` counting only transmitted positions:
/// `punctured` protograph columns are untransmitted, so the expansion
/// factor is `n / (L - punctured)`.
///
/// From each protograph variable node the computation tree is grown one
/// level at a time. Tree nodes, variable and check alike, are tallied by
/// the protograph node they copy; a lifting has exactly `N` copies of each,
/// so once some tally exceeds `N` at depth `d`, two tree nodes must
/// coincide in the lifted graph and a cycle of length at most `2d` exists.
/// The bound is the smallest such `2d` over all variable roots.
///
/// Trees rooted at check nodes would also give valid bounds, sometimes
/// smaller; they are left out so that the values line up with the
/// customary variable-rooted tables.
pub fn tree_girth_bound_transmitted(
    a: &WeightMatrix,
    n: usize,
    punctured: usize,
) -> Result<Option<usize>> {
    let cols = a.cols();
    if punctured >= cols {
        return Err(Error::Domain(format!(
            "{punctured} punctured columns leave nothing of {cols} transmitted"
        )));
    }
    let transmitted = cols - punctured;
    if n == 0 || !n.is_multiple_of(transmitted) {
        return Err(Error::Domain(format!(
            "block length {n} is not a positive multiple of {transmitted}"
        )));
    }
    let factor = (n / transmitted) as u128;
    Ok((0..cols)
        .filter_map(|i| tree_height(a, Node::Var(i), factor))
        .min())
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Node {
    Var(usize),
    Check(usize),
}

// Girth bound from one root, or None if the tree dies out first.
fn tree_height(a: &WeightMatrix, root: Node, factor: u128) -> Option<usize> {
    let mut tally: HashMap<Node, u128> = HashMap::from([(root, 1)]);
    // (node, node it was reached from) -> number of tree nodes in that state
    let mut frontier: HashMap<(Node, Option<Node>), u128> = HashMap::from([((root, None), 1)]);
    let mut depth = 0;
    loop {
        if tally.values().any(|&c| c > factor) {
            return Some(2 * depth);
        }
        if frontier.is_empty() {
            return None;
        }
        depth += 1;
        let mut next: HashMap<(Node, Option<Node>), u128> = HashMap::new();
        for (&(node, from), &count) in &frontier {
            let children: Vec<(Node, u32)> = match node {
                Node::Var(i) => (0..a.rows())
                    .map(|j| (Node::Check(j), a.get(j, i)))
                    .collect(),
                Node::Check(j) => (0..a.cols()).map(|i| (Node::Var(i), a.get(j, i))).collect(),
            };
            for (child, edges) in children {
                // the edge just used cannot be walked back
                let edges = edges - u32::from(from == Some(child));
                if edges == 0 {
                    continue;
                }
                let added = count.saturating_mul(edges as u128);
                let slot = next.entry((child, Some(node))).or_insert(0);
                *slot = slot.saturating_add(added);
                let t = tally.entry(child).or_insert(0);
                *t = t.saturating_add(added);
            }
        }
        frontier = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{expand, fixture, to_binary, ShiftAssignment};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Shortest simple cycle by depth-limited DFS over closed walks, one
    // starting variable at a time, never revisiting a node.
    fn dfs_girth(h: &BinaryMatrix, max_len: usize) -> Option<usize> {
        let g = TannerGraph::from_binary(h);
        let nv = g.variable_count();
        let adj = |u: usize| -> Vec<usize> {
            if u < nv {
                g.variable_neighbors(u).iter().map(|&j| j + nv).collect()
            } else {
                g.check_neighbors(u - nv).to_vec()
            }
        };
        fn walk(
            adj: &dyn Fn(usize) -> Vec<usize>,
            start: usize,
            path: &mut Vec<usize>,
            max_len: usize,
            best: &mut Option<usize>,
        ) {
            let u = *path.last().unwrap();
            for w in adj(u) {
                if w == start && path.len() >= 4 {
                    let len = path.len();
                    *best = Some(best.map_or(len, |b| b.min(len)));
                } else if !path.contains(&w) && path.len() < max_len {
                    path.push(w);
                    walk(adj, start, path, max_len, best);
                    path.pop();
                }
            }
        }
        let mut best = None;
        for s in 0..nv {
            walk(&adj, s, &mut vec![s], max_len, &mut best);
        }
        best
    }

    fn matrix(rows: &[&str]) -> BinaryMatrix {
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect())
            .collect();
        BinaryMatrix::from_rows(&rows).unwrap()
    }

    fn random_expansion(a: &WeightMatrix, n: usize, seed: u64) -> BinaryMatrix {
        let shifts = ShiftAssignment::random(a, n, seed).unwrap();
        to_binary(&expand(a, &shifts).unwrap())
    }

    #[test]
    fn small_graphs() {
        assert_eq!(measure_girth(&matrix(&["11", "11"])), Some(4));
        assert_eq!(measure_girth(&matrix(&["110", "011"])), None);
        assert_eq!(
            measure_girth(&matrix(&["1100", "0110", "0011", "1001"])),
            Some(8)
        );
        let g = TannerGraph::from_binary(&matrix(&["110", "011"]));
        assert_eq!(
            (g.variable_count(), g.check_count(), g.edge_count()),
            (3, 2, 4)
        );
    }

    #[test]
    fn random_expansions_of_base_protograph_match_cycle_enumeration() {
        let a = fixture("ar4ja-1/2").unwrap().matrix().weight_matrix();
        for seed in 0..4 {
            let h = random_expansion(&a, 7, seed);
            let g = measure_girth(&h);
            assert!(matches!(g, Some(4) | Some(6)), "{g:?}");
            assert_eq!(dfs_girth(&h, 8), g);
        }
    }

    #[test]
    fn bfs_matches_dfs_on_random_sparse_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..8));
            let mut h = BinaryMatrix::zeros(r, c);
            for j in 0..r {
                for i in 0..c {
                    h.set(j, i, rng.gen_bool(0.4));
                }
            }
            assert_eq!(measure_girth(&h), dfs_girth(&h, 2 * (r + c)));
        }
    }

    #[test]
    fn qc_limits() {
        for name in ["ar4ja-1/2", "ar4ja-2/3", "ar4ja-4/5"] {
            let a = fixture(name).unwrap().matrix().weight_matrix();
            assert_eq!(qc_girth_limit(&a), Some(6), "{name}");
        }
        let big = fixture("ar4ja-1/2-expanded")
            .unwrap()
            .matrix()
            .weight_matrix();
        assert_eq!(qc_girth_limit(&big), Some(12));
        assert_eq!(qc_girth_limit(&WeightMatrix::zeros(3, 4)), None);
        let three_by_two = WeightMatrix::from_rows(&[[1u32, 1], [1, 2], [2, 1]]).unwrap();
        assert_eq!(qc_girth_limit(&three_by_two), Some(12));
        let spread = WeightMatrix::from_rows(&[[1u32, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(qc_girth_limit(&spread), None);
    }

    #[test]
    fn lifted_girth_never_exceeds_qc_limit() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let limited = [
            WeightMatrix::from_rows(&[[1u32, 1, 1], [1, 1, 1]]).unwrap(),
            WeightMatrix::from_rows(&[[3u32, 1], [1, 1]]).unwrap(),
            WeightMatrix::from_rows(&[[1u32, 1, 1, 0], [1, 1, 1, 1], [0, 1, 0, 1]]).unwrap(),
        ];
        for a in &limited {
            let limit = qc_girth_limit(a).unwrap();
            for _ in 0..20 {
                let n = rng.gen_range(3..=32);
                let h = random_expansion(a, n, rng.gen());
                let g = measure_girth(&h).expect("limited protographs always lift to cycles");
                assert!(g <= limit, "girth {g} > limit {limit} at N={n}");
            }
        }
    }

    #[test]
    fn tree_bound_values_for_base_protographs() {
        let big = fixture("ar4ja-1/2-expanded").unwrap();
        let base = fixture("ar4ja-1/2").unwrap();
        for (n, want) in [(2048, 12), (8192, 14), (32768, 16)] {
            for f in [big, base] {
                let a = f.matrix().weight_matrix();
                let got = tree_girth_bound_transmitted(&a, n, f.puncture.len()).unwrap();
                assert_eq!(got, Some(want), "{} at n={n}", f.name);
            }
        }
    }

    #[test]
    fn tree_bound_on_a_single_cycle() {
        // a 6-cycle protograph; its liftings are disjoint cycles of length 6k
        let a = WeightMatrix::from_rows(&[[1u32, 1, 0], [0, 1, 1], [1, 0, 1]]).unwrap();
        assert_eq!(tree_girth_bound(&a, 3).unwrap(), Some(6));
        for n in [2usize, 4, 5, 7] {
            let bound = tree_girth_bound(&a, 3 * n).unwrap().unwrap();
            assert!(bound >= 6 * n, "N={n}: bound {bound}");
            let h = random_expansion(&a, n, n as u64);
            assert!(measure_girth(&h).unwrap() <= bound);
        }
    }

    #[test]
    fn tree_bound_domain() {
        let a = fixture("ar4ja-1/2").unwrap().matrix().weight_matrix();
        assert!(matches!(tree_girth_bound(&a, 2048), Err(Error::Domain(_))));
        assert!(matches!(tree_girth_bound(&a, 0), Err(Error::Domain(_))));
        assert!(matches!(
            tree_girth_bound_transmitted(&a, 10, 5),
            Err(Error::Domain(_))
        ));
        let path = WeightMatrix::from_rows(&[[1u32, 1]]).unwrap();
        assert_eq!(tree_girth_bound(&path, 200).unwrap(), None);
    }

    #[test]
    fn measured_girth_never_exceeds_tree_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let (r, c) = (rng.gen_range(1..4), rng.gen_range(2..5));
            let rows: Vec<Vec<u32>> = (0..r)
                .map(|_| (0..c).map(|_| rng.gen_range(0..3)).collect())
                .collect();
            let a = WeightMatrix::from_rows(&rows).unwrap();
            let n = rng.gen_range(2..=12);
            let h = random_expansion(&a, n, rng.gen());
            let bound = tree_girth_bound(&a, n * c).unwrap();
            match (measure_girth(&h), bound) {
                (Some(g), Some(b)) => assert!(g <= b, "{a} N={n}: {g} > {b}"),
                (Some(g), None) => panic!("{a} N={n}: cycle {g} but no tree bound"),
                (None, _) => {}
            }
        }
    }

    proptest! {
        #[test]
        fn girth_is_permutation_invariant(
            bits in proptest::collection::vec(any::<bool>(), 30),
            row_seed in any::<u64>(),
            col_seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            let (r, c) = (5, 6);
            let mut h = BinaryMatrix::zeros(r, c);
            for (k, &b) in bits.iter().enumerate() {
                h.set(k / c, k % c, b);
            }
            let mut rp: Vec<usize> = (0..r).collect();
            let mut cp: Vec<usize> = (0..c).collect();
            rp.shuffle(&mut ChaCha8Rng::seed_from_u64(row_seed));
            cp.shuffle(&mut ChaCha8Rng::seed_from_u64(col_seed));
            let mut p = BinaryMatrix::zeros(r, c);
            for j in 0..r {
                for i in 0..c {
                    p.set(rp[j], cp[i], h.get(j, i));
                }
            }
            prop_assert_eq!(measure_girth(&h), measure_girth(&p));
        }
    }
}
