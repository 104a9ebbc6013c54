//! Minimum-distance upper bounds from permanents of column subsets.
//!
//! For a `J x L` matrix and a column set `S`, the vector whose `i`th entry is
//! the permanent of the columns `S \ i` is a codeword. Taking `|S| = J + 1`
//! over all subsets and keeping the smallest positive weight (the `min*` of
//! the weights) bounds the minimum distance from above. Four variants are
//! offered:
//!
//! * [`bound_poly`]: weights of the ring permanents of `H(x)`;
//! * [`bound_weight`]: integer permanents of the weight matrix, which upper
//!   bound the ring weights entrywise;
//! * [`bound_poly_rowremoval`] and [`bound_weight_rowremoval`]: rows `T` are
//!   deleted first, with `|S| = J + 1 - |T|`, which recovers nonzero
//!   codewords from column sets whose submatrix has zero rows.
//!
//! Punctured columns `P` contribute nothing to the weight. The weight-matrix
//! variants with `P` nonempty assume that puncturing keeps the code
//! dimension; see [`crate::oracle::dimensionality_preserved`].
//!
//! Exhaustive searches visit column sets in colex order, split across rayon
//! workers; ties go to the earliest set in that order, so the result does not
//! depend on the worker count. A budget smaller than the search space
//! switches to visiting sets in ascending order of summed column weight and
//! stops after evaluating `budget` of them.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permanent::{bits, CheckedU128, Grid, Ring};
use crate::poly_ring::PolyResidue;
use crate::qc_matrix::{combinations, to_mask, IndexSet, PolyMatrix, WeightMatrix};
use crate::subsets::{colex_next, colex_unrank, Binomials, WeightOrdered};

/// A bound value; `Infinite` means the method found no nonzero codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Distance {
    Finite(u128),
    Infinite,
}

impl Distance {
    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn finite(self) -> Option<u128> {
        match self {
            Distance::Finite(v) => Some(v),
            Distance::Infinite => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(v) => write!(f, "{v}"),
            Distance::Infinite => f.write_str("inf"),
        }
    }
}

/// Minimum over the strictly positive values; `Infinite` if there are none.
pub fn min_star<I: IntoIterator<Item = u128>>(values: I) -> Distance {
    values
        .into_iter()
        .filter(|&v| v > 0)
        .min()
        .map_or(Distance::Infinite, Distance::Finite)
}

/// Which construction produced a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theorem {
    Poly,
    Weight,
    PolyRowRemoval,
    WeightRowRemoval,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::Poly => "poly",
            Theorem::Weight => "weight",
            Theorem::PolyRowRemoval => "poly-rowremoval",
            Theorem::WeightRowRemoval => "weight-rowremoval",
        }
    }

    fn is_poly(self) -> bool {
        matches!(self, Theorem::Poly | Theorem::PolyRowRemoval)
    }

    fn with_rows_removed(self, removed: bool) -> Theorem {
        match (self.is_poly(), removed) {
            (true, false) => Theorem::Poly,
            (true, true) => Theorem::PolyRowRemoval,
            (false, false) => Theorem::Weight,
            (false, true) => Theorem::WeightRowRemoval,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Order in which column sets were visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchOrder {
    Colex,
    /// Ascending sum of column weights; a heuristic used under a budget.
    ColumnWeight,
}

impl SearchOrder {
    pub fn name(self) -> &'static str {
        match self {
            SearchOrder::Colex => "colex",
            SearchOrder::ColumnWeight => "column-weight",
        }
    }
}

/// One column of the witness set and its contribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub column: usize,
    /// Weight (or integer permanent) of the component at `column`.
    pub value: u128,
    /// Punctured columns are listed but excluded from the bound.
    pub punctured: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub bound: Distance,
    pub theorem: Theorem,
    pub witness_s: Option<IndexSet>,
    pub witness_t: IndexSet,
    pub terms: Vec<Term>,
    pub puncture: IndexSet,
    pub subsets_examined: u64,
    /// Number of column sets in the search space.
    pub subsets_total: u128,
    pub exhaustive: bool,
    pub order: SearchOrder,
}

impl BoundReport {
    /// Sum of the unpunctured terms; equals the bound when it is finite.
    pub fn terms_sum(&self) -> u128 {
        self.terms
            .iter()
            .filter(|t| !t.punctured)
            .map(|t| t.value)
            .sum()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of column sets to visit; `None` is unlimited.
    pub budget: Option<u64>,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

/// Input accepted by [`bound_best`].
#[derive(Debug, Clone, Copy)]
pub enum BoundInput<'a> {
    Weight(&'a WeightMatrix),
    Poly(&'a PolyMatrix),
}

pub fn bound_poly(h: &PolyMatrix, p: &IndexSet, opts: &SearchOptions) -> Result<BoundReport> {
    let problem = Problem::poly(h, p)?;
    problem.run(Theorem::Poly, 0, opts)
}

pub fn bound_weight(a: &WeightMatrix, p: &IndexSet, opts: &SearchOptions) -> Result<BoundReport> {
    let problem = Problem::weight(a, p)?;
    problem.run(Theorem::Weight, 0, opts)
}

/// Searches all `(S, T)` with `|T| <= max_t`, `|S| = J + 1 - |T|`, and
/// `perm([h_{t,S}; H'_S]) = 0` for each `t` in `T`.
pub fn bound_poly_rowremoval(
    h: &PolyMatrix,
    p: &IndexSet,
    max_t: usize,
    opts: &SearchOptions,
) -> Result<BoundReport> {
    let problem = Problem::poly(h, p)?;
    problem.check_max_t(max_t)?;
    problem.run(Theorem::PolyRowRemoval, max_t, opts)
}

/// Searches all `(S, T)` with `|T| <= max_t`, `|S| = J + 1 - |T|`, and the
/// rows of `T` zero on `S`.
pub fn bound_weight_rowremoval(
    a: &WeightMatrix,
    p: &IndexSet,
    max_t: usize,
    opts: &SearchOptions,
) -> Result<BoundReport> {
    let problem = Problem::weight(a, p)?;
    problem.check_max_t(max_t)?;
    problem.run(Theorem::WeightRowRemoval, max_t, opts)
}

/// The smallest bound over every applicable variant. `max_t` defaults to
/// `J - 1`. For a polynomial matrix both the ring and the weight-matrix
/// searches run, each with the full budget; on equal bounds the ring
/// witness is kept.
pub fn bound_best(
    input: BoundInput<'_>,
    p: &IndexSet,
    max_t: Option<usize>,
    opts: &SearchOptions,
) -> Result<BoundReport> {
    match input {
        BoundInput::Weight(a) => {
            let max_t = max_t.unwrap_or(a.rows().saturating_sub(1));
            bound_weight_rowremoval(a, p, max_t, opts)
        }
        BoundInput::Poly(h) => {
            let max_t = max_t.unwrap_or(h.rows().saturating_sub(1));
            let ring = bound_poly_rowremoval(h, p, max_t, opts)?;
            let weight = bound_weight_rowremoval(&h.weight_matrix(), p, max_t, opts)?;
            let examined = ring.subsets_examined + weight.subsets_examined;
            let total = ring.subsets_total.saturating_add(weight.subsets_total);
            let exhaustive = ring.exhaustive && weight.exhaustive;
            let mut best = if weight.bound < ring.bound {
                weight
            } else {
                ring
            };
            best.subsets_examined = examined;
            best.subsets_total = total;
            best.exhaustive = exhaustive;
            Ok(best)
        }
    }
}

/// Rough running time of an exhaustive search, from timing a sample of
/// `J x J` permanents: `t_J (J + 1) C(L, J + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostEstimate {
    pub subsets: u128,
    pub permanents_per_subset: usize,
    pub seconds_per_permanent: f64,
    pub estimated_seconds: f64,
}

pub fn estimate_cost(input: BoundInput<'_>, samples: usize) -> Result<CostEstimate> {
    let (rows, cols) = match input {
        BoundInput::Weight(a) => (a.rows(), a.cols()),
        BoundInput::Poly(h) => (h.rows(), h.cols()),
    };
    let problem = match input {
        BoundInput::Weight(a) => Problem::weight(a, &IndexSet::empty())?,
        BoundInput::Poly(h) => Problem::poly(h, &IndexSet::empty())?,
    };
    let binom = Binomials::new(cols);
    let k = rows + 1;
    let subsets = binom.get(cols, k);
    if subsets == 0 {
        return Err(Error::NoSubset {
            needed: k,
            available: cols,
        });
    }
    // spread the samples evenly over the colex ranks
    let samples = samples.max(1);
    let start = Instant::now();
    let mut count = 0usize;
    for q in 0..samples as u128 {
        let rank = q * subsets / samples as u128;
        let s = colex_unrank(rank.min(subsets - 1), k, cols, &binom);
        let s_mask = to_mask(&s);
        for &i in &s {
            problem.component(problem.all_rows, s_mask & !(1 << i));
            count += 1;
        }
    }
    let per = start.elapsed().as_secs_f64() / count as f64;
    Ok(CostEstimate {
        subsets,
        permanents_per_subset: k,
        seconds_per_permanent: per,
        estimated_seconds: per * k as f64 * subsets as f64,
    })
}

enum Engine {
    Weight(Grid<u128>),
    Poly(Grid<PolyResidue>, usize),
}

struct Problem {
    engine: Engine,
    rows: usize,
    cols: usize,
    all_rows: u128,
    p_mask: u128,
    col_weights: Vec<u64>,
}

/// Result of evaluating one column set.
#[derive(Clone)]
struct Candidate {
    value: u128,
    /// Position in the visiting order; smaller wins ties.
    key: (usize, u128),
    s: Vec<usize>,
    t_mask: u128,
}

#[derive(Default)]
struct ChunkResult {
    best: Option<Candidate>,
    overflow: bool,
}

impl ChunkResult {
    fn merge(self, other: ChunkResult) -> ChunkResult {
        let best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(if (b.value, b.key) < (a.value, a.key) {
                b
            } else {
                a
            }),
            (a, b) => a.or(b),
        };
        ChunkResult {
            best,
            overflow: self.overflow || other.overflow,
        }
    }
}

enum Outcome {
    Skip,
    Overflow,
    Found(u128, u128),
}

impl Problem {
    fn weight(a: &WeightMatrix, p: &IndexSet) -> Result<Self> {
        p.check_bound(a.cols())?;
        Ok(Problem {
            engine: Engine::Weight(a.grid()?),
            rows: a.rows(),
            cols: a.cols(),
            all_rows: crate::permanent::full_mask(a.rows()),
            p_mask: to_mask(p.as_slice()),
            col_weights: a.column_sums(),
        })
    }

    fn poly(h: &PolyMatrix, p: &IndexSet) -> Result<Self> {
        p.check_bound(h.cols())?;
        Ok(Problem {
            engine: Engine::Poly(h.grid()?, h.modulus_degree()),
            rows: h.rows(),
            cols: h.cols(),
            all_rows: crate::permanent::full_mask(h.rows()),
            p_mask: to_mask(p.as_slice()),
            col_weights: h.weight_matrix().column_sums(),
        })
    }

    fn check_max_t(&self, max_t: usize) -> Result<()> {
        if self.rows > 0 && max_t > self.rows - 1 {
            return Err(Error::Domain(format!(
                "at most J - 1 = {} rows can be removed, got {max_t}",
                self.rows - 1
            )));
        }
        Ok(())
    }

    fn row_mask(&self, j: usize) -> u128 {
        match &self.engine {
            Engine::Weight(g) => g.row_mask(j),
            Engine::Poly(g, _) => g.row_mask(j),
        }
    }

    /// Rows with no nonzero entry in the columns of `s_mask`.
    fn zero_rows(&self, s_mask: u128) -> u128 {
        (0..self.rows)
            .filter(|&j| self.row_mask(j) & s_mask == 0)
            .fold(0u128, |m, j| m | 1 << j)
    }

    /// Weight of one codeword component: an integer permanent or the weight
    /// of a ring permanent. `None` on overflow.
    fn component(&self, rows: u128, cols: u128) -> Option<u128> {
        match &self.engine {
            Engine::Weight(g) => g.permanent(&CheckedU128, rows, cols).ok(),
            Engine::Poly(g, n) => {
                let Ok(v) = g.permanent(&Ring(*n), rows, cols);
                Some(v.weight() as u128)
            }
        }
    }

    fn ring_is_zero(&self, rows: u128, cols: u128) -> bool {
        match &self.engine {
            Engine::Poly(g, n) => {
                let Ok(v) = g.permanent(&Ring(*n), rows, cols);
                v.is_zero()
            }
            Engine::Weight(_) => unreachable!("stacking condition is only checked in the ring"),
        }
    }

    /// Sum of the unpunctured components for kept rows `rows`, or `Skip` once
    /// the partial sum exceeds `cutoff`.
    fn codeword_weight(&self, rows: u128, s: &[usize], s_mask: u128, cutoff: u128) -> Outcome {
        let mut sum: u128 = 0;
        for &i in s {
            if self.p_mask >> i & 1 == 1 {
                continue;
            }
            let Some(v) = self.component(rows, s_mask & !(1 << i)) else {
                return Outcome::Overflow;
            };
            let Some(next) = sum.checked_add(v) else {
                return Outcome::Overflow;
            };
            sum = next;
            if sum > cutoff {
                return Outcome::Skip;
            }
        }
        if sum == 0 {
            Outcome::Skip
        } else {
            Outcome::Found(sum, rows)
        }
    }

    /// Best codeword from column set `s` with exactly `tau` rows removed.
    /// Returns the weight and the removed-row mask.
    fn evaluate(&self, s: &[usize], tau: usize, cutoff: u128) -> Outcome {
        let s_mask = to_mask(s);
        let zero = self.zero_rows(s_mask);
        let z = zero.count_ones() as usize;
        // a zero row of H'_S makes every component vanish, so T contains
        // all zero rows; for weight matrices T is exactly those rows
        if z > tau {
            return Outcome::Skip;
        }
        let into_t = |rows: u128| self.all_rows & !rows;
        match self.engine {
            Engine::Weight(_) => {
                if z != tau {
                    return Outcome::Skip;
                }
                match self.codeword_weight(self.all_rows & !zero, s, s_mask, cutoff) {
                    Outcome::Found(v, rows) => Outcome::Found(v, into_t(rows)),
                    other => other,
                }
            }
            Engine::Poly(..) => {
                let others: Vec<usize> = bits(self.all_rows & !zero).collect();
                let mut best: Option<(u128, u128)> = None;
                let mut overflow = false;
                for extra in combinations(others.len(), tau - z) {
                    let t_mask = extra.iter().fold(zero, |m, &e| m | 1 << others[e]);
                    let kept = self.all_rows & !t_mask;
                    let admissible = extra
                        .iter()
                        .all(|&e| self.ring_is_zero(kept | 1 << others[e], s_mask));
                    if !admissible {
                        continue;
                    }
                    let bar = best.map_or(cutoff, |(v, _)| v.min(cutoff));
                    match self.codeword_weight(kept, s, s_mask, bar) {
                        Outcome::Found(v, _) if best.is_none_or(|(b, _)| v < b) => {
                            best = Some((v, t_mask))
                        }
                        Outcome::Overflow => overflow = true,
                        _ => {}
                    }
                }
                match best {
                    Some((v, t)) => Outcome::Found(v, t),
                    None if overflow => Outcome::Overflow,
                    None => Outcome::Skip,
                }
            }
        }
    }

    fn run(&self, theorem: Theorem, max_t: usize, opts: &SearchOptions) -> Result<BoundReport> {
        match opts.workers {
            Some(w) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(w.max(1))
                    .build()
                    .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
                pool.install(|| self.search(theorem, max_t, opts.budget))
            }
            None => self.search(theorem, max_t, opts.budget),
        }
    }

    fn search(&self, theorem: Theorem, max_t: usize, budget: Option<u64>) -> Result<BoundReport> {
        let binom = Binomials::new(self.cols);
        // group g removes g rows and uses column sets of size J + 1 - g
        let sizes: Vec<usize> = (0..=max_t).map(|tau| self.rows + 1 - tau).collect();
        let total: u128 = sizes
            .iter()
            .fold(0u128, |acc, &k| acc.saturating_add(binom.get(self.cols, k)));
        if total == 0 {
            let needed = *sizes.last().expect("at least one group");
            return Err(Error::NoSubset {
                needed,
                available: self.cols,
            });
        }

        let best_value = AtomicU64::new(u64::MAX);
        let visit = |acc: &mut ChunkResult, tau: usize, s: &[usize], key: (usize, u128)| {
            let local = acc.best.as_ref().map_or(u128::MAX, |c| c.value);
            // u64::MAX marks "nothing found yet" (or a clipped huge value)
            let cutoff = match best_value.load(AtomicOrdering::Relaxed) {
                u64::MAX => local,
                global => local.min(u128::from(global)),
            };
            match self.evaluate(s, tau, cutoff) {
                Outcome::Found(value, t_mask) => {
                    let better = acc
                        .best
                        .as_ref()
                        .is_none_or(|c| (value, key) < (c.value, c.key));
                    if better {
                        acc.best = Some(Candidate {
                            value,
                            key,
                            s: s.to_vec(),
                            t_mask,
                        });
                        let clipped = u64::try_from(value).unwrap_or(u64::MAX);
                        best_value.fetch_min(clipped, AtomicOrdering::Relaxed);
                    }
                }
                Outcome::Overflow => acc.overflow = true,
                Outcome::Skip => {}
            }
        };

        let mut exhaustive = budget.is_none_or(|b| u128::from(b) >= total);
        let (result, examined, order) = if exhaustive {
            let chunks = colex_chunks(&sizes, self.cols, &binom, rayon::current_num_threads());
            let result = chunks
                .into_par_iter()
                .map(|(g, start, len)| {
                    let k = sizes[g];
                    let mut acc = ChunkResult::default();
                    let mut s = colex_unrank(start, k, self.cols, &binom);
                    for r in start..start + len {
                        visit(&mut acc, g, &s, (g, r));
                        colex_next(&mut s, self.cols);
                    }
                    acc
                })
                .reduce(ChunkResult::default, ChunkResult::merge);
            (
                result,
                u64::try_from(total).unwrap_or(u64::MAX),
                SearchOrder::Colex,
            )
        } else {
            let budget = budget.expect("budgeted search has a budget") as usize;
            let (picked, complete) = self.pick_by_weight(&sizes, budget);
            exhaustive = complete;
            let examined = picked.len() as u64;
            let result = picked
                .par_iter()
                .enumerate()
                .fold(ChunkResult::default, |mut acc, (pos, (g, s))| {
                    visit(&mut acc, *g, s, (0, pos as u128));
                    acc
                })
                .reduce(ChunkResult::default, ChunkResult::merge);
            (result, examined, SearchOrder::ColumnWeight)
        };

        if result.best.is_none() && result.overflow {
            return Err(Error::Overflow(
                "every candidate codeword weight exceeded 128 bits".into(),
            ));
        }
        let puncture = IndexSet::from_sorted(bits(self.p_mask).collect());
        let mut report = BoundReport {
            bound: Distance::Infinite,
            theorem,
            witness_s: None,
            witness_t: IndexSet::empty(),
            terms: Vec::new(),
            puncture,
            subsets_examined: examined,
            subsets_total: total,
            exhaustive,
            order,
        };
        if let Some(c) = result.best {
            let t_mask = c.t_mask;
            let kept = self.all_rows & !t_mask;
            let s_mask = to_mask(&c.s);
            report.terms =
                c.s.iter()
                    .map(|&i| Term {
                        column: i,
                        value: self
                            .component(kept, s_mask & !(1 << i))
                            .unwrap_or(u128::MAX),
                        punctured: self.p_mask >> i & 1 == 1,
                    })
                    .collect();
            report.bound = Distance::Finite(c.value);
            report.theorem = theorem.with_rows_removed(t_mask != 0);
            report.witness_t = IndexSet::from_sorted(bits(t_mask).collect());
            report.witness_s = Some(IndexSet::from_sorted(c.s));
        }
        Ok(report)
    }
}

impl Problem {
    /// Whether `s` can yield a nonzero codeword with `tau` rows removed,
    /// judged from the zero rows of the submatrix alone.
    fn screen(&self, s: &[usize], tau: usize) -> bool {
        let z = self.zero_rows(to_mask(s)).count_ones() as usize;
        match self.engine {
            Engine::Weight(_) => z == tau,
            Engine::Poly(..) => z <= tau,
        }
    }

    /// Up to `budget` column sets for a budgeted search. Each group (number
    /// of removed rows) is visited in ascending order of summed column
    /// weight, and the groups take turns. Sets failing [`Self::screen`] are
    /// skipped without counting against the budget; a group gives up its
    /// turn after `SCREEN_PER_TURN` such skips.
    /// Also reports whether every stream ran dry, i.e. nothing was left out.
    fn pick_by_weight(&self, sizes: &[usize], budget: usize) -> (Vec<(usize, Vec<usize>)>, bool) {
        const SCREEN_PER_TURN: usize = 256;
        let mut streams: Vec<Option<WeightOrdered>> = sizes
            .iter()
            .map(|&k| Some(WeightOrdered::new(&self.col_weights, &[k])))
            .collect();
        let mut picked = Vec::new();
        while picked.len() < budget && streams.iter().any(Option::is_some) {
            for (g, slot) in streams.iter_mut().enumerate() {
                let Some(stream) = slot else { continue };
                let mut skipped = 0;
                loop {
                    match stream.next() {
                        None => {
                            *slot = None;
                            break;
                        }
                        Some((_, s)) if self.screen(&s, g) => {
                            picked.push((g, s));
                            break;
                        }
                        Some(_) => {
                            skipped += 1;
                            if skipped == SCREEN_PER_TURN {
                                break;
                            }
                        }
                    }
                }
                if picked.len() == budget {
                    break;
                }
            }
        }
        let complete = streams.iter().all(|s| s.is_none());
        (picked, complete)
    }
}

/// Splits every group's colex range into contiguous `(group, start, len)`
/// pieces, enough to keep `workers` threads busy.
fn colex_chunks(
    sizes: &[usize],
    n: usize,
    binom: &Binomials,
    workers: usize,
) -> Vec<(usize, u128, u128)> {
    let mut chunks = Vec::new();
    for (g, &k) in sizes.iter().enumerate() {
        let count = binom.get(n, k);
        if count == 0 {
            continue;
        }
        let pieces = (workers as u128 * 16).clamp(1, count);
        let step = count.div_ceil(pieces);
        let mut start = 0;
        while start < count {
            let len = step.min(count - start);
            chunks.push((g, start, len));
            start += len;
        }
    }
    chunks
}
