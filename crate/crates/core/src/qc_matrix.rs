//! Polynomial parity-check matrices, weight matrices, index sets, and
//! permanents over the integers and over `F2[x]/<x^N - 1>`.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::permanent::{CheckedU128, Grid, Ring, Unbounded, MAX_DIM};
use crate::poly_ring::{annihilator_of_ideal, PolyResidue};

/// A strictly increasing set of indices into `[0, bound)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    /// Sorts `indices`; duplicates and members `>= bound` are errors.
    pub fn new(mut indices: Vec<usize>, bound: usize) -> Result<Self> {
        indices.sort_unstable();
        if let Some(&last) = indices.last() {
            if last >= bound {
                return Err(Error::OutOfRange { index: last, bound });
            }
        }
        if let Some(w) = indices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Domain(format!("duplicate index {}", w[0])));
        }
        Ok(IndexSet(indices))
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{0, 1, ..., n - 1}`
    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    /// Caller guarantees strictly increasing input.
    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// `S \ i`
    pub fn drop(&self, i: usize) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| x != i).collect())
    }

    /// `[n] \ S`
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|&i| !self.contains(i)).collect())
    }

    pub fn check_bound(&self, bound: usize) -> Result<()> {
        match self.max() {
            Some(m) if m >= bound => Err(Error::OutOfRange { index: m, bound }),
            _ => Ok(()),
        }
    }

    /// Parses indices separated by commas and/or whitespace; `"-"` or an
    /// empty string is the empty set.
    pub fn parse(text: &str, bound: usize) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(Self::empty());
        }
        let indices = text
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(1, format!("invalid index {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(indices, bound)
    }
}

impl fmt::Display for IndexSet {
    /// Comma-separated, `-` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// A `J x L` matrix of nonnegative integers: the weight matrix of a
/// polynomial parity-check matrix, or equivalently a protomatrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl WeightMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(WeightMatrix { rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[u32]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (j, r) in rows.iter().enumerate() {
            if r.as_ref().len() != cols {
                return Err(Error::Shape(format!("row {j} has the wrong length")));
            }
            data.extend_from_slice(r.as_ref());
        }
        Self::new(rows.len(), cols, data)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        WeightMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, j: usize, i: usize) -> u32 {
        self.data[j * self.cols + i]
    }

    pub fn row(&self, j: usize) -> &[u32] {
        &self.data[j * self.cols..(j + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Every entry is 0 or 1.
    pub fn is_type1(&self) -> bool {
        self.data.iter().all(|&v| v <= 1)
    }

    pub fn column_sums(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|i| (0..self.rows).map(|j| u64::from(self.get(j, i))).sum())
            .collect()
    }

    pub fn select_columns(&self, s: &IndexSet) -> Result<Self> {
        s.check_bound(self.cols)?;
        let mut data = Vec::with_capacity(self.rows * s.len());
        for j in 0..self.rows {
            data.extend(s.iter().map(|i| self.get(j, i)));
        }
        Self::new(self.rows, s.len(), data)
    }

    pub fn select_rows(&self, t: &IndexSet) -> Result<Self> {
        t.check_bound(self.rows)?;
        let mut data = Vec::with_capacity(t.len() * self.cols);
        for j in t.iter() {
            data.extend_from_slice(self.row(j));
        }
        Self::new(t.len(), self.cols, data)
    }

    pub(crate) fn grid(&self) -> Result<Grid<u128>> {
        if self.rows > MAX_DIM || self.cols > MAX_DIM {
            return Err(Error::Capacity(format!(
                "permanent expansion supports at most {MAX_DIM} rows and columns"
            )));
        }
        Ok(Grid::new(
            self.rows,
            self.cols,
            self.data.iter().map(|&v| u128::from(v)).collect(),
            |&v| v != 0,
        ))
    }

    /// Parses `"J L"` followed by `J` rows of `L` integers.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header \"J L\""))?;
        let dims = parse_usizes(header, hl)?;
        let [rows, cols] = dims[..] else {
            return Err(Error::parse(hl, "header must be \"J L\""));
        };
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hl + j + 1, format!("missing row {j}")))?;
            let vals = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<u32>()
                        .map_err(|_| Error::parse(ln, format!("invalid entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != cols {
                return Err(Error::parse(
                    ln,
                    format!("expected {cols} entries, found {}", vals.len()),
                ));
            }
            data.extend(vals);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "unexpected trailing content"));
        }
        Self::new(rows, cols, data)
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for j in 0..self.rows {
            let line: Vec<String> = self.row(j).iter().map(|v| v.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// A `J x L` matrix over `F2[x]/<x^N - 1>`: the polynomial parity-check
/// matrix `H(x)` of a quasi-cyclic code.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    n: usize,
    entries: Vec<PolyResidue>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, n: usize, entries: Vec<PolyResidue>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.modulus_degree() != n) {
            return Err(Error::ModulusMismatch {
                left: n,
                right: bad.modulus_degree(),
            });
        }
        Ok(PolyMatrix {
            rows,
            cols,
            n,
            entries,
        })
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<PolyResidue>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("rows have differing lengths".into()));
        }
        Self::new(nrows, cols, n, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from per-entry exponent lists.
    pub fn from_exponents<R: AsRef<[E]>, E: AsRef<[usize]>>(n: usize, rows: &[R]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.as_ref()
                    .iter()
                    .map(|e| PolyResidue::from_exponents(n, e.as_ref()))
                    .collect()
            })
            .collect();
        Self::from_rows(n, rows)
    }

    pub fn zeros(rows: usize, cols: usize, n: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            n,
            entries: vec![PolyResidue::zero(n); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus_degree(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, i: usize) -> &PolyResidue {
        &self.entries[j * self.cols + i]
    }

    pub fn row(&self, j: usize) -> &[PolyResidue] {
        &self.entries[j * self.cols..(j + 1) * self.cols]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entrywise weights.
    pub fn weight_matrix(&self) -> WeightMatrix {
        WeightMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.entries.iter().map(|e| e.weight() as u32).collect(),
        }
    }

    pub fn select_columns(&self, s: &IndexSet) -> Result<Self> {
        s.check_bound(self.cols)?;
        let mut entries = Vec::with_capacity(self.rows * s.len());
        for j in 0..self.rows {
            entries.extend(s.iter().map(|i| self.get(j, i).clone()));
        }
        Self::new(self.rows, s.len(), self.n, entries)
    }

    pub fn select_rows(&self, t: &IndexSet) -> Result<Self> {
        t.check_bound(self.rows)?;
        let mut entries = Vec::with_capacity(t.len() * self.cols);
        for j in t.iter() {
            entries.extend_from_slice(self.row(j));
        }
        Self::new(t.len(), self.cols, self.n, entries)
    }

    pub(crate) fn grid(&self) -> Result<Grid<PolyResidue>> {
        if self.rows > MAX_DIM || self.cols > MAX_DIM {
            return Err(Error::Capacity(format!(
                "permanent expansion supports at most {MAX_DIM} rows and columns"
            )));
        }
        Ok(Grid::new(
            self.rows,
            self.cols,
            self.entries.clone(),
            |e: &PolyResidue| !e.is_zero(),
        ))
    }

    /// Parses `"J L N"` followed by `J` rows of `L` exponent lists.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header \"J L N\""))?;
        let dims = parse_usizes(header, hl)?;
        let [rows, cols, n] = dims[..] else {
            return Err(Error::parse(hl, "header must be \"J L N\""));
        };
        if n == 0 {
            return Err(Error::parse(hl, "N must be positive"));
        }
        let mut entries = Vec::with_capacity(rows * cols);
        for j in 0..rows {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hl + j + 1, format!("missing row {j}")))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != cols {
                return Err(Error::parse(
                    ln,
                    format!("expected {cols} entries, found {}", toks.len()),
                ));
            }
            for t in toks {
                entries.push(PolyResidue::parse(t, n).map_err(|m| Error::parse(ln, m))?);
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "unexpected trailing content"));
        }
        Self::new(rows, cols, n, entries)
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.n)?;
        for j in 0..self.rows {
            let line: Vec<String> = self.row(j).iter().map(|e| e.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Non-empty, non-comment lines with 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub(crate) fn parse_usizes(line: &str, ln: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(ln, format!("invalid integer {t:?}")))
        })
        .collect()
}

fn require_square(rows: usize, cols: usize) -> Result<()> {
    if rows != cols {
        return Err(Error::Shape(format!(
            "permanent needs a square matrix, got {rows}x{cols}"
        )));
    }
    Ok(())
}

/// Exact integer permanent.
pub fn perm_int(b: &WeightMatrix) -> Result<BigUint> {
    require_square(b.rows, b.cols)?;
    let grid = b.grid()?;
    if let Ok(v) = grid.permanent(&CheckedU128, grid.all_rows(), grid.all_cols()) {
        return Ok(BigUint::from(v));
    }
    let big = Grid::new(
        b.rows,
        b.cols,
        b.data.iter().map(|&v| BigUint::from(v)).collect(),
        |v| *v != BigUint::default(),
    );
    let Ok(v) = big.permanent(&Unbounded, big.all_rows(), big.all_cols());
    Ok(v)
}

/// Integer permanent as `u128`, or an overflow error.
pub fn perm_int_u128(b: &WeightMatrix) -> Result<u128> {
    require_square(b.rows, b.cols)?;
    let grid = b.grid()?;
    grid.permanent(&CheckedU128, grid.all_rows(), grid.all_cols())
        .map_err(|()| Error::Overflow("permanent exceeds u128".into()))
}

/// Permanent over `F2[x]/<x^N - 1>`, equal to the determinant there.
pub fn perm_ring(b: &PolyMatrix) -> Result<PolyResidue> {
    require_square(b.rows, b.cols)?;
    let grid = b.grid()?;
    let Ok(v) = grid.permanent(&Ring(b.n), grid.all_rows(), grid.all_cols());
    Ok(v)
}

/// Permanent of the square submatrix of `grid` on the given rows and columns.
pub(crate) fn ring_minor(
    grid: &Grid<PolyResidue>,
    n: usize,
    rows: &[usize],
    cols: &[usize],
) -> PolyResidue {
    let Ok(v) = grid.permanent(&Ring(n), to_mask(rows), to_mask(cols));
    v
}

pub(crate) fn to_mask(idx: &[usize]) -> u128 {
    idx.iter().fold(0u128, |m, &i| m | 1 << i)
}

/// A square matrix over the ring is invertible iff its determinant is a unit.
pub fn is_invertible(b: &PolyMatrix) -> Result<bool> {
    Ok(perm_ring(b)?.classify() == crate::poly_ring::Classification::Unit)
}

/// Finds ring coefficients `r`, not all zero, with `sum_j r_j * row_j = 0`,
/// or `None` when the rows are independent.
///
/// Let `I_t` be the ideal of `t x t` minors and `s` the smallest size whose
/// annihilator is nonzero, generated by `z`. Some `(s-1)`-minor `m` on rows
/// `R` and columns `C` has `z m != 0`. Adding any other row `k` gives rows
/// `R' = R + {k}`; the coefficients `z * perm(B[R' - {q}, C])` for `q` in `R'`
/// combine the rows to zero, since each column sum is `z` times either an
/// `s`-minor or a matrix with a repeated column.
pub fn row_dependence(b: &PolyMatrix) -> Result<Option<Vec<PolyResidue>>> {
    let (rows, cols, n) = (b.rows, b.cols, b.n);
    let grid = b.grid()?;
    let mut size = 1;
    let z = loop {
        if size > rows {
            return Ok(None);
        }
        let minors = all_minors(&grid, n, rows, cols, size);
        let ann = annihilator_of_ideal(&minors, n);
        if !ann.is_zero() {
            break ann;
        }
        size += 1;
    };

    let t = size - 1;
    for r_set in combinations(rows, t) {
        for c_set in combinations(cols, t) {
            let m = ring_minor(&grid, n, &r_set, &c_set);
            if z.mul_unchecked(&m).is_zero() {
                continue;
            }
            let extra = (0..rows).find(|k| !r_set.contains(k)).expect("t < rows");
            let mut r_prime = r_set.clone();
            r_prime.push(extra);
            r_prime.sort_unstable();
            let mut coeffs = vec![PolyResidue::zero(n); rows];
            for &q in &r_prime {
                let others: Vec<usize> = r_prime.iter().copied().filter(|&x| x != q).collect();
                coeffs[q] = z.mul_unchecked(&ring_minor(&grid, n, &others, &c_set));
            }
            return Ok(Some(coeffs));
        }
    }
    unreachable!("annihilator of a smaller minor ideal is zero, so some minor survives z")
}

fn all_minors(
    grid: &Grid<PolyResidue>,
    n: usize,
    rows: usize,
    cols: usize,
    size: usize,
) -> Vec<PolyResidue> {
    if size > cols {
        return Vec::new();
    }
    let col_sets = combinations(cols, size);
    combinations(rows, size)
        .iter()
        .flat_map(|r| col_sets.iter().map(move |c| ring_minor(grid, n, r, c)))
        .collect()
}

/// All `k`-subsets of `[n]`, in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}
