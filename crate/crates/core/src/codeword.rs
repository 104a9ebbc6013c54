//! Explicit codewords of QC codes built from permanents of parity-check
//! submatrices.
//!
//! For a column set `S` of size `J + 1 - |T|` and removed rows `T`, the
//! component at `i` in `S` is `perm(H'_{S \ i}(x))`, where `H'` drops the rows
//! in `T`; components outside `S` are zero and punctured components carry the
//! marker [`Subblock::Punctured`].

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, BinaryMatrix};
use crate::poly_ring::PolyResidue;
use crate::qc_matrix::{content_lines, ring_minor, IndexSet, PolyMatrix};

/// One length-`N` subblock of a QC codeword.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Subblock {
    Poly(PolyResidue),
    /// Not transmitted; contributes zero weight.
    Punctured,
}

impl Subblock {
    pub fn weight(&self) -> usize {
        match self {
            Subblock::Poly(p) => p.weight(),
            Subblock::Punctured => 0,
        }
    }

    pub fn as_poly(&self) -> Option<&PolyResidue> {
        match self {
            Subblock::Poly(p) => Some(p),
            Subblock::Punctured => None,
        }
    }
}

/// A polynomial codeword `c(x) = (c_0(x), ..., c_{L-1}(x))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QcCodeword {
    n: usize,
    subblocks: Vec<Subblock>,
}

/// Outcome of checking `H(x) c(x)^T = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Codeword,
    /// The first row whose inner product with the vector is nonzero.
    Violated {
        row: usize,
    },
}

impl Verification {
    pub fn is_codeword(self) -> bool {
        self == Verification::Codeword
    }
}

impl QcCodeword {
    pub fn new(n: usize, subblocks: Vec<Subblock>) -> Result<Self> {
        for b in &subblocks {
            if let Subblock::Poly(p) = b {
                if p.modulus_degree() != n {
                    return Err(Error::ModulusMismatch {
                        left: n,
                        right: p.modulus_degree(),
                    });
                }
            }
        }
        Ok(QcCodeword { n, subblocks })
    }

    pub fn from_polys(n: usize, polys: Vec<PolyResidue>) -> Result<Self> {
        Self::new(n, polys.into_iter().map(Subblock::Poly).collect())
    }

    pub fn zero(n: usize, len: usize) -> Self {
        QcCodeword {
            n,
            subblocks: vec![Subblock::Poly(PolyResidue::zero(n)); len],
        }
    }

    pub fn len(&self) -> usize {
        self.subblocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subblocks.is_empty()
    }

    pub fn modulus_degree(&self) -> usize {
        self.n
    }

    pub fn subblocks(&self) -> &[Subblock] {
        &self.subblocks
    }

    pub fn get(&self, i: usize) -> &Subblock {
        &self.subblocks[i]
    }

    /// Hamming weight, counting punctured subblocks as zero.
    pub fn hamming_weight(&self) -> usize {
        self.subblocks.iter().map(Subblock::weight).sum()
    }

    /// True when every subblock is zero or punctured.
    pub fn is_all_zero(&self) -> bool {
        self.subblocks.iter().all(|b| b.weight() == 0)
    }

    /// Replaces the subblocks in `p` with the puncture marker.
    pub fn puncture(&self, p: &IndexSet) -> Result<Self> {
        p.check_bound(self.len())?;
        let mut out = self.clone();
        for i in p.iter() {
            out.subblocks[i] = Subblock::Punctured;
        }
        Ok(out)
    }

    /// Expands to a packed binary vector of length `L N`, punctured
    /// subblocks as zeros.
    pub fn to_binary(&self) -> Vec<u64> {
        let mut v = vec![0u64; gf2::words_for(self.len() * self.n)];
        for (i, b) in self.subblocks.iter().enumerate() {
            if let Subblock::Poly(p) = b {
                for e in p.exponents() {
                    gf2::flip_bit(&mut v, i * self.n + e);
                }
            }
        }
        v
    }

    /// Parses one subblock per line: an exponent list, `-` for zero, or
    /// `phi` for a punctured subblock.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut subblocks = Vec::new();
        for (ln, line) in content_lines(text) {
            if line == "phi" {
                subblocks.push(Subblock::Punctured);
            } else {
                let p = PolyResidue::parse(line, n).map_err(|m| Error::parse(ln, m))?;
                subblocks.push(Subblock::Poly(p));
            }
        }
        Self::new(n, subblocks)
    }
}

impl fmt::Display for QcCodeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.subblocks {
            match b {
                Subblock::Poly(p) => writeln!(f, "{p}")?,
                Subblock::Punctured => writeln!(f, "phi")?,
            }
        }
        Ok(())
    }
}

/// The codeword with `c_i = perm(H_{S \ i})` for `i` in `S`, zero elsewhere.
pub fn build_codeword(h: &PolyMatrix, s: &IndexSet) -> Result<QcCodeword> {
    build_rowremoved_codeword(h, s, &IndexSet::empty(), &IndexSet::empty())
}

/// As [`build_codeword`], with the subblocks in `p` punctured.
pub fn build_punctured_codeword(h: &PolyMatrix, s: &IndexSet, p: &IndexSet) -> Result<QcCodeword> {
    build_rowremoved_codeword(h, s, &IndexSet::empty(), p)
}

/// Codeword built after removing the rows in `t`. Requires `|S| = J + 1 - |T|`
/// and, for every `t` in `T`, `perm([h_{t,S}; H'_S]) = 0`; the condition is
/// checked.
pub fn build_rowremoved_codeword(
    h: &PolyMatrix,
    s: &IndexSet,
    t: &IndexSet,
    p: &IndexSet,
) -> Result<QcCodeword> {
    let (rows, cols, n) = (h.rows(), h.cols(), h.modulus_degree());
    s.check_bound(cols)?;
    t.check_bound(rows)?;
    p.check_bound(cols)?;
    if t.len() > rows {
        return Err(Error::Domain("cannot remove more rows than exist".into()));
    }
    let expected = rows + 1 - t.len();
    if s.len() != expected {
        return Err(Error::Arity {
            expected,
            actual: s.len(),
        });
    }

    let hs = h.select_columns(s)?;
    let grid = hs.grid()?;
    let kept: Vec<usize> = t.complement(rows).iter().collect();
    let all_cols: Vec<usize> = (0..s.len()).collect();

    for row in t.iter() {
        let mut stacked = kept.clone();
        stacked.push(row);
        stacked.sort_unstable();
        if !ring_minor(&grid, n, &stacked, &all_cols).is_zero() {
            return Err(Error::RowRemovalCondition { row });
        }
    }

    let mut subblocks = vec![Subblock::Poly(PolyResidue::zero(n)); cols];
    for (k, i) in s.iter().enumerate() {
        if p.contains(i) {
            continue;
        }
        let others: Vec<usize> = all_cols.iter().copied().filter(|&c| c != k).collect();
        subblocks[i] = Subblock::Poly(ring_minor(&grid, n, &kept, &others));
    }
    for i in p.iter() {
        subblocks[i] = Subblock::Punctured;
    }
    QcCodeword::new(n, subblocks)
}

/// Checks `H(x) c(x)^T = 0`, treating punctured subblocks as zero.
pub fn verify(h: &PolyMatrix, c: &QcCodeword) -> Result<Verification> {
    if c.len() != h.cols() {
        return Err(Error::Shape(format!(
            "codeword has {} subblocks, matrix has {} columns",
            c.len(),
            h.cols()
        )));
    }
    if c.modulus_degree() != h.modulus_degree() {
        return Err(Error::ModulusMismatch {
            left: h.modulus_degree(),
            right: c.modulus_degree(),
        });
    }
    let n = h.modulus_degree();
    for j in 0..h.rows() {
        let mut acc = PolyResidue::zero(n);
        for (i, b) in c.subblocks().iter().enumerate() {
            if let Subblock::Poly(p) = b {
                h.get(j, i).mul_add_into(p, &mut acc);
            }
        }
        if !acc.is_zero() {
            return Ok(Verification::Violated { row: j });
        }
    }
    Ok(Verification::Codeword)
}

/// Binary-domain check of the same condition through the circulant expansion.
pub fn verify_binary(h_bin: &BinaryMatrix, c: &QcCodeword) -> bool {
    h_bin.syndrome(&c.to_binary()).iter().all(|&w| w == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::to_binary;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn set(v: &[usize], bound: usize) -> IndexSet {
        IndexSet::new(v.to_vec(), bound).unwrap()
    }

    /// `[[0,0,0,f1],[x^a,x^b,x^c,f2],[x^a,x^b,x^d,f3]]` with N = 7,
    /// a,b,c,d = 1,2,3,4 and monomial f's.
    fn row_removal_example() -> PolyMatrix {
        PolyMatrix::from_exponents(
            7,
            &[
                [vec![], vec![], vec![], vec![0]],
                [vec![1], vec![2], vec![3], vec![5]],
                [vec![1], vec![2], vec![4], vec![6]],
            ],
        )
        .unwrap()
    }

    fn random_poly_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, n: usize) -> PolyMatrix {
        let entries = (0..rows * cols)
            .map(|_| {
                let w = rng.gen_range(0..=2);
                let exps: Vec<usize> = (0..w).map(|_| rng.gen_range(0..n)).collect();
                PolyResidue::from_exponents(n, &exps)
            })
            .collect();
        PolyMatrix::new(rows, cols, n, entries).unwrap()
    }

    #[test]
    fn zero_row_in_h_s_gives_all_zero_codeword() {
        let h = PolyMatrix::from_exponents(
            5,
            &[
                [vec![], vec![], vec![], vec![1]],
                [vec![0], vec![1], vec![2], vec![3]],
            ],
        )
        .unwrap();
        let c = build_codeword(&h, &set(&[0, 1, 2], 4)).unwrap();
        assert!(c.is_all_zero());
        assert!(verify(&h, &c).unwrap().is_codeword());
    }

    #[test]
    fn single_row_codeword_swaps_entries() {
        let h = PolyMatrix::from_exponents(9, &[[vec![3], vec![5]]]).unwrap();
        let c = build_codeword(&h, &set(&[0, 1], 2)).unwrap();
        assert_eq!(c.get(0).as_poly().unwrap(), h.get(0, 1));
        assert_eq!(c.get(1).as_poly().unwrap(), h.get(0, 0));
        assert_eq!(c.hamming_weight(), 2);
    }

    #[test]
    fn wrong_subset_size_is_an_arity_error() {
        let h = row_removal_example();
        assert_eq!(
            build_codeword(&h, &set(&[0, 1], 4)).unwrap_err(),
            Error::Arity {
                expected: 4,
                actual: 2
            }
        );
    }

    #[test]
    fn random_codewords_verify_in_both_domains() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let h = random_poly_matrix(&mut rng, 3, 5, 7);
            let hb = to_binary(&h);
            for drop in 0..5 {
                let s = IndexSet::full(5).drop(drop);
                let c = build_codeword(&h, &s).unwrap();
                assert!(verify(&h, &c).unwrap().is_codeword());
                assert!(verify_binary(&hb, &c));
            }
        }
    }

    #[test]
    fn perturbed_codeword_is_rejected_with_row() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut rejected = 0;
        for _ in 0..50 {
            let h = random_poly_matrix(&mut rng, 3, 5, 7);
            let c = build_codeword(&h, &IndexSet::full(4)).unwrap();
            let i = rng.gen_range(0..5);
            let e = rng.gen_range(0..7);
            let mut blocks = c.subblocks().to_vec();
            let bumped = blocks[i]
                .as_poly()
                .unwrap()
                .add(&PolyResidue::monomial(7, e))
                .unwrap();
            blocks[i] = Subblock::Poly(bumped);
            let bad = QcCodeword::new(7, blocks).unwrap();
            let column_is_zero = (0..3).all(|j| h.get(j, i).is_zero());
            match verify(&h, &bad).unwrap() {
                Verification::Codeword => assert!(column_is_zero),
                Verification::Violated { row } => {
                    assert!(!h.get(row, i).is_zero());
                    assert!(!verify_binary(&to_binary(&h), &bad));
                    rejected += 1;
                }
            }
        }
        assert!(rejected > 40);
    }

    #[test]
    fn puncturing_never_increases_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let h = random_poly_matrix(&mut rng, 2, 5, 6);
            let p = set(&[rng.gen_range(0..5)], 5);
            for drop in 0..4 {
                let s = IndexSet::full(4).drop(drop);
                let full = build_codeword(&h, &s).unwrap();
                let punct = build_punctured_codeword(&h, &s, &p).unwrap();
                assert!(punct.hamming_weight() <= full.hamming_weight());
                assert_eq!(punct, full.puncture(&p).unwrap());
            }
        }
    }

    #[test]
    fn empty_puncture_set_matches_plain_builder() {
        let h = row_removal_example();
        let s = set(&[0, 1, 2, 3], 4);
        assert_eq!(
            build_punctured_codeword(&h, &s, &IndexSet::empty()).unwrap(),
            build_codeword(&h, &s).unwrap()
        );
        assert_eq!(
            build_rowremoved_codeword(&h, &s, &IndexSet::empty(), &set(&[3], 4)).unwrap(),
            build_punctured_codeword(&h, &s, &set(&[3], 4)).unwrap()
        );
    }

    #[test]
    fn puncturing_outside_s_only_marks_p() {
        let h = row_removal_example();
        let s = set(&[0, 1, 2], 4);
        let t = set(&[0], 3);
        let base = build_rowremoved_codeword(&h, &s, &t, &IndexSet::empty()).unwrap();
        let punct = build_rowremoved_codeword(&h, &s, &t, &set(&[3], 4)).unwrap();
        assert_eq!(punct.get(3), &Subblock::Punctured);
        for i in 0..3 {
            assert_eq!(punct.get(i), base.get(i));
        }
    }

    #[test]
    fn row_removal_worked_example() {
        let h = row_removal_example();
        let c =
            build_rowremoved_codeword(&h, &set(&[0, 1, 2], 4), &set(&[0], 3), &IndexSet::empty())
                .unwrap();
        let expected = QcCodeword::from_polys(
            7,
            vec![
                PolyResidue::from_exponents(7, &[6, 5]),
                PolyResidue::from_exponents(7, &[5, 4]),
                PolyResidue::zero(7),
                PolyResidue::zero(7),
            ],
        )
        .unwrap();
        assert_eq!(c, expected);
        assert_eq!(c.hamming_weight(), 4);
        assert!(verify(&h, &c).unwrap().is_codeword());

        for t in [[0, 1], [0, 2]] {
            let c =
                build_rowremoved_codeword(&h, &set(&[0, 1], 4), &set(&t, 3), &IndexSet::empty())
                    .unwrap();
            let expected = QcCodeword::from_polys(
                7,
                vec![
                    PolyResidue::monomial(7, 2),
                    PolyResidue::monomial(7, 1),
                    PolyResidue::zero(7),
                    PolyResidue::zero(7),
                ],
            )
            .unwrap();
            assert_eq!(c, expected);
            assert!(verify(&h, &c).unwrap().is_codeword());
        }
    }

    #[test]
    fn row_removal_condition_violation_names_the_row() {
        let h = row_removal_example();
        // stacking row 1 onto rows {0, 2} over S = {0,2,3} gives x^5 + x^4
        let err =
            build_rowremoved_codeword(&h, &set(&[0, 2, 3], 4), &set(&[1], 3), &IndexSet::empty())
                .unwrap_err();
        assert_eq!(err, Error::RowRemovalCondition { row: 1 });
    }

    #[test]
    fn codeword_text_roundtrip() {
        let h = row_removal_example();
        let c = build_punctured_codeword(&h, &set(&[0, 1, 2, 3], 4), &set(&[3], 4)).unwrap();
        let text = c.to_string();
        assert!(text.ends_with("phi\n"));
        assert_eq!(QcCodeword::parse(&text, 7).unwrap(), c);
        assert!(matches!(
            QcCodeword::parse("0\n9\n", 7),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn verify_rejects_shape_mismatch() {
        let h = row_removal_example();
        assert!(matches!(
            verify(&h, &QcCodeword::zero(7, 3)),
            Err(Error::Shape(_))
        ));
        assert!(verify(&h, &QcCodeword::zero(7, 4)).unwrap().is_codeword());
        assert!(matches!(
            verify(&h, &QcCodeword::zero(5, 4)),
            Err(Error::ModulusMismatch { .. })
        ));
    }
}
