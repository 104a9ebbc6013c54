//! QC lifting of protomatrices, circulant expansion to binary matrices, and
//! the built-in example matrices.

use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2::BinaryMatrix;
use crate::poly_ring::PolyResidue;
use crate::qc_matrix::{content_lines, parse_usizes, IndexSet, PolyMatrix, WeightMatrix};

/// Circulant shifts for every cell of a `J x L` protomatrix. Cell `(j, i)`
/// holds the exponents whose monomials sum to `h_{j,i}(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftAssignment {
    rows: usize,
    cols: usize,
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl ShiftAssignment {
    /// An assignment with every cell empty.
    pub fn empty(rows: usize, cols: usize, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("expansion factor must be positive".into()));
        }
        Ok(ShiftAssignment {
            rows,
            cols,
            n,
            cells: vec![Vec::new(); rows * cols],
        })
    }

    /// Sets the exponents of cell `(j, i)`. Duplicates are kept so that
    /// [`expand`] can report them.
    pub fn set(&mut self, j: usize, i: usize, exponents: Vec<usize>) -> Result<()> {
        if j >= self.rows {
            return Err(Error::OutOfRange {
                index: j,
                bound: self.rows,
            });
        }
        if i >= self.cols {
            return Err(Error::OutOfRange {
                index: i,
                bound: self.cols,
            });
        }
        if let Some(&e) = exponents.iter().find(|&&e| e >= self.n) {
            return Err(Error::OutOfRange {
                index: e,
                bound: self.n,
            });
        }
        self.cells[j * self.cols + i] = exponents;
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn expansion_factor(&self) -> usize {
        self.n
    }

    pub fn cell(&self, j: usize, i: usize) -> &[usize] {
        &self.cells[j * self.cols + i]
    }

    /// All-zero shifts for a 0/1 protomatrix.
    pub fn identity(a: &WeightMatrix, n: usize) -> Result<Self> {
        let mut s = Self::empty(a.rows(), a.cols(), n)?;
        for j in 0..a.rows() {
            for i in 0..a.cols() {
                match a.get(j, i) {
                    0 => {}
                    1 => s.set(j, i, vec![0])?,
                    w => {
                        return Err(Error::Domain(format!(
                            "identity shifts need a 0/1 matrix, entry ({j},{i}) is {w}"
                        )))
                    }
                }
            }
        }
        Ok(s)
    }

    /// Reads the shifts back out of a polynomial matrix.
    pub fn from_poly_matrix(h: &PolyMatrix) -> Self {
        let mut s = Self::empty(h.rows(), h.cols(), h.modulus_degree())
            .expect("polynomial matrices have positive N");
        for j in 0..h.rows() {
            for i in 0..h.cols() {
                s.cells[j * h.cols() + i] = h.get(j, i).exponents().collect();
            }
        }
        s
    }

    /// Uniformly random distinct exponents in every cell, reproducible from
    /// `seed`.
    pub fn random(a: &WeightMatrix, n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = Self::empty(a.rows(), a.cols(), n)?;
        for j in 0..a.rows() {
            for i in 0..a.cols() {
                let w = a.get(j, i) as usize;
                if w > n {
                    return Err(Error::Domain(format!(
                        "entry ({j},{i}) = {w} needs more than N = {n} distinct shifts"
                    )));
                }
                let mut exps = sample(&mut rng, n, w).into_vec();
                exps.sort_unstable();
                s.set(j, i, exps)?;
            }
        }
        Ok(s)
    }

    /// Parses `"J L N"` followed by one `"j i e1,e2,..."` line per nonzero
    /// cell. Omitted cells are empty.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (hl, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing header \"J L N\""))?;
        let [rows, cols, n] = parse_usizes(header, hl)?[..] else {
            return Err(Error::parse(hl, "header must be \"J L N\""));
        };
        let mut s = Self::empty(rows, cols, n).map_err(|e| Error::parse(hl, e.to_string()))?;
        let mut seen = vec![false; rows * cols];
        for (ln, line) in lines {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let [j, i, exps] = toks[..] else {
                return Err(Error::parse(ln, "expected \"j i e1,e2,...\""));
            };
            let [j, i] = parse_usizes(&format!("{j} {i}"), ln)?[..] else {
                unreachable!()
            };
            let exps = parse_usizes(&exps.replace(',', " "), ln)?;
            if j < rows && i < cols && std::mem::replace(&mut seen[j * cols + i], true) {
                return Err(Error::parse(ln, format!("cell ({j},{i}) given twice")));
            }
            s.set(j, i, exps)
                .map_err(|e| Error::parse(ln, e.to_string()))?;
        }
        Ok(s)
    }
}

impl fmt::Display for ShiftAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows, self.cols, self.n)?;
        for j in 0..self.rows {
            for i in 0..self.cols {
                let cell = self.cell(j, i);
                if !cell.is_empty() {
                    let parts: Vec<String> = cell.iter().map(|e| e.to_string()).collect();
                    writeln!(f, "{j} {i} {}", parts.join(","))?;
                }
            }
        }
        Ok(())
    }
}

/// Lifts `a` to the polynomial matrix with `h_{j,i}(x) = sum of x^e` over
/// the exponents of cell `(j, i)`.
pub fn expand(a: &WeightMatrix, shifts: &ShiftAssignment) -> Result<PolyMatrix> {
    if shifts.rows() != a.rows() || shifts.cols() != a.cols() {
        return Err(Error::Conformance(format!(
            "shifts are {}x{}, protomatrix is {}x{}",
            shifts.rows(),
            shifts.cols(),
            a.rows(),
            a.cols()
        )));
    }
    let n = shifts.expansion_factor();
    let mut entries = Vec::with_capacity(a.rows() * a.cols());
    for j in 0..a.rows() {
        for i in 0..a.cols() {
            let cell = shifts.cell(j, i);
            if cell.len() != a.get(j, i) as usize {
                return Err(Error::Conformance(format!(
                    "cell ({j},{i}) has {} shifts, protomatrix entry is {}",
                    cell.len(),
                    a.get(j, i)
                )));
            }
            let mut sorted = cell.to_vec();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::Cancellation {
                    row: j,
                    col: i,
                    exponent: w[0],
                });
            }
            entries.push(PolyResidue::from_exponents(n, cell));
        }
    }
    PolyMatrix::new(a.rows(), a.cols(), n, entries)
}

/// Two successive liftings. The first produces a binary matrix that is read
/// as a 0/1 weight matrix and lifted again; the result is QC with subblock
/// size equal to the second factor. Returns the final matrix and the
/// intermediate weight matrix.
pub fn expand_two_step(
    a: &WeightMatrix,
    shifts1: &ShiftAssignment,
    shifts2: &ShiftAssignment,
) -> Result<(PolyMatrix, WeightMatrix)> {
    let first = expand(a, shifts1)?;
    let inter = weight_matrix_of_binary(&to_binary(&first));
    let h = expand(&inter, shifts2)?;
    Ok((h, inter))
}

/// Replaces each entry by its `N x N` circulant.
pub fn to_binary(h: &PolyMatrix) -> BinaryMatrix {
    let n = h.modulus_degree();
    let mut out = BinaryMatrix::zeros(h.rows() * n, h.cols() * n);
    for j in 0..h.rows() {
        for i in 0..h.cols() {
            let exps: Vec<usize> = h.get(j, i).exponents().collect();
            for r in 0..n {
                for &e in &exps {
                    out.set(j * n + r, i * n + (r + n - e) % n, true);
                }
            }
        }
    }
    out
}

/// Inverse of [`to_binary`]; fails unless every `N x N` block is circulant.
pub fn from_binary(m: &BinaryMatrix, n: usize) -> Result<PolyMatrix> {
    if n == 0 || !m.rows().is_multiple_of(n) || !m.cols().is_multiple_of(n) {
        return Err(Error::Shape(format!(
            "{}x{} matrix does not split into {n}x{n} blocks",
            m.rows(),
            m.cols()
        )));
    }
    let (rows, cols) = (m.rows() / n, m.cols() / n);
    let mut entries = Vec::with_capacity(rows * cols);
    for j in 0..rows {
        for i in 0..cols {
            let block = BinaryMatrix::from_rows(
                &(0..n)
                    .map(|r| {
                        (0..n)
                            .map(|c| m.get(j * n + r, i * n + c) as u8)
                            .collect::<Vec<u8>>()
                    })
                    .collect::<Vec<_>>(),
            )?;
            let p = PolyResidue::from_circulant(&block)
                .map_err(|_| Error::Shape(format!("block ({j},{i}) is not circulant")))?;
            entries.push(p);
        }
    }
    PolyMatrix::new(rows, cols, n, entries)
}

/// Reads a binary matrix as a 0/1 weight matrix, as the second step of a
/// two-step lifting does.
pub fn weight_matrix_of_binary(m: &BinaryMatrix) -> WeightMatrix {
    let data = (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .map(|(r, c)| u32::from(m.get(r, c)))
        .collect();
    WeightMatrix::new(m.rows(), m.cols(), data).expect("dimensions match")
}

/// Reads a puncture-set file: one line of column indices (commas or
/// whitespace), `-` for none. Comment lines are ignored.
pub fn parse_puncture_set(text: &str, cols: usize) -> Result<IndexSet> {
    let mut lines = content_lines(text);
    let Some((ln, line)) = lines.next() else {
        return Ok(IndexSet::empty());
    };
    if let Some((extra, _)) = lines.next() {
        return Err(Error::parse(extra, "puncture set must be a single line"));
    }
    IndexSet::parse(line, cols).map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(ln, message),
        other => Error::parse(ln, other.to_string()),
    })
}

/// Positions of the binary columns `{p N, ..., p N + N - 1}` for each
/// punctured subblock `p`.
pub fn expand_puncture_set(p: &IndexSet, n: usize) -> IndexSet {
    IndexSet::from_sorted(p.iter().flat_map(|i| i * n..(i + 1) * n).collect())
}

/// Built-in matrix: either a weight matrix or a polynomial matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FixtureMatrix {
    Weight(WeightMatrix),
    Poly(PolyMatrix),
}

impl FixtureMatrix {
    pub fn weight_matrix(&self) -> WeightMatrix {
        match self {
            FixtureMatrix::Weight(a) => a.clone(),
            FixtureMatrix::Poly(h) => h.weight_matrix(),
        }
    }
}

impl fmt::Display for FixtureMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FixtureMatrix::Weight(a) => a.fmt(f),
            FixtureMatrix::Poly(h) => h.fmt(f),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    /// File contents in the weight or polynomial matrix format.
    pub text: &'static str,
    pub poly: bool,
    pub puncture: &'static [usize],
}

impl Fixture {
    pub fn matrix(&self) -> FixtureMatrix {
        if self.poly {
            FixtureMatrix::Poly(PolyMatrix::parse(self.text).expect("fixture parses"))
        } else {
            FixtureMatrix::Weight(WeightMatrix::parse(self.text).expect("fixture parses"))
        }
    }

    pub fn puncture_set(&self) -> IndexSet {
        IndexSet::from_sorted(self.puncture.to_vec())
    }
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "ar4ja-1/2",
        description: "AR4JA protomatrix, rate 1/2",
        text: include_str!("../fixtures/ar4ja-1_2.txt"),
        poly: false,
        puncture: &[4],
    },
    Fixture {
        name: "ar4ja-2/3",
        description: "AR4JA protomatrix, rate 2/3",
        text: include_str!("../fixtures/ar4ja-2_3.txt"),
        poly: false,
        puncture: &[6],
    },
    Fixture {
        name: "ar4ja-4/5",
        description: "AR4JA protomatrix, rate 4/5",
        text: include_str!("../fixtures/ar4ja-4_5.txt"),
        poly: false,
        puncture: &[10],
    },
    Fixture {
        name: "ar4ja-1/2-expanded",
        description: "rate-1/2 AR4JA protomatrix after a first lifting by 4 (12x20, 0/1 entries)",
        text: include_str!("../fixtures/ar4ja-1_2-expanded.txt"),
        poly: false,
        puncture: &[16, 17, 18, 19],
    },
    Fixture {
        name: "double-edge",
        description: "small protomatrix with a double edge",
        text: include_str!("../fixtures/double-edge.txt"),
        poly: false,
        puncture: &[],
    },
    Fixture {
        name: "double-edge-lifted",
        description: "double-edge lifted by N = 3",
        text: include_str!("../fixtures/double-edge-lifted.txt"),
        poly: true,
        puncture: &[],
    },
    Fixture {
        name: "rowremoval-weight-a",
        description: "weight matrix where only row removal gives a finite bound",
        text: include_str!("../fixtures/rowremoval-weight-a.txt"),
        poly: false,
        puncture: &[],
    },
    Fixture {
        name: "rowremoval-weight-b",
        description: "weight matrix where row removal tightens the bound",
        text: include_str!("../fixtures/rowremoval-weight-b.txt"),
        poly: false,
        puncture: &[],
    },
    Fixture {
        name: "rowremoval-poly",
        description: "polynomial matrix with a zero top row, N = 7",
        text: include_str!("../fixtures/rowremoval-poly.txt"),
        poly: true,
        puncture: &[],
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codeword::{build_codeword, verify, verify_binary};
    use proptest::prelude::*;

    fn content(text: &str) -> Vec<String> {
        content_lines(text)
            .map(|(_, l)| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .collect()
    }

    #[test]
    fn fixtures_roundtrip_modulo_whitespace_and_comments() {
        for f in FIXTURES {
            let m = f.matrix();
            assert_eq!(content(&m.to_string()), content(f.text), "{}", f.name);
        }
    }

    #[test]
    fn fixture_shapes_and_puncturing() {
        let shape = |name: &str| {
            let a = fixture(name).unwrap().matrix().weight_matrix();
            (a.rows(), a.cols())
        };
        assert_eq!(shape("ar4ja-1/2"), (3, 5));
        assert_eq!(shape("ar4ja-2/3"), (3, 7));
        assert_eq!(shape("ar4ja-4/5"), (3, 11));
        assert_eq!(shape("ar4ja-1/2-expanded"), (12, 20));
        assert!(fixture("ar4ja-1/2-expanded")
            .unwrap()
            .matrix()
            .weight_matrix()
            .is_type1());
        assert_eq!(
            fixture("ar4ja-1/2").unwrap().puncture_set().as_slice(),
            &[4]
        );
        assert_eq!(
            fixture("ar4ja-1/2-expanded")
                .unwrap()
                .puncture_set()
                .as_slice(),
            &[16, 17, 18, 19]
        );
        let a = fixture("ar4ja-1/2").unwrap().matrix().weight_matrix();
        assert_eq!(
            a,
            WeightMatrix::from_rows(&[[0u32, 0, 1, 0, 2], [1, 1, 0, 1, 3], [1, 2, 0, 2, 1]])
                .unwrap()
        );
    }

    #[test]
    fn expanded_fixture_is_a_lifting_of_the_protomatrix() {
        let a = fixture("ar4ja-1/2").unwrap().matrix().weight_matrix();
        let e14 = fixture("ar4ja-1/2-expanded")
            .unwrap()
            .matrix()
            .weight_matrix();
        let bin = BinaryMatrix::from_rows(
            &(0..12)
                .map(|r| (0..20).map(|c| e14.get(r, c) as u8).collect::<Vec<u8>>())
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let h4 = from_binary(&bin, 4).unwrap();
        assert_eq!(h4.weight_matrix(), a);

        // the shifts read off the blocks reproduce the 12x20 matrix in a
        // two-step run with identity second-step shifts
        let shifts1 = ShiftAssignment::from_poly_matrix(&h4);
        let shifts2 = ShiftAssignment::identity(&e14, 1).unwrap();
        let (h, inter) = expand_two_step(&a, &shifts1, &shifts2).unwrap();
        assert_eq!(inter, e14);
        assert_eq!(h.weight_matrix(), e14);
    }

    #[test]
    fn two_step_to_the_2048_frame() {
        let a = fixture("ar4ja-1/2").unwrap().matrix().weight_matrix();
        let e14 = fixture("ar4ja-1/2-expanded")
            .unwrap()
            .matrix()
            .weight_matrix();
        let shifts1 =
            ShiftAssignment::from_poly_matrix(&from_binary(&weight_to_binary(&e14), 4).unwrap());
        let shifts2 = ShiftAssignment::random(&e14, 128, 1).unwrap();
        let (h, _) = expand_two_step(&a, &shifts1, &shifts2).unwrap();
        assert_eq!((h.rows(), h.cols(), h.modulus_degree()), (12, 20, 128));
        let transmitted = (h.cols() - 4) * 128;
        let info = (h.cols() - h.rows()) * 128;
        assert_eq!((transmitted, info), (2048, 1024));
    }

    fn weight_to_binary(a: &WeightMatrix) -> BinaryMatrix {
        BinaryMatrix::from_rows(
            &(0..a.rows())
                .map(|r| a.row(r).iter().map(|&v| v as u8).collect::<Vec<u8>>())
                .collect::<Vec<_>>(),
        )
        .unwrap()
    }

    #[test]
    fn factor_one_first_step_is_single_step() {
        let a = WeightMatrix::from_rows(&[[1u32, 1, 0], [0, 1, 1]]).unwrap();
        let s1 = ShiftAssignment::identity(&a, 1).unwrap();
        let s2 = ShiftAssignment::random(&a, 5, 9).unwrap();
        let (h, inter) = expand_two_step(&a, &s1, &s2).unwrap();
        assert_eq!(inter, a);
        assert_eq!(h, expand(&a, &s2).unwrap());
    }

    #[test]
    fn double_edge_lifting_matches_the_binary_example() {
        let a = fixture("double-edge").unwrap().matrix().weight_matrix();
        let FixtureMatrix::Poly(h) = fixture("double-edge-lifted").unwrap().matrix() else {
            panic!("double-edge-lifted is polynomial")
        };
        assert_eq!(h.weight_matrix(), a);
        let expected = BinaryMatrix::parse_dense(
            "101 100 000
             110 010 000
             011 001 000
             000 010 100
             000 001 010
             000 100 001",
        )
        .unwrap();
        assert_eq!(to_binary(&h), expected);
        assert_eq!(
            expand(&a, &ShiftAssignment::from_poly_matrix(&h)).unwrap(),
            h
        );
        // row weights follow the protomatrix row sums, 3 and 2
        let bin = to_binary(&expand(&a, &ShiftAssignment::random(&a, 3, 4).unwrap()).unwrap());
        assert_eq!((bin.rows(), bin.cols()), (6, 9));
        for r in 0..6 {
            assert_eq!(bin.row_support(r).len(), if r < 3 { 3 } else { 2 });
        }
    }

    #[test]
    fn zero_shifts_give_kronecker_pattern() {
        let a = WeightMatrix::from_rows(&[[1u32, 0, 1], [1, 1, 0]]).unwrap();
        let h = expand(&a, &ShiftAssignment::identity(&a, 4).unwrap()).unwrap();
        let bin = to_binary(&h);
        for r in 0..8 {
            for c in 0..12 {
                let expected = a.get(r / 4, c / 4) == 1 && r % 4 == c % 4;
                assert_eq!(bin.get(r, c), expected);
            }
        }
        assert!(to_binary(&PolyMatrix::zeros(2, 3, 5)).is_zero());
    }

    #[test]
    fn single_entry_circulant() {
        let h = PolyMatrix::from_exponents(3, &[[vec![0, 2]]]).unwrap();
        assert_eq!(
            to_binary(&h),
            BinaryMatrix::parse_dense("110\n011\n101").unwrap()
        );
    }

    #[test]
    fn conformance_and_cancellation_errors() {
        let a = WeightMatrix::from_rows(&[[2u32, 1]]).unwrap();
        let mut s = ShiftAssignment::empty(1, 2, 5).unwrap();
        s.set(0, 0, vec![1, 1]).unwrap();
        s.set(0, 1, vec![0]).unwrap();
        assert_eq!(
            expand(&a, &s).unwrap_err(),
            Error::Cancellation {
                row: 0,
                col: 0,
                exponent: 1
            }
        );
        s.set(0, 0, vec![1]).unwrap();
        assert!(matches!(expand(&a, &s), Err(Error::Conformance(_))));
        assert!(matches!(
            expand(&a, &ShiftAssignment::empty(2, 2, 5).unwrap()),
            Err(Error::Conformance(_))
        ));
        assert!(s.set(0, 0, vec![5]).is_err());
    }

    #[test]
    fn shift_file_roundtrip_and_errors() {
        let text = "2 3 7\n0 0 1,4\n0 1 0\n1 1 6\n1 2 2\n";
        let s = ShiftAssignment::parse(text).unwrap();
        assert_eq!(s.to_string(), text);
        assert_eq!(s.cell(0, 0), &[1, 4]);
        let err = ShiftAssignment::parse("2 3 7\n0 0 1\n0 0 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = ShiftAssignment::parse("2 3 7\n# comment\n0 5 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = ShiftAssignment::parse("2 3 7\n0 1 9\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(
            ShiftAssignment::parse("2 3\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn puncture_files() {
        assert_eq!(
            parse_puncture_set("16 17 18 19\n", 20).unwrap().as_slice(),
            &[16, 17, 18, 19]
        );
        assert_eq!(
            parse_puncture_set("# none\n-\n", 5).unwrap(),
            IndexSet::empty()
        );
        assert_eq!(parse_puncture_set("", 5).unwrap(), IndexSet::empty());
        assert!(matches!(
            parse_puncture_set("# c\n1\n2\n", 5),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_puncture_set("\n7\n", 5),
            Err(Error::Parse { line: 2, .. })
        ));
        assert_eq!(
            expand_puncture_set(&IndexSet::new(vec![1], 3).unwrap(), 3).as_slice(),
            &[3, 4, 5]
        );
    }

    #[test]
    fn random_shifts_are_reproducible() {
        let a = fixture("ar4ja-1/2").unwrap().matrix().weight_matrix();
        let s1 = ShiftAssignment::random(&a, 16, 42).unwrap();
        assert_eq!(s1, ShiftAssignment::random(&a, 16, 42).unwrap());
        assert_eq!(expand(&a, &s1).unwrap().weight_matrix(), a);
        assert!(ShiftAssignment::random(&a, 2, 0).is_err());
    }

    proptest! {
        #[test]
        fn expansion_preserves_weights(
            vals in prop::collection::vec(0u32..4, 6),
            n in 4usize..12,
            seed in any::<u64>(),
        ) {
            let a = WeightMatrix::new(2, 3, vals).unwrap();
            let s = ShiftAssignment::random(&a, n, seed).unwrap();
            let h = expand(&a, &s).unwrap();
            prop_assert_eq!(h.weight_matrix(), a);
            prop_assert_eq!(from_binary(&to_binary(&h), n).unwrap(), h);
        }

        #[test]
        fn ring_and_binary_verification_agree(
            vals in prop::collection::vec(0u32..3, 8),
            n in 2usize..=16,
            seed in any::<u64>(),
            flip in any::<prop::sample::Index>(),
        ) {
            let a = WeightMatrix::new(2, 4, vals).unwrap();
            let h = expand(&a, &ShiftAssignment::random(&a, n, seed).unwrap()).unwrap();
            let hb = to_binary(&h);
            let c = build_codeword(&h, &IndexSet::new(vec![0, 1, 3], 4).unwrap()).unwrap();
            prop_assert!(verify(&h, &c).unwrap().is_codeword());
            prop_assert!(verify_binary(&hb, &c));

            let mut blocks: Vec<PolyResidue> =
                c.subblocks().iter().map(|b| b.as_poly().unwrap().clone()).collect();
            let pos = flip.index(4 * n);
            blocks[pos / n] = blocks[pos / n].add(&PolyResidue::monomial(n, pos % n)).unwrap();
            let bumped = crate::codeword::QcCodeword::from_polys(n, blocks).unwrap();
            prop_assert_eq!(
                verify(&h, &bumped).unwrap().is_codeword(),
                verify_binary(&hb, &bumped)
            );
        }
    }
}
