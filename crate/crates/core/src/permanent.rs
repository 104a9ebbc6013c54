//! Recursive cofactor expansion for sparse permanents.
//!
//! Rows and columns of the active submatrix are tracked as `u128` masks, so a
//! single expansion handles matrices of up to 128 rows and columns. At each
//! level the row or column with the fewest nonzero entries is expanded and a
//! line with no nonzero entries terminates the branch with zero.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::poly_ring::PolyResidue;

pub(crate) const MAX_DIM: usize = 128;

/// The scalar arithmetic the expansion runs over.
pub(crate) trait PermArith {
    type Value: Clone;
    type Overflow;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn is_zero(&self, v: &Self::Value) -> bool;
    /// `acc += a * b`
    fn mul_add(
        &self,
        acc: &mut Self::Value,
        a: &Self::Value,
        b: &Self::Value,
    ) -> Result<(), Self::Overflow>;
}

/// Checked 128-bit integer arithmetic.
pub(crate) struct CheckedU128;

impl PermArith for CheckedU128 {
    type Value = u128;
    type Overflow = ();

    fn zero(&self) -> u128 {
        0
    }
    fn one(&self) -> u128 {
        1
    }
    fn is_zero(&self, v: &u128) -> bool {
        *v == 0
    }
    fn mul_add(&self, acc: &mut u128, a: &u128, b: &u128) -> Result<(), ()> {
        *acc = a
            .checked_mul(*b)
            .and_then(|p| acc.checked_add(p))
            .ok_or(())?;
        Ok(())
    }
}

pub(crate) struct Unbounded;

impl PermArith for Unbounded {
    type Value = BigUint;
    type Overflow = std::convert::Infallible;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn one(&self) -> BigUint {
        BigUint::one()
    }
    fn is_zero(&self, v: &BigUint) -> bool {
        v.is_zero()
    }
    fn mul_add(
        &self,
        acc: &mut BigUint,
        a: &BigUint,
        b: &BigUint,
    ) -> Result<(), std::convert::Infallible> {
        *acc += a * b;
        Ok(())
    }
}

/// Arithmetic in `F2[x]/<x^N - 1>`.
pub(crate) struct Ring(pub usize);

impl PermArith for Ring {
    type Value = PolyResidue;
    type Overflow = std::convert::Infallible;

    fn zero(&self) -> PolyResidue {
        PolyResidue::zero(self.0)
    }
    fn one(&self) -> PolyResidue {
        PolyResidue::one(self.0)
    }
    fn is_zero(&self, v: &PolyResidue) -> bool {
        v.is_zero()
    }
    fn mul_add(
        &self,
        acc: &mut PolyResidue,
        a: &PolyResidue,
        b: &PolyResidue,
    ) -> Result<(), std::convert::Infallible> {
        a.mul_add_into(b, acc);
        Ok(())
    }
}

/// A dense grid with per-line nonzero masks.
pub(crate) struct Grid<T> {
    cols: usize,
    values: Vec<T>,
    row_masks: Vec<u128>,
    col_masks: Vec<u128>,
}

impl<T: Clone> Grid<T> {
    /// `values` is row-major `rows x cols`; `nonzero` flags the entries to keep.
    pub(crate) fn new(
        rows: usize,
        cols: usize,
        values: Vec<T>,
        nonzero: impl Fn(&T) -> bool,
    ) -> Self {
        assert!(rows <= MAX_DIM && cols <= MAX_DIM);
        debug_assert_eq!(values.len(), rows * cols);
        let mut row_masks = vec![0u128; rows];
        let mut col_masks = vec![0u128; cols];
        for r in 0..rows {
            for c in 0..cols {
                if nonzero(&values[r * cols + c]) {
                    row_masks[r] |= 1 << c;
                    col_masks[c] |= 1 << r;
                }
            }
        }
        Grid {
            cols,
            values,
            row_masks,
            col_masks,
        }
    }

    /// Columns holding a nonzero entry in row `r`.
    pub(crate) fn row_mask(&self, r: usize) -> u128 {
        self.row_masks[r]
    }

    pub(crate) fn all_rows(&self) -> u128 {
        full_mask(self.row_masks.len())
    }

    pub(crate) fn all_cols(&self) -> u128 {
        full_mask(self.cols)
    }

    /// Permanent of the submatrix on the given row and column masks, which
    /// must have equal popcounts.
    pub(crate) fn permanent<A: PermArith<Value = T>>(
        &self,
        arith: &A,
        rows: u128,
        cols: u128,
    ) -> Result<T, A::Overflow> {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return Ok(arith.one());
        }

        // sparsest line; an empty line means the permanent vanishes
        let mut best_count = u32::MAX;
        let mut best_line = (true, 0usize);
        for r in bits(rows) {
            let k = (self.row_masks[r] & cols).count_ones();
            if k < best_count {
                if k == 0 {
                    return Ok(arith.zero());
                }
                best_count = k;
                best_line = (true, r);
            }
        }
        if best_count > 1 {
            for c in bits(cols) {
                let k = (self.col_masks[c] & rows).count_ones();
                if k < best_count {
                    if k == 0 {
                        return Ok(arith.zero());
                    }
                    best_count = k;
                    best_line = (false, c);
                }
            }
        }

        let mut acc = arith.zero();
        match best_line {
            (true, r) => {
                let sub_rows = rows & !(1 << r);
                for c in bits(self.row_masks[r] & cols) {
                    let minor = self.permanent(arith, sub_rows, cols & !(1 << c))?;
                    if !arith.is_zero(&minor) {
                        arith.mul_add(&mut acc, &self.values[r * self.cols + c], &minor)?;
                    }
                }
            }
            (false, c) => {
                let sub_cols = cols & !(1 << c);
                for r in bits(self.col_masks[c] & rows) {
                    let minor = self.permanent(arith, rows & !(1 << r), sub_cols)?;
                    if !arith.is_zero(&minor) {
                        arith.mul_add(&mut acc, &self.values[r * self.cols + c], &minor)?;
                    }
                }
            }
        }
        Ok(acc)
    }
}

pub(crate) fn full_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

pub(crate) fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}
