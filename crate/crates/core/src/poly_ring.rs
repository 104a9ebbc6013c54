//! Arithmetic in the quotient ring `F2[x] / <x^N - 1>`.
//!
//! A [`PolyResidue`] stores exactly `N` coefficient bits, coefficient of `x^s`
//! at bit `s`. Under the circulant isomorphism the coefficients are the
//! left-most column of an `N x N` binary circulant read from top to bottom.
//!
//! Residues are written as comma-separated exponent lists (`"0,2"` is
//! `1 + x^2`), with `"-"` for the zero residue.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::{self, BinaryMatrix};

/// An element of `F2[x] / <x^N - 1>`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyResidue {
    n: usize,
    words: Vec<u64>,
}

/// Ring-theoretic class of a residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Zero,
    Unit,
    ZeroDivisor,
}

impl PolyResidue {
    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "modulus degree must be positive");
        PolyResidue {
            n,
            words: vec![0; gf2::words_for(n)],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    /// `x^e mod x^N - 1`.
    pub fn monomial(n: usize, e: usize) -> Self {
        let mut r = Self::zero(n);
        gf2::flip_bit(&mut r.words, e % n);
        r
    }

    /// The sum of `x^e` over `exponents`, reduced mod `x^N - 1`. Repeated
    /// exponents cancel in pairs.
    pub fn from_exponents(n: usize, exponents: &[usize]) -> Self {
        let mut r = Self::zero(n);
        for &e in exponents {
            gf2::flip_bit(&mut r.words, e % n);
        }
        r
    }

    /// Builds a residue from exactly `N` coefficient bits.
    pub fn from_coeffs(coeffs: &[bool]) -> Self {
        let mut r = Self::zero(coeffs.len());
        for (s, &b) in coeffs.iter().enumerate() {
            if b {
                gf2::flip_bit(&mut r.words, s);
            }
        }
        r
    }

    /// `1 + x + ... + x^(N-1)`.
    pub fn all_ones(n: usize) -> Self {
        Self::from_coeffs(&vec![true; n])
    }

    pub fn modulus_degree(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, s: usize) -> bool {
        gf2::get_bit(&self.words, s)
    }

    pub fn coeffs(&self) -> Vec<bool> {
        (0..self.n).map(|s| self.coeff(s)).collect()
    }

    /// Exponents of the nonzero terms, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        gf2::ones(&self.words)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        gf2::popcount(&self.words)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeff(0) && self.weight() == 1
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut r = self.clone();
        r.add_assign_unchecked(other);
        Ok(r)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        gf2::xor_into(&mut self.words, &other.words);
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Self::zero(self.n);
        for e in sparse.exponents() {
            xor_rotated(&mut acc.words, &dense.words, e, self.n);
        }
        acc
    }

    /// Adds `self * other` into `acc` without allocating for monomial factors.
    pub(crate) fn mul_add_into(&self, other: &Self, acc: &mut Self) {
        debug_assert_eq!(self.n, other.n);
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        for e in sparse.exponents() {
            xor_rotated(&mut acc.words, &dense.words, e, self.n);
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut acc = Self::zero(self.n);
        xor_rotated(&mut acc.words, &self.words, k % self.n, self.n);
        acc
    }

    /// Unit, zero divisor or zero, decided by `gcd(a(x), x^N - 1)`.
    pub fn classify(&self) -> Classification {
        if self.is_zero() {
            Classification::Zero
        } else if self.gcd_with_modulus().is_one() {
            Classification::Unit
        } else {
            Classification::ZeroDivisor
        }
    }

    /// Inverse of a monomial `x^i`, namely `x^((N - i) mod N)`.
    pub fn monomial_inverse(&self) -> Result<Self> {
        if self.weight() != 1 {
            return Err(Error::Domain(format!(
                "monomial inverse needs a weight-1 residue, got weight {}",
                self.weight()
            )));
        }
        let i = self.exponents().next().unwrap_or(0);
        Ok(Self::monomial(self.n, (self.n - i) % self.n))
    }

    /// Inverse of any unit, or `None` for zero and zero divisors.
    pub fn inverse(&self) -> Option<Self> {
        if self.weight() == 1 {
            return self.monomial_inverse().ok();
        }
        let modulus = F2Poly::x_n_minus_one(self.n);
        let (g, s) = F2Poly::from_residue(self).ext_gcd(&modulus);
        g.is_one().then(|| s.reduce(self.n))
    }

    /// The generator `(x^N - 1) / gcd(a, x^N - 1)` of the annihilator ideal of
    /// `a`. It is zero exactly when `a` is a unit.
    pub fn annihilator(&self) -> Self {
        annihilator_of_ideal(std::slice::from_ref(self), self.n)
    }

    pub(crate) fn gcd_with_modulus(&self) -> F2Poly {
        F2Poly::x_n_minus_one(self.n).gcd(&F2Poly::from_residue(self))
    }

    /// The `N x N` right-circulant matrix whose left-most column holds the
    /// coefficients.
    pub fn to_circulant(&self) -> BinaryMatrix {
        let n = self.n;
        let mut m = BinaryMatrix::zeros(n, n);
        for e in self.exponents() {
            for c in 0..n {
                m.set((e + c) % n, c, true);
            }
        }
        m
    }

    /// Inverse of [`to_circulant`](Self::to_circulant); fails on non-circulant
    /// input.
    pub fn from_circulant(m: &BinaryMatrix) -> Result<Self> {
        let n = m.rows();
        if n == 0 || m.cols() != n {
            return Err(Error::Shape(format!(
                "circulant must be square and nonempty, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let col0: Vec<bool> = (0..n).map(|r| m.get(r, 0)).collect();
        let p = Self::from_coeffs(&col0);
        if p.to_circulant() != *m {
            return Err(Error::Shape("matrix is not right-circulant".into()));
        }
        Ok(p)
    }

    /// Parses the exponent-list grammar: `"-"` or comma-separated distinct
    /// exponents in `[0, N)`.
    pub fn parse(text: &str, n: usize) -> std::result::Result<Self, String> {
        let text = text.trim();
        if n == 0 {
            return Err("modulus degree must be positive".into());
        }
        let mut r = Self::zero(n);
        if text == "-" {
            return Ok(r);
        }
        for tok in text.split(',') {
            let tok = tok.trim();
            let e: usize = tok
                .parse()
                .map_err(|_| format!("invalid exponent {tok:?}"))?;
            if e >= n {
                return Err(format!("exponent {e} out of range for N = {n}"));
            }
            if r.coeff(e) {
                return Err(format!("repeated exponent {e}"));
            }
            gf2::flip_bit(&mut r.words, e);
        }
        Ok(r)
    }
}

impl fmt::Display for PolyResidue {
    /// Exponent-list form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("-");
        }
        let mut first = true;
        for e in self.exponents() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyResidue(N={}; {})", self.n, self)
    }
}

/// Generator of the annihilator of the ideal spanned by `elems` in the
/// principal ideal ring `F2[x]/<x^N - 1>`.
pub(crate) fn annihilator_of_ideal(elems: &[PolyResidue], n: usize) -> PolyResidue {
    let modulus = F2Poly::x_n_minus_one(n);
    let g = elems
        .iter()
        .fold(modulus.clone(), |g, e| g.gcd(&F2Poly::from_residue(e)));
    let (q, _) = modulus.div_rem(&g);
    q.reduce(n)
}

/// XORs `src * x^k mod x^n - 1` into `acc`, for `k < n`.
fn xor_rotated(acc: &mut [u64], src: &[u64], k: usize, n: usize) {
    if k == 0 {
        gf2::xor_into(acc, src);
        return;
    }
    // low part moves up by k, bits at n-k.. wrap to the bottom
    shl_xor(acc, src, k, n);
    shr_xor(acc, src, n - k);
}

fn shl_xor(acc: &mut [u64], src: &[u64], shift: usize, n: usize) {
    let len = acc.len();
    let (ws, bs) = (shift / 64, shift % 64);
    for i in 0..len.saturating_sub(ws) {
        let t = i + ws;
        acc[t] ^= src[i] << bs;
        if bs > 0 && t + 1 < len {
            acc[t + 1] ^= src[i] >> (64 - bs);
        }
    }
    let tail = n % 64;
    if tail != 0 {
        acc[len - 1] &= (1u64 << tail) - 1;
    }
}

fn shr_xor(acc: &mut [u64], src: &[u64], shift: usize) {
    let len = acc.len();
    let (ws, bs) = (shift / 64, shift % 64);
    for i in 0..len.saturating_sub(ws) {
        let s = i + ws;
        let mut v = src[s] >> bs;
        if bs > 0 && s + 1 < len {
            v |= src[s + 1] << (64 - bs);
        }
        acc[i] ^= v;
    }
}

/// A plain polynomial in `F2[x]`, used for gcd and exact division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct F2Poly {
    words: Vec<u64>,
}

impl F2Poly {
    fn normalized(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        F2Poly { words }
    }

    pub(crate) fn from_residue(a: &PolyResidue) -> Self {
        Self::normalized(a.words.clone())
    }

    pub(crate) fn x_n_minus_one(n: usize) -> Self {
        let mut words = vec![0u64; gf2::words_for(n + 1)];
        gf2::flip_bit(&mut words, 0);
        gf2::flip_bit(&mut words, n);
        Self::normalized(words)
    }

    fn degree(&self) -> Option<usize> {
        let top = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub(crate) fn is_one(&self) -> bool {
        self.words.len() == 1 && self.words[0] == 1
    }

    fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// `self ^= other * x^shift`
    fn xor_shifted(&mut self, other: &F2Poly, shift: usize) {
        let Some(deg) = other.degree() else { return };
        let need = gf2::words_for(deg + shift + 1);
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        let (ws, bs) = (shift / 64, shift % 64);
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i + ws] ^= w << bs;
            if bs > 0 && i + ws + 1 < self.words.len() {
                self.words[i + ws + 1] ^= w >> (64 - bs);
            }
        }
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    fn mul(&self, other: &F2Poly) -> F2Poly {
        let mut acc = F2Poly { words: Vec::new() };
        for e in gf2::ones(&self.words) {
            acc.xor_shifted(other, e);
        }
        acc
    }

    pub(crate) fn div_rem(&self, divisor: &F2Poly) -> (F2Poly, F2Poly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let mut rem = self.clone();
        let mut quot = F2Poly { words: Vec::new() };
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let shift = rd - dd;
            rem.xor_shifted(divisor, shift);
            quot.xor_shifted(&F2Poly { words: vec![1] }, shift);
        }
        (quot, rem)
    }

    pub(crate) fn gcd(&self, other: &F2Poly) -> F2Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    /// Returns `(g, s)` with `g = gcd(self, other)` and `s * self = g (mod other)`.
    fn ext_gcd(&self, other: &F2Poly) -> (F2Poly, F2Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (F2Poly { words: vec![1] }, F2Poly { words: Vec::new() });
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let mut s = s0.clone();
            let qs = q.mul(&s1);
            s.xor_shifted(&qs, 0);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        (r0, s0)
    }

    /// Reduces mod `x^n - 1` into a residue.
    pub(crate) fn reduce(&self, n: usize) -> PolyResidue {
        let mut r = PolyResidue::zero(n);
        for e in gf2::ones(&self.words) {
            gf2::flip_bit(&mut r.words, e % n);
        }
        r
    }
}
