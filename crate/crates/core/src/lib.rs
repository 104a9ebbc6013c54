//! Upper bounds on the minimum Hamming distance of punctured and unpunctured
//! quasi-cyclic LDPC codes.
//!
//! Codes are described by a polynomial parity-check matrix over
//! `F2[x]/<x^N - 1>` ([`PolyMatrix`]) or by its weight matrix
//! ([`WeightMatrix`]), which doubles as a protomatrix. Bounds come from
//! codewords built out of permanents of `J x J` submatrices; see
//! [`bounds`].

pub mod bounds;
pub mod codeword;
pub mod error;
pub mod expansion;
pub mod gf2;
pub mod girth;
pub mod oracle;
mod permanent;
pub mod poly_ring;
pub mod qc_matrix;
pub mod report;
mod subsets;

pub use error::{Error, Result};
pub use gf2::BinaryMatrix;
pub use poly_ring::{Classification, PolyResidue};
pub use qc_matrix::{perm_int, perm_ring, IndexSet, PolyMatrix, WeightMatrix};
