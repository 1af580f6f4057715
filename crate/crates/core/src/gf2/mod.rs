//! Bit-packed GF(2) vectors and matrices.
//!
//! Storage is 64 bits per word: bit `i` of a vector lives in word `i / 64`
//! at position `i % 64`. Padding bits past the logical length are kept at
//! zero after every mutating operation, so word-level equality, hashing and
//! popcounts never need masking.

mod elim;
mod f2mat;
mod matrix;
mod vector;

pub use elim::{rank, rank_with, row_space_contains, rows_form_subspace, EliminationStrategy};
pub use f2mat::{parse_f2mat, write_f2mat};
pub use matrix::BitMatrix;
pub use vector::BitVector;

use thiserror::Error;

pub(crate) const WORD_BITS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("index {index} out of bounds for length {len}")]
    OutOfBounds { index: usize, len: usize },
    #[error("f2mat parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}
