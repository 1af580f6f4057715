//! Kronecker and parity products, and the sign map relating them.
//!
//! All products use the left-major composite index: entry `(i, k)` of the
//! left operand combined with entry `(j, l)` of the right operand lands at
//! row `i * rows(B) + j`, column `k * cols(B) + l`. So the top-left
//! `rows(B) x cols(B)` block of `A ⊞ B` is `B + A[0][0]`.

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVector};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SignError {
    #[error("entry {value} at ({row}, {col}) is not +1 or -1")]
    NotASign { row: usize, col: usize, value: i64 },
    #[error("expected {expected} entries, got {actual}")]
    Shape { expected: usize, actual: usize },
}

/// A dense matrix with entries in `{+1, -1}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    /// Row-major integer entries; every one must be `+1` or `-1`.
    pub fn new(rows: usize, cols: usize, entries: &[i64]) -> Result<Self, SignError> {
        if entries.len() != rows * cols {
            return Err(SignError::Shape {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        let mut out = Vec::with_capacity(entries.len());
        for (idx, &value) in entries.iter().enumerate() {
            match value {
                1 => out.push(1),
                -1 => out.push(-1),
                _ => {
                    return Err(SignError::NotASign {
                        row: idx / cols.max(1),
                        col: idx % cols.max(1),
                        value,
                    })
                }
            }
        }
        Ok(Self {
            rows,
            cols,
            entries: out,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Kronecker product over the integers. Products of signs are signs, so
    /// the result is again a sign matrix; no rounding is involved.
    pub fn kronecker(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..self.rows {
            for j in 0..other.rows {
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    entries.extend(other.row(j).iter().map(|&b| a * b));
                }
            }
        }
        Self { rows, cols, entries }
    }
}

/// Entrywise `0 -> +1`, `1 -> -1`.
pub fn sign_map(m: &BitMatrix) -> SignMatrix {
    let mut entries = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        entries.extend((0..m.cols()).map(|j| if row.get(j) { -1 } else { 1 }));
    }
    SignMatrix {
        rows: m.rows(),
        cols: m.cols(),
        entries,
    }
}

/// Inverse of [`sign_map`].
pub fn unsign_map(s: &SignMatrix) -> BitMatrix {
    BitMatrix::from_fn(s.rows, s.cols, |i, j| s.get(i, j) == -1)
}

/// Shared layout for both block products: block `(i, k)` of the result is
/// `pick(A[i][k], j)` on block-row `j`.
fn blockwise<'a>(a: &BitMatrix, b: &BitMatrix, pick: impl Fn(bool, usize) -> &'a BitVector) -> BitMatrix {
    let cols = a.cols() * b.cols();
    let mut out = Vec::with_capacity(a.rows() * b.rows());
    for i in 0..a.rows() {
        let arow = a.row(i);
        for j in 0..b.rows() {
            let mut row = BitVector::with_capacity(cols);
            for k in 0..a.cols() {
                row.append(pick(arow.get(k), j));
            }
            out.push(row);
        }
    }
    BitMatrix::from_rows(cols, out).expect("consistent widths")
}

/// Kronecker product over GF(2): block `(i, k)` is `B` if `A[i][k] = 1`,
/// else zero.
pub fn kronecker(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let zero = BitVector::zeros(b.cols());
    blockwise(a, b, |bit, j| if bit { b.row(j) } else { &zero })
}

/// Parity product: block `(i, k)` is `B + A[i][k]` entrywise over GF(2).
pub fn parity_product(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let complemented: Vec<BitVector> = b.row_slice().iter().map(BitVector::complement).collect();
    blockwise(a, b, |bit, j| if bit { &complemented[j] } else { b.row(j) })
}

/// Graph on `V(G) x V(H)` where `(a, x) ~ (b, y)` iff exactly one of
/// `a ~ b`, `x ~ y` holds. Vertex `(a, x)` has index `a * v(H) + x`.
pub fn parity_product_graph(g: &Graph, h: &Graph) -> Graph {
    let adj = parity_product(g.adjacency(), h.adjacency());
    // symmetric and loop-free whenever both factors are
    Graph::new(adj).expect("parity product of graphs is a graph")
}
