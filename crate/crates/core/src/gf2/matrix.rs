use std::fmt;

use super::{BitVector, Gf2Error, WORD_BITS};

/// A dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    /// The all-ones matrix `J`.
    pub fn all_ones(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::ones(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from rows that all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, Gf2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::LengthMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix from `0`/`1` row strings. Panics on ragged input.
    pub fn from_str_rows(rows: &[&str]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| BitVector::from_str01(r)).collect())
            .expect("ragged rows")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let data = (0..rows)
            .map(|i| BitVector::from_bits((0..cols).map(|j| f(i, j))))
            .collect();
        Self { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn try_row(&self, i: usize) -> Result<&BitVector, Gf2Error> {
        self.data.get(i).ok_or(Gf2Error::OutOfBounds {
            index: i,
            len: self.rows,
        })
    }

    pub fn row_slice(&self) -> &[BitVector] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<BitVector> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set_bit(&mut self, i: usize, j: usize, value: bool) -> Result<(), Gf2Error> {
        if i >= self.rows {
            return Err(Gf2Error::OutOfBounds { index: i, len: self.rows });
        }
        if j >= self.cols {
            return Err(Gf2Error::OutOfBounds { index: j, len: self.cols });
        }
        self.data[i].set(j, value);
        Ok(())
    }

    pub fn popcount_row(&self, i: usize) -> usize {
        self.data[i].popcount()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            let (wi, bit) = (i / WORD_BITS, 1u64 << (i % WORD_BITS));
            for (w_idx, &w) in row.words().iter().enumerate() {
                let mut w = w;
                while w != 0 {
                    let j = w_idx * WORD_BITS + w.trailing_zeros() as usize;
                    out.data[j].words_mut()[wi] |= bit;
                    w &= w - 1;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.rows != other.rows {
            return Err(Gf2Error::LengthMismatch {
                expected: self.rows,
                actual: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.concat(b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// `[self ; other]`.
    pub fn vconcat(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.cols {
            return Err(Gf2Error::LengthMismatch {
                expected: self.cols,
                actual: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise sum over GF(2).
    pub fn xor(&self, other: &Self) -> Result<Self, Gf2Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Gf2Error::LengthMismatch {
                expected: self.rows * self.cols,
                actual: other.rows * other.cols,
            });
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.xor(b)).collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise complement, `J + self`.
    pub fn complement(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(BitVector::complement).collect(),
        }
    }

    /// The submatrix on the given row and column index lists, in the order given.
    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Result<Self, Gf2Error> {
        if let Some(&i) = row_idx.iter().find(|&&i| i >= self.rows) {
            return Err(Gf2Error::OutOfBounds { index: i, len: self.rows });
        }
        if let Some(&j) = col_idx.iter().find(|&&j| j >= self.cols) {
            return Err(Gf2Error::OutOfBounds { index: j, len: self.cols });
        }
        let data = row_idx
            .iter()
            .map(|&i| self.data[i].gather(col_idx))
            .collect();
        Ok(Self {
            rows: row_idx.len(),
            cols: col_idx.len(),
            data,
        })
    }

    /// Contiguous block `[r0, r1) x [c0, c1)`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let rows: Vec<usize> = (r0..r1).collect();
        let cols: Vec<usize> = (c0..c1).collect();
        self.submatrix(&rows, &cols).expect("block out of range")
    }

    /// Simultaneous row/column permutation `P A P^T`: entry `(k, l)` of the
    /// result is `self[perm[k]][perm[l]]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Result<Self, Gf2Error> {
        self.submatrix(perm, perm)
    }

    /// Matrix whose every row is `v`.
    pub fn repeat_row(v: &BitVector, rows: usize) -> Self {
        Self {
            rows,
            cols: v.len(),
            data: vec![v.clone(); rows],
        }
    }

    pub fn to_string01(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for r in &self.data {
            s.push_str(&r.to_string01());
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_string01())
    }
}
