use std::fmt;

use super::{words_for, Gf2Error, WORD_BITS};

/// A vector over GF(2), packed 64 bits per word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.clear_padding();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % WORD_BITS == 0 {
                words.push(0);
            }
            if b {
                words[len / WORD_BITS] |= 1 << (len % WORD_BITS);
            }
            len += 1;
        }
        Self { len, words }
    }

    /// Builds a vector from a `0`/`1` string, e.g. `"0110"`.
    ///
    /// Panics on any other character; meant for literals in tests and tables.
    pub fn from_str01(s: &str) -> Self {
        Self::from_bits(s.chars().map(|c| match c {
            '0' => false,
            '1' => true,
            other => panic!("invalid bit character {other:?}"),
        }))
    }

    /// Empty vector with room for `bits` bits; grow it with [`append`](Self::append).
    pub fn with_capacity(bits: usize) -> Self {
        Self {
            len: 0,
            words: Vec::with_capacity(words_for(bits)),
        }
    }

    /// Appends `other` after the last bit of `self`.
    pub fn append(&mut self, other: &Self) {
        let shift = self.len % WORD_BITS;
        let new_len = self.len + other.len;
        if shift == 0 {
            self.words.extend_from_slice(&other.words);
        } else {
            for &w in &other.words {
                *self.words.last_mut().expect("nonzero shift implies a word") |= w << shift;
                self.words.push(w >> (WORD_BITS - shift));
            }
        }
        self.words.truncate(words_for(new_len));
        self.len = new_len;
        self.clear_padding();
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub(crate) fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn try_get(&self, i: usize) -> Result<bool, Gf2Error> {
        if i >= self.len {
            return Err(Gf2Error::OutOfBounds { index: i, len: self.len });
        }
        Ok(self.get(i))
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range (len={})", self.len);
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Adds `other` into `self` over GF(2).
    ///
    /// Panics if the lengths differ.
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Same as [`xor_assign`](Self::xor_assign) but only touches words from
    /// `first_word` onward. Elimination uses this once the leading columns
    /// are known to be zero in both operands.
    #[inline]
    pub(crate) fn xor_assign_from(&mut self, other: &Self, first_word: usize) {
        for (a, b) in self.words[first_word..].iter_mut().zip(&other.words[first_word..]) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len, "and of vectors with different lengths");
        Self {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    /// Popcount of `self & other` without allocating.
    pub fn and_popcount(&self, other: &Self) -> usize {
        assert_eq!(self.len, other.len, "and of vectors with different lengths");
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Bitwise complement (adds the all-ones vector).
    pub fn complement(&self) -> Self {
        let mut out = Self {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_padding();
        out
    }

    /// Returns true if `self` is the bitwise complement of `other`.
    pub fn is_complement_of(&self, other: &Self) -> bool {
        if self.len != other.len {
            return false;
        }
        let n = self.words.len();
        if n == 0 {
            return true;
        }
        let tail_mask = self.tail_mask();
        self.words
            .iter()
            .zip(&other.words)
            .enumerate()
            .all(|(i, (a, b))| {
                let mask = if i + 1 == n { tail_mask } else { u64::MAX };
                (a ^ b) == mask
            })
    }

    /// Ascending indices `i` with `self[i] == bit`.
    pub fn support(&self, bit: bool) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i) == bit).collect()
    }

    /// Index of the lowest set bit at or after `from`.
    pub fn first_one_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut wi = from / WORD_BITS;
        let mut w = self.words[wi] & (u64::MAX << (from % WORD_BITS));
        loop {
            if w != 0 {
                let i = wi * WORD_BITS + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            wi += 1;
            if wi >= self.words.len() {
                return None;
            }
            w = self.words[wi];
        }
    }

    /// Copy of bits `[start, end)`.
    pub fn slice(&self, start: usize, end: usize) -> Self {
        assert!(start <= end && end <= self.len, "slice {start}..{end} out of range (len={})", self.len);
        let mut out = Self::zeros(end - start);
        for (j, i) in (start..end).enumerate() {
            if self.get(i) {
                out.words[j / WORD_BITS] |= 1 << (j % WORD_BITS);
            }
        }
        out
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::with_capacity(self.len + other.len);
        out.append(self);
        out.append(other);
        out
    }

    /// The vector `(self[p[0]], self[p[1]], ...)`.
    pub fn gather(&self, indices: &[usize]) -> Self {
        Self::from_bits(indices.iter().map(|&i| self.get(i)))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_string01(&self) -> String {
        self.iter().map(|b| if b { '1' } else { '0' }).collect()
    }

    #[inline]
    fn tail_mask(&self) -> u64 {
        match self.len % WORD_BITS {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        }
    }

    #[inline]
    pub(crate) fn clear_padding(&mut self) {
        if let Some(last) = self.words.last_mut() {
            let r = self.len % WORD_BITS;
            if r != 0 {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn padding_popcount(&self) -> u32 {
        match (self.words.last(), self.len % WORD_BITS) {
            (Some(&last), r) if r != 0 => (last & !((1u64 << r) - 1)).count_ones(),
            _ => 0,
        }
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_string01())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string01())
    }
}
