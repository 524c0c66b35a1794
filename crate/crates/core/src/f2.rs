//! Bit-packed vectors and matrices over F2.
//!
//! Coordinate `i` lives in bit `i % 64` of word `i / 64`, so coordinate 0 is
//! the least significant bit of the first word. Bits past `len` are always
//! zero.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
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
            words: vec![!0; words_for(len)],
        };
        v.clear_tail();
        v
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let bits: Vec<bool> = bits.into_iter().collect();
        let mut v = Self::zeros(bits.len());
        for (i, b) in bits.into_iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters; anything else is ignored.
    pub fn from_str_bits(s: &str) -> Self {
        Self::from_bits(s.chars().filter_map(|c| match c {
            '0' => Some(false),
            '1' => Some(true),
            _ => None,
        }))
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Standard inner product over F2.
    pub fn dot(&self, other: &BitVector) -> bool {
        debug_assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    /// Concatenation `self || other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD + t)
                }
            })
        })
    }

    /// Returns the vector with coordinates rearranged so that output
    /// position `j` holds input coordinate `perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len);
        BitVector::from_bits(perm.iter().map(|&src| self.get(src)))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector(")?;
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Dense matrix over F2, one packed [`BitVector`] per row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BitVector>,
}

/// Result of [`BitMatrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl BitMatrix {
    pub fn new(cols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Builds a matrix from `0`/`1` strings, one per row.
    pub fn from_rows_str(rows: &[&str]) -> Result<Self> {
        let rows: Vec<BitVector> = rows.iter().map(|r| BitVector::from_str_bits(r)).collect();
        let cols = rows.first().map_or(0, BitVector::len);
        Self::new(cols, rows)
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                let mut v = BitVector::zeros(n);
                v.set(i, true);
                v
            })
            .collect();
        Self { cols: n, rows }
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hconcat(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows() != other.rows() {
            return Err(Error::LengthMismatch {
                expected: self.rows(),
                found: other.rows(),
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect();
        BitMatrix::new(self.cols + other.cols, rows)
    }

    pub fn transpose(&self) -> BitMatrix {
        let rows = (0..self.cols)
            .map(|c| BitVector::from_bits(self.rows.iter().map(|r| r.get(c))))
            .collect();
        BitMatrix {
            cols: self.rows(),
            rows,
        }
    }

    /// `self · otherᵀ`, i.e. the matrix of pairwise row inner products.
    pub fn mul_transpose(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols);
        let rows = self
            .rows
            .iter()
            .map(|a| BitVector::from_bits(other.rows.iter().map(|b| a.dot(b))))
            .collect();
        BitMatrix {
            cols: other.rows(),
            rows,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BitVector::is_zero)
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivot_cols = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot);
                }
            }
            pivot_cols.push(col);
            rank += 1;
        }
        Rref {
            reduced: BitMatrix {
                cols: self.cols,
                rows,
            },
            rank,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the reduced echelon form: a basis of the row space.
    pub fn row_basis(&self) -> BitMatrix {
        let Rref { reduced, rank, .. } = self.rref();
        let mut rows = reduced.rows;
        rows.truncate(rank.max(1));
        BitMatrix {
            cols: self.cols,
            rows,
        }
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.mul_transpose(self).is_zero()
    }

    pub fn is_self_dual(&self) -> Result<bool> {
        if !self.cols.is_multiple_of(2) {
            return Err(Error::OddLength(self.cols));
        }
        Ok(self.is_self_orthogonal() && self.rank() == self.cols / 2)
    }

    /// Every codeword weight divisible by 4. Requires a self-orthogonal
    /// generator, for which doubly-even rows suffice.
    pub fn is_doubly_even(&self) -> Result<bool> {
        if !self.is_self_orthogonal() {
            return Err(Error::NotSelfOrthogonal);
        }
        Ok(self.rows.iter().all(|r| r.weight() % 4 == 0))
    }

    /// Brings a full-rank generator to `[I_k | A]` using row operations and
    /// column swaps. Output column `j` is input column `col_perm[j]`.
    pub fn standard_form(&self) -> Result<(BitMatrix, Vec<usize>)> {
        let k = self.rows();
        let n = self.cols;
        let mut rows = self.rows.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for r in 0..k {
            // first pivot at or after column r, scanning in current column order
            let found = (r..n).find_map(|c| (r..k).find(|&i| rows[i].get(c)).map(|i| (i, c)));
            let Some((pr, pc)) = found else {
                return Err(Error::RankDeficient { rank: r, rows: k });
            };
            rows.swap(r, pr);
            if pc != r {
                perm.swap(r, pc);
                for row in rows.iter_mut() {
                    let (a, b) = (row.get(r), row.get(pc));
                    if a != b {
                        row.flip(r);
                        row.flip(pc);
                    }
                }
            }
            let pivot = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(r) {
                    row.xor_assign(&pivot);
                }
            }
        }
        Ok((BitMatrix { cols: n, rows }, perm))
    }

    /// Applies a column permutation (output column `j` = input column `perm[j]`).
    pub fn permute_cols(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix {
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.permuted(perm)).collect(),
        }
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
