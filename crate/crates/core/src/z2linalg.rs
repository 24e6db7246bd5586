//! Dense bit-packed linear algebra over GF(2).
//!
//! Rows are packed into 64-bit words, least significant bit first. Bits past
//! `cols` in the last word of a row are always zero.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
}

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A vector over GF(2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in ones {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVector::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    /// Single 1 at `index`: the dual cochain of one cell.
    pub fn unit(len: usize, index: usize) -> Self {
        BitVector::from_indices(len, [index])
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of vectors with different lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Inner product mod 2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        dot_words(&self.words, &other.words)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// `0`/`1` characters, index 0 first.
    pub fn to_bit_string(&self) -> String {
        (0..self.len).map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({})", self.to_bit_string())
    }
}

#[inline]
fn dot_words(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones()) & 1 == 1
}

/// A dense `rows × cols` matrix over GF(2).
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix { rows, cols, stride, data: vec![0; rows * stride] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from row vectors of equal length.
    pub fn from_rows(cols: usize, rows: &[BitVector]) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            m.row_mut(i).copy_from_slice(&r.words);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_vector(&self, i: usize) -> BitVector {
        BitVector { len: self.cols, words: self.row(i).to_vec() }
    }

    pub fn column_vector(&self, j: usize) -> BitVector {
        BitVector::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / 64] ^= 1u64 << (j % 64);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// `row[dst] ^= row[src]`.
    fn add_row(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (lo, hi) = self.data.split_at_mut(src.max(dst) * s);
        let (src_row, dst_row) = if src < dst {
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, w) in dst_row.iter_mut().zip(src_row) {
            *d ^= w;
        }
    }

    pub fn mul_vec(&self, x: &BitVector) -> Result<BitVector, LinalgError> {
        if x.len != self.cols {
            return Err(LinalgError::Dimension { expected: self.cols, actual: x.len });
        }
        Ok(BitVector::from_indices(self.rows, (0..self.rows).filter(|&i| dot_words(self.row(i), &x.words))))
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    t.set(j, i, true);
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Dimension { expected: self.cols, actual: other.rows });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    let s = out.stride;
                    let dst = &mut out.data[i * s..(i + 1) * s];
                    for (d, w) in dst.iter_mut().zip(other.row(k)) {
                        *d ^= w;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Rank over GF(2), computed on an internal copy.
    pub fn rank(&self) -> usize {
        Elimination::run(self.clone(), false).rank
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row_vector(i).to_bit_string())?;
        }
        Ok(())
    }
}

/// Pivot data of a reduced row echelon form, with the accumulated row transform.
struct Elimination {
    /// `transform * original = reduced`; only tracked when requested.
    transform: Option<BitMatrix>,
    /// Pivot column of each of the first `rank` rows.
    pivots: Vec<usize>,
    rank: usize,
}

impl Elimination {
    /// Pivots are taken in column order, first nonzero row at or below the current rank.
    fn run(mut m: BitMatrix, track: bool) -> Self {
        let mut t = track.then(|| BitMatrix::identity(m.rows));
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            let (w, bit) = (col / 64, 1u64 << (col % 64));
            let Some(p) = (r..m.rows).find(|&i| m.data[i * m.stride + w] & bit != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            if let Some(t) = t.as_mut() {
                t.swap_rows(r, p);
            }
            for i in 0..m.rows {
                if i != r && m.data[i * m.stride + w] & bit != 0 {
                    m.add_row(r, i);
                    if let Some(t) = t.as_mut() {
                        t.add_row(r, i);
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        Elimination { transform: t, pivots, rank: r }
    }
}

pub fn rank(m: &BitMatrix) -> usize {
    m.rank()
}

/// Factorisation of a fixed matrix for repeated `M x = b` solves.
pub struct Gf2Solver {
    matrix: BitMatrix,
    elim: Elimination,
}

impl Gf2Solver {
    pub fn new(m: &BitMatrix) -> Self {
        Gf2Solver { matrix: m.clone(), elim: Elimination::run(m.clone(), true) }
    }

    pub fn rank(&self) -> usize {
        self.elim.rank
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    /// Some `x` with `M x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, LinalgError> {
        let m = &self.matrix;
        if b.len != m.rows {
            return Err(LinalgError::Dimension { expected: m.rows, actual: b.len });
        }
        let t = self.elim.transform.as_ref().expect("solver tracks its transform");
        let tb = t.mul_vec(b)?;
        if (self.elim.rank..m.rows).any(|i| tb.get(i)) {
            return Ok(None);
        }
        let mut x = BitVector::zeros(m.cols);
        for (i, &col) in self.elim.pivots.iter().enumerate() {
            if tb.get(i) {
                x.set(col, true);
            }
        }
        assert_eq!(&m.mul_vec(&x)?, b, "GF(2) solve produced a non-solution");
        Ok(Some(x))
    }
}

/// One-shot `M x = b`.
pub fn solve(m: &BitMatrix, b: &BitVector) -> Result<Option<BitVector>, LinalgError> {
    Gf2Solver::new(m).solve(b)
}
