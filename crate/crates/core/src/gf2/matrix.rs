use std::fmt;

use super::vector::{tail_mask, words_for, BinaryVector, WORD_BITS};
use crate::error::{check_len, Result};

/// Dense row-major bit-packed matrix over GF(2).
///
/// Each row occupies `stride` 64-bit words; padding bits past `cols` are zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from rows of 0/1 bytes. All rows must share a length.
    pub fn from_dense(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_row_vectors(cols: usize, rows: &[BinaryVector]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(r.words());
        }
        m
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
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        (self.data[i * self.stride + j / WORD_BITS] >> (j % WORD_BITS)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        let w = &mut self.data[i * self.stride + j / WORD_BITS];
        let mask = 1u64 << (j % WORD_BITS);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.rows && j < self.cols, "({i}, {j}) out of range");
        self.data[i * self.stride + j / WORD_BITS] ^= 1u64 << (j % WORD_BITS);
    }

    #[inline]
    pub(crate) fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BinaryVector {
        BinaryVector::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_support(&self, i: usize) -> Vec<usize> {
        self.row(i).support()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let s = self.stride;
        let (head, tail) = self.data.split_at_mut(hi * s);
        head[lo * s..(lo + 1) * s].swap_with_slice(&mut tail[..s]);
    }

    /// row[dst] ^= row[src], touching only words at index >= `from_word`.
    #[inline]
    pub(crate) fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (src_row, dst_row) = if src < dst {
            let (head, tail) = self.data.split_at_mut(dst * s);
            (&head[src * s..(src + 1) * s], &mut tail[..s])
        } else {
            let (head, tail) = self.data.split_at_mut(src * s);
            (&tail[..s] as &[u64], &mut head[dst * s..(dst + 1) * s])
        };
        for (d, x) in dst_row[from_word..].iter_mut().zip(&src_row[from_word..]) {
            *d ^= x;
        }
    }

    /// Matrix-vector product over GF(2).
    pub fn mul_vec(&self, v: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.cols, v.len(), "matrix columns vs vector length")?;
        let mut out = BinaryVector::zeros(self.rows);
        let vw = v.words();
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(vw)
                .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones());
            if parity & 1 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Computes `self · otherᵀ`; both operands must have the same column count.
    pub fn mul_transpose(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        check_len(self.cols, other.cols, "column counts in A·Bᵀ")?;
        let mut out = BinaryMatrix::zeros(self.rows, other.rows);
        for i in 0..self.rows {
            let a = self.row_words(i);
            for j in 0..other.rows {
                let parity = a
                    .iter()
                    .zip(other.row_words(j))
                    .fold(0u32, |acc, (x, y)| acc ^ (x & y).count_ones());
                if parity & 1 == 1 {
                    out.set(i, j, true);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row(i).iter_ones() {
                out.set(j, i, true);
            }
        }
        out
    }

    /// Keeps only the listed columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> BinaryMatrix {
        let mut out = BinaryMatrix::zeros(self.rows, columns.len());
        for i in 0..self.rows {
            for (k, &j) in columns.iter().enumerate() {
                if self.get(i, j) {
                    out.set(i, k, true);
                }
            }
        }
        out
    }

    #[allow(dead_code)]
    pub(crate) fn padding_is_clear(&self) -> bool {
        if self.stride == 0 {
            return true;
        }
        let mask = tail_mask(self.cols);
        (0..self.rows).all(|i| self.row_words(i)[self.stride - 1] & !mask == 0)
    }
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BinaryMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {}", self.row(i))?;
        }
        write!(f, "]")
    }
}
