//! Bit-packed linear algebra over GF(2).
//!
//! Everything here works on dense [`BinaryMatrix`] / [`BinaryVector`] values.
//! The systems solved by the decoders are restricted to an erasure or a
//! cluster, so they stay small enough that word-parallel dense elimination
//! is the fastest option.

mod matrix;
mod vector;
#[cfg(feature = "probabilistic")]
mod wiedemann;

pub use matrix::BinaryMatrix;
pub use vector::BinaryVector;
#[cfg(feature = "probabilistic")]
pub use wiedemann::solve_probabilistic;

use vector::WORD_BITS;

use crate::error::{check_len, Error, Result};

/// Syndrome-style product `m · v`.
pub fn mat_vec_mul(m: &BinaryMatrix, v: &BinaryVector) -> Result<BinaryVector> {
    m.mul_vec(v)
}

/// Reduces `m` in place to row echelon form, applying the same row operations
/// to `rhs` when given. Returns the pivot column of each of the leading rows;
/// its length is the rank.
///
/// Columns are scanned left to right, so a column becomes a pivot exactly when
/// it is independent of the columns before it.
pub(crate) fn forward_eliminate(
    m: &mut BinaryMatrix,
    mut rhs: Option<&mut BinaryVector>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let word = col / WORD_BITS;
        let mask = 1u64 << (col % WORD_BITS);
        let Some(p) = (r..m.rows()).find(|&i| m.row_words(i)[word] & mask != 0) else {
            continue;
        };
        m.swap_rows(r, p);
        if let Some(rhs) = rhs.as_deref_mut() {
            let (a, b) = (rhs.get(r), rhs.get(p));
            rhs.set(r, b);
            rhs.set(p, a);
        }
        for i in r + 1..m.rows() {
            if m.row_words(i)[word] & mask != 0 {
                m.xor_row_into(r, i, word);
                if let Some(rhs) = rhs.as_deref_mut() {
                    if rhs.get(r) {
                        rhs.flip(i);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Clears every pivot column above its pivot, turning an echelon form into
/// the reduced row echelon form.
fn back_eliminate(m: &mut BinaryMatrix, pivots: &[usize]) {
    for (r, &col) in pivots.iter().enumerate().rev() {
        let word = col / WORD_BITS;
        let mask = 1u64 << (col % WORD_BITS);
        for i in 0..r {
            if m.row_words(i)[word] & mask != 0 {
                m.xor_row_into(r, i, word);
            }
        }
    }
}

/// Solves `m x = rhs` over all columns of `m`, consuming the system.
///
/// Pivots are taken leftmost first and free variables are set to zero, so the
/// answer does not depend on the row order of the input.
pub(crate) fn solve_dense(mut m: BinaryMatrix, mut rhs: BinaryVector) -> Option<BinaryVector> {
    debug_assert_eq!(m.rows(), rhs.len());
    let pivots = forward_eliminate(&mut m, Some(&mut rhs));
    if (pivots.len()..m.rows()).any(|i| rhs.get(i)) {
        return None;
    }
    let mut x = BinaryVector::zeros(m.cols());
    for (r, &col) in pivots.iter().enumerate().rev() {
        // x is still zero at `col` and left of it on this row, so the dot
        // product only picks up already-fixed variables.
        let parity = m
            .row_words(r)
            .iter()
            .zip(x.words())
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1;
        if parity != rhs.get(r) {
            x.set(col, true);
        }
    }
    Some(x)
}

/// GF(2) rank. The input is left untouched.
pub fn rank(m: &BinaryMatrix) -> usize {
    forward_eliminate(&mut m.clone(), None).len()
}

fn normalize_support(support: &[usize], cols: usize) -> Result<Vec<usize>> {
    let mut cols_sorted = support.to_vec();
    cols_sorted.sort_unstable();
    cols_sorted.dedup();
    if let Some(&last) = cols_sorted.last() {
        if last >= cols {
            return Err(Error::IndexOutOfRange {
                index: last,
                len: cols,
            });
        }
    }
    Ok(cols_sorted)
}

/// Finds `x` with `m x = s` and `supp(x) ⊆ support`.
///
/// The support columns are eliminated in ascending order and free variables
/// are left at zero, which makes the result deterministic.
pub fn solve_constrained(
    m: &BinaryMatrix,
    s: &BinaryVector,
    support: &[usize],
) -> Result<BinaryVector> {
    check_len(m.rows(), s.len(), "matrix rows vs syndrome length")?;
    let columns = normalize_support(support, m.cols())?;
    let local = m.select_columns(&columns);
    let x = solve_dense(local, s.clone()).ok_or(Error::NoSolution)?;
    Ok(BinaryVector::from_indices(
        m.cols(),
        x.iter_ones().map(|k| columns[k]),
    ))
}

/// A basis of `ker m`, one vector per free column of the reduced form.
pub fn kernel_basis(m: &BinaryMatrix) -> Vec<BinaryVector> {
    let mut reduced = m.clone();
    let pivots = forward_eliminate(&mut reduced, None);
    back_eliminate(&mut reduced, &pivots);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BinaryVector::zeros(m.cols());
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if reduced.get(r, free) {
                    v.set(pc, true);
                }
            }
            v
        })
        .collect()
}

/// Precomputed reduced row echelon form for repeated row-space queries.
#[derive(Clone, Debug)]
pub struct RowSpace {
    basis: BinaryMatrix,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &BinaryMatrix) -> Self {
        let mut reduced = m.clone();
        let pivots = forward_eliminate(&mut reduced, None);
        back_eliminate(&mut reduced, &pivots);
        let mut basis = BinaryMatrix::zeros(pivots.len(), m.cols());
        for r in 0..pivots.len() {
            basis.row_words_mut(r).copy_from_slice(reduced.row_words(r));
        }
        Self { basis, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.basis.cols()
    }

    /// Membership test. In reduced form the only candidate combination is the
    /// XOR of the basis rows whose pivot bit is set in `v`.
    pub fn contains(&self, v: &BinaryVector) -> bool {
        assert_eq!(v.len(), self.basis.cols(), "vector length vs row space");
        let mut rest = v.clone();
        for (r, &col) in self.pivots.iter().enumerate() {
            if rest.get(col) {
                for (a, b) in rest.words_mut().iter_mut().zip(self.basis.row_words(r)) {
                    *a ^= b;
                }
            }
        }
        rest.is_zero()
    }
}

/// One-off row-space membership test; use [`RowSpace`] for repeated queries.
pub fn in_row_space(m: &BinaryMatrix, v: &BinaryVector) -> Result<bool> {
    check_len(m.cols(), v.len(), "matrix columns vs vector length")?;
    Ok(RowSpace::new(m).contains(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_rep3() -> BinaryMatrix {
        BinaryMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]])
    }

    #[test]
    fn mat_vec_examples() {
        let v = BinaryVector::from_bits(&[0, 1, 0]);
        assert_eq!(mat_vec_mul(&h_rep3(), &v).unwrap().to_string(), "11");
        let zero = BinaryVector::zeros(3);
        assert!(mat_vec_mul(&h_rep3(), &zero).unwrap().is_zero());
        let v = BinaryVector::from_bits(&[1, 0, 1]);
        assert_eq!(mat_vec_mul(&BinaryMatrix::identity(3), &v).unwrap(), v);
        assert!(mat_vec_mul(&h_rep3(), &BinaryVector::zeros(4)).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&h_rep3()), 2);
        assert_eq!(rank(&BinaryMatrix::zeros(4, 5)), 0);
        assert_eq!(rank(&BinaryMatrix::identity(7)), 7);
        let m = h_rep3();
        let before = m.clone();
        rank(&m);
        assert_eq!(m, before);
    }

    #[test]
    fn solve_constrained_examples() {
        let s = BinaryVector::from_bits(&[1, 0]);
        let x = solve_constrained(&h_rep3(), &s, &[0, 1, 2]).unwrap();
        assert_eq!(mat_vec_mul(&h_rep3(), &x).unwrap(), s);
        // leftmost pivot, free variable zero
        assert_eq!(x.to_string(), "100");

        let x = solve_constrained(&h_rep3(), &BinaryVector::zeros(2), &[]).unwrap();
        assert!(x.is_zero());

        let m = BinaryMatrix::from_dense(&[vec![1, 0]]);
        let s = BinaryVector::from_bits(&[1]);
        assert!(matches!(
            solve_constrained(&m, &s, &[1]),
            Err(Error::NoSolution)
        ));
        assert!(solve_constrained(&m, &s, &[2]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&h_rep3());
        assert_eq!(k, vec![BinaryVector::from_bits(&[1, 1, 1])]);
        assert!(kernel_basis(&BinaryMatrix::identity(4)).is_empty());
        let k = kernel_basis(&BinaryMatrix::zeros(1, 2));
        assert_eq!(k.len(), 2);
        assert_eq!(rank(&BinaryMatrix::from_row_vectors(2, &k)), 2);
    }

    #[test]
    fn row_space_examples() {
        let v = BinaryVector::from_bits(&[1, 0, 1]);
        assert!(in_row_space(&h_rep3(), &v).unwrap());
        assert!(in_row_space(&h_rep3(), &BinaryVector::zeros(3)).unwrap());
        let m = BinaryMatrix::from_dense(&[vec![1, 1, 0]]);
        assert!(!in_row_space(&m, &BinaryVector::from_bits(&[1, 0, 0])).unwrap());
    }
}
