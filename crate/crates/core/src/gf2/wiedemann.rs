//! Randomized Krylov-subspace solver in the style of Wiedemann.
//!
//! The restricted system `A x = s` is compressed to a square system
//! `(R A) x = R s` with a random `R`, the minimal polynomial of the Krylov
//! sequence is recovered with Berlekamp–Massey on a random scalar projection,
//! and the candidate solution is verified against the original system.
//! Failed attempts are retried; after `MAX_ATTEMPTS` the solver falls back to
//! elimination so the result is always correct.

use rand::Rng;

use super::{normalize_support, solve_dense, BinaryMatrix, BinaryVector};
use crate::channel::RngStream;
use crate::error::{check_len, Error, Result};

const MAX_ATTEMPTS: usize = 16;

/// Same contract as [`super::solve_constrained`], computed by a randomized
/// black-box method with a deterministic fallback.
pub fn solve_probabilistic(
    m: &BinaryMatrix,
    s: &BinaryVector,
    support: &[usize],
    rng: &RngStream,
) -> Result<BinaryVector> {
    check_len(m.rows(), s.len(), "matrix rows vs syndrome length")?;
    let columns = normalize_support(support, m.cols())?;
    let a = m.select_columns(&columns);
    let lift = |x: BinaryVector| {
        BinaryVector::from_indices(m.cols(), x.iter_ones().map(|k| columns[k]))
    };

    let k = columns.len();
    if k == 0 {
        return if s.is_zero() {
            Ok(BinaryVector::zeros(m.cols()))
        } else {
            Err(Error::NoSolution)
        };
    }

    let mut gen = rng.generator();
    for _ in 0..MAX_ATTEMPTS {
        if let Some(x) = attempt(&a, s, &mut gen) {
            return Ok(lift(x));
        }
    }
    solve_dense(a, s.clone()).map(lift).ok_or(Error::NoSolution)
}

fn random_vector<R: Rng>(len: usize, rng: &mut R) -> BinaryVector {
    BinaryVector::from_indices(len, (0..len).filter(|_| rng.gen::<bool>()))
}

fn attempt<R: Rng>(a: &BinaryMatrix, s: &BinaryVector, rng: &mut R) -> Option<BinaryVector> {
    let k = a.cols();
    // Square compression: row i of R·A is the XOR of a random subset of A's rows.
    let mut square = BinaryMatrix::zeros(k, k);
    let mut b = BinaryVector::zeros(k);
    for i in 0..k {
        let pick = random_vector(a.rows(), rng);
        let mut row = BinaryVector::zeros(k);
        for j in pick.iter_ones() {
            row.xor_assign(&a.row(j));
        }
        square.row_words_mut(i).copy_from_slice(row.words());
        b.set(i, pick.dot(s));
    }

    let u = random_vector(k, rng);
    let mut krylov = Vec::with_capacity(2 * k);
    let mut v = b.clone();
    for _ in 0..2 * k {
        krylov.push(v.clone());
        v = square.mul_vec(&v).ok()?;
    }
    let sequence: Vec<bool> = krylov.iter().map(|w| u.dot(w)).collect();
    let connection = berlekamp_massey(&sequence);
    let degree = connection.len() - 1;
    // Minimal polynomial f(z) = z^L C(1/z), so f_j = c_{L-j} and f(0) = c_L.
    if degree == 0 || !connection[degree] {
        return None;
    }
    let mut x = BinaryVector::zeros(k);
    for j in 1..=degree {
        if connection[degree - j] {
            x.xor_assign(&krylov[j - 1]);
        }
    }
    (a.mul_vec(&x).ok()? == *s).then_some(x)
}

/// Shortest linear recurrence of a binary sequence. Returns the connection
/// polynomial coefficients `c_0 = 1, c_1, …, c_L`.
fn berlekamp_massey(seq: &[bool]) -> Vec<bool> {
    let n = seq.len();
    let mut c = vec![false; n + 1];
    let mut prev = vec![false; n + 1];
    c[0] = true;
    prev[0] = true;
    let mut len = 0usize;
    let mut shift = 1usize;
    for i in 0..n {
        let mut discrepancy = seq[i];
        for j in 1..=len {
            discrepancy ^= c[j] & seq[i - j];
        }
        if !discrepancy {
            shift += 1;
            continue;
        }
        let snapshot = (2 * len <= i).then(|| c.clone());
        for j in 0..=n - shift {
            if prev[j] {
                c[j + shift] ^= true;
            }
        }
        if let Some(t) = snapshot {
            len = i + 1 - len;
            prev = t;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    c.truncate(len + 1);
    c
}
