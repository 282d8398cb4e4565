//! Maximum-likelihood decoding by elimination, and trial scoring.
//!
//! Under erasure noise every error inside the erasure that matches the
//! syndrome is equally likely, and so is every coset of those errors modulo
//! stabilizers. Any solution of the restricted system is therefore a
//! maximum-likelihood estimate.

use std::fmt;

use crate::classical::peel::{Peeler, PeelerParts};
use crate::error::{check_len, Error, Result};
use crate::gf2::{self, solve_dense, BinaryMatrix, BinaryVector};
use crate::hgp::HgpCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Correction and hidden error differ by a stabilizer.
    Success,
    /// They differ by a non-trivial logical operator.
    LogicalFailure,
    /// The decoder gave up.
    Abort,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Success => "success",
            Verdict::LogicalFailure => "logical-failure",
            Verdict::Abort => "abort",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialVerdict {
    pub verdict: Verdict,
    pub decoder: String,
}

/// Solves `H_Z ê = s` over the erased columns.
///
/// Equal to `solve_constrained(h_z, s, supp(erasure))`. Peeling runs first:
/// a peeled qubit has the same value in every solution, so its column is a
/// pivot under any column order and removing it leaves the pivots of the
/// other columns unchanged. The rest is eliminated on a system built from the
/// sparse adjacency, using only the checks next to the residual erasure.
pub fn ml_decode(code: &HgpCode, erasure: &BinaryVector, s: &BinaryVector) -> Result<BinaryVector> {
    check_len(code.num_qubits(), erasure.len(), "qubits vs erasure length")?;
    check_len(code.num_z_checks(), s.len(), "Z checks vs syndrome length")?;
    let tz = code.tanner_z();
    let mut peeler = Peeler::new(tz, erasure.clone(), s.clone());
    peeler.run();
    let PeelerParts {
        erasure,
        syndrome: s,
        mut correction,
        ..
    } = peeler.into_parts();
    let columns = erasure.support();
    let mut row_of = vec![u32::MAX; code.num_z_checks()];
    let mut rows = Vec::new();
    for &q in &columns {
        for &c in tz.bit_neighbors(q) {
            if row_of[c] == u32::MAX {
                row_of[c] = rows.len() as u32;
                rows.push(c);
            }
        }
    }
    if s.iter_ones().any(|c| row_of[c] == u32::MAX) {
        return Err(Error::InconsistentSyndrome);
    }
    let mut m = BinaryMatrix::zeros(rows.len(), columns.len());
    for (j, &q) in columns.iter().enumerate() {
        for &c in tz.bit_neighbors(q) {
            m.set(row_of[c] as usize, j, true);
        }
    }
    let rhs = BinaryVector::from_indices(
        rows.len(),
        rows.iter().enumerate().filter(|(_, &c)| s.get(c)).map(|(i, _)| i),
    );
    let x = solve_dense(m, rhs).ok_or(Error::InconsistentSyndrome)?;
    for j in x.iter_ones() {
        correction.flip(columns[j]);
    }
    Ok(correction)
}

/// Scores a correction against the hidden error.
///
/// Returns `UnsoundCorrection` if the correction does not reproduce the
/// error's syndrome; such a correction is a decoder bug, not a failure mode.
pub fn classify_residual(
    code: &HgpCode,
    correction: &BinaryVector,
    hidden_error: &BinaryVector,
    decoder: &str,
) -> Result<TrialVerdict> {
    check_len(code.num_qubits(), correction.len(), "qubits vs correction length")?;
    check_len(code.num_qubits(), hidden_error.len(), "qubits vs error length")?;
    let residual = correction ^ hidden_error;
    if !code.syndrome(&residual)?.is_zero() {
        return Err(Error::UnsoundCorrection {
            decoder: decoder.to_string(),
        });
    }
    let verdict = if code.x_row_space().contains(&residual) {
        Verdict::Success
    } else {
        Verdict::LogicalFailure
    };
    Ok(TrialVerdict {
        verdict,
        decoder: decoder.to_string(),
    })
}

/// True iff some non-trivial logical operator fits inside the erasure.
///
/// Errors inside the erasure with trivial syndrome span a space of dimension
/// `|ε| - rank(H_Z|ε)`. Stabilizers inside the erasure span
/// `rank(H_X) - rank(H_X|εᶜ)` dimensions. A logical fits iff the first is
/// larger.
pub fn erasure_supports_logical(code: &HgpCode, erasure: &BinaryVector) -> Result<bool> {
    check_len(code.num_qubits(), erasure.len(), "qubits vs erasure length")?;
    let inside = erasure.support();
    let outside: Vec<usize> = (0..code.num_qubits()).filter(|&q| !erasure.get(q)).collect();
    let kernel_dim = inside.len() - gf2::rank(&code.h_z().select_columns(&inside));
    let stabilizer_dim = code.rank_x() - gf2::rank(&code.h_x().select_columns(&outside));
    Ok(kernel_dim > stabilizer_dim)
}
