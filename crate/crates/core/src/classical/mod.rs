//! Classical linear codes represented by their Tanner graphs.

mod alist;
mod peg;
pub(crate) mod peel;

pub use alist::{load_alist, read_alist, save_alist, write_alist};
pub use peg::{peg_generate, PegParams};

use crate::error::{check_len, Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};
use peel::Peeler;

/// Bipartite check/bit adjacency of a parity-check matrix.
///
/// Both adjacency directions are stored, sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TannerGraph {
    num_checks: usize,
    num_bits: usize,
    check_adj: Vec<Vec<usize>>,
    bit_adj: Vec<Vec<usize>>,
}

impl TannerGraph {
    /// Graph with no edges.
    pub fn empty(num_checks: usize, num_bits: usize) -> Self {
        Self {
            num_checks,
            num_bits,
            check_adj: vec![Vec::new(); num_checks],
            bit_adj: vec![Vec::new(); num_bits],
        }
    }

    /// Builds a graph from `(check, bit)` pairs. Duplicate edges are rejected.
    pub fn from_edges<I>(num_checks: usize, num_bits: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(num_checks, num_bits);
        for (c, b) in edges {
            if c >= num_checks {
                return Err(Error::IndexOutOfRange {
                    index: c,
                    len: num_checks,
                });
            }
            if b >= num_bits {
                return Err(Error::IndexOutOfRange {
                    index: b,
                    len: num_bits,
                });
            }
            g.check_adj[c].push(b);
            g.bit_adj[b].push(c);
        }
        for adj in g.check_adj.iter_mut().chain(g.bit_adj.iter_mut()) {
            adj.sort_unstable();
            if adj.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParams("duplicate edge in Tanner graph".into()));
            }
        }
        Ok(g)
    }

    pub fn from_matrix(h: &BinaryMatrix) -> Self {
        let mut g = Self::empty(h.rows(), h.cols());
        for c in 0..h.rows() {
            for b in h.row(c).iter_ones() {
                g.check_adj[c].push(b);
                g.bit_adj[b].push(c);
            }
        }
        g
    }

    pub fn to_matrix(&self) -> BinaryMatrix {
        let mut h = BinaryMatrix::zeros(self.num_checks, self.num_bits);
        for (c, bits) in self.check_adj.iter().enumerate() {
            for &b in bits {
                h.set(c, b, true);
            }
        }
        h
    }

    /// The Tanner graph of `Hᵀ`: checks and bits swap roles.
    pub fn transpose(&self) -> Self {
        Self {
            num_checks: self.num_bits,
            num_bits: self.num_checks,
            check_adj: self.bit_adj.clone(),
            bit_adj: self.check_adj.clone(),
        }
    }

    #[inline]
    pub fn num_checks(&self) -> usize {
        self.num_checks
    }

    #[inline]
    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn num_edges(&self) -> usize {
        self.check_adj.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn check_neighbors(&self, c: usize) -> &[usize] {
        &self.check_adj[c]
    }

    #[inline]
    pub fn bit_neighbors(&self, b: usize) -> &[usize] {
        &self.bit_adj[b]
    }

    pub fn has_edge(&self, c: usize, b: usize) -> bool {
        self.check_adj[c].binary_search(&b).is_ok()
    }

    /// Inserts an edge keeping both lists sorted. Caller guarantees it is new.
    pub(crate) fn insert_edge(&mut self, c: usize, b: usize) {
        let pos = self.check_adj[c].partition_point(|&x| x < b);
        self.check_adj[c].insert(pos, b);
        let pos = self.bit_adj[b].partition_point(|&x| x < c);
        self.bit_adj[b].insert(pos, c);
    }

    /// Syndrome `H e`, computed from the adjacency lists.
    pub fn syndrome(&self, e: &BinaryVector) -> Result<BinaryVector> {
        check_len(self.num_bits, e.len(), "bits vs error length")?;
        let mut s = BinaryVector::zeros(self.num_checks);
        for b in e.iter_ones() {
            for &c in &self.bit_adj[b] {
                s.flip(c);
            }
        }
        Ok(s)
    }
}

/// Result of the classical peeling decoder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeelOutcome {
    Decoded(BinaryVector),
    /// Peeling ran out of dangling checks; the residual erasure is a stopping set.
    Stuck { residual: BinaryVector },
}

/// Classical peeling decoder: repeatedly resolves the single erased bit of a
/// dangling check until no dangling check remains.
pub fn classical_peel(
    g: &TannerGraph,
    erasure: &BinaryVector,
    syndrome: &BinaryVector,
) -> Result<PeelOutcome> {
    check_len(g.num_bits(), erasure.len(), "bits vs erasure length")?;
    check_len(g.num_checks(), syndrome.len(), "checks vs syndrome length")?;
    let mut peeler = Peeler::new(g, erasure.clone(), syndrome.clone());
    peeler.run();
    Ok(if peeler.is_done() {
        PeelOutcome::Decoded(peeler.into_parts().correction)
    } else {
        PeelOutcome::Stuck {
            residual: peeler.into_parts().erasure,
        }
    })
}

/// True iff no check has exactly one neighbor in `bits`.
pub fn is_stopping_set(g: &TannerGraph, bits: &[usize]) -> bool {
    let mut hits = vec![0u32; g.num_checks()];
    let mut seen = vec![false; g.num_bits()];
    for &b in bits {
        if std::mem::replace(&mut seen[b], true) {
            continue;
        }
        for &c in g.bit_neighbors(b) {
            hits[c] += 1;
        }
    }
    hits.iter().all(|&h| h != 1)
}
