use std::collections::VecDeque;

use super::TannerGraph;
use crate::gf2::BinaryVector;

/// Dangling-check peeling state over any Tanner graph.
///
/// Shared by the classical decoder and the quantum peeling decoders, which
/// run the same procedure on the Tanner graph of `H_Z`.
pub(crate) struct Peeler<'g> {
    graph: &'g TannerGraph,
    erasure: BinaryVector,
    remaining: usize,
    /// Number of erased neighbors of each check.
    pending: Vec<u32>,
    syndrome: BinaryVector,
    correction: BinaryVector,
    queue: VecDeque<usize>,
    peeled: usize,
}

pub(crate) struct PeelerParts {
    pub erasure: BinaryVector,
    pub syndrome: BinaryVector,
    pub correction: BinaryVector,
    pub peeled: usize,
}

impl<'g> Peeler<'g> {
    pub fn new(graph: &'g TannerGraph, erasure: BinaryVector, syndrome: BinaryVector) -> Self {
        let mut pending = vec![0u32; graph.num_checks()];
        let mut remaining = 0;
        for b in erasure.iter_ones() {
            remaining += 1;
            for &c in graph.bit_neighbors(b) {
                pending[c] += 1;
            }
        }
        let queue = (0..graph.num_checks()).filter(|&c| pending[c] == 1).collect();
        let correction = BinaryVector::zeros(graph.num_bits());
        Self {
            graph,
            erasure,
            remaining,
            pending,
            syndrome,
            correction,
            queue,
            peeled: 0,
        }
    }

    /// Peels until no dangling check is left (FIFO order).
    pub fn run(&mut self) {
        while let Some(c) = self.queue.pop_front() {
            if self.pending[c] != 1 {
                continue;
            }
            let g = self.graph;
            let bit = g
                .check_neighbors(c)
                .iter()
                .copied()
                .find(|&b| self.erasure.get(b))
                .expect("dangling check without an erased neighbor");
            if self.syndrome.get(c) {
                self.correction.flip(bit);
                for &k in g.bit_neighbors(bit) {
                    self.syndrome.flip(k);
                }
            }
            self.unerase(bit);
            self.peeled += 1;
        }
    }

    /// Removes `bit` from the erasure without touching the correction.
    pub fn unerase(&mut self, bit: usize) {
        debug_assert!(self.erasure.get(bit));
        self.erasure.set(bit, false);
        self.remaining -= 1;
        for &c in self.graph.bit_neighbors(bit) {
            self.pending[c] -= 1;
            if self.pending[c] == 1 {
                self.queue.push_back(c);
            }
        }
    }

    pub fn peeled(&self) -> usize {
        self.peeled
    }

    pub fn is_done(&self) -> bool {
        self.remaining == 0
    }

    pub fn erasure(&self) -> &BinaryVector {
        &self.erasure
    }

    pub fn into_parts(self) -> PeelerParts {
        PeelerParts {
            erasure: self.erasure,
            syndrome: self.syndrome,
            correction: self.correction,
            peeled: self.peeled,
        }
    }
}
