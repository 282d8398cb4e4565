//! Peeling decoders on the Tanner graph of `H_Z`.
//!
//! [`peel_quantum`] is the plain peeling decoder applied to a CSS code. It
//! gets stuck on the support of every X stabilizer. [`pruned_peel`] gets past
//! those: when peeling stalls it looks for a product of at most `m` X
//! generators lying inside the erasure and un-erases one of its qubits. Either
//! the hidden error or its product with that stabilizer acts trivially on the
//! qubit, so fixing it to identity loses nothing.

use crate::classical::peel::Peeler;
use crate::error::{check_len, Result};
use crate::gf2::BinaryVector;
use crate::hgp::HgpCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecodeStatus {
    Corrected,
    Aborted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecodeStats {
    pub peeled: usize,
    pub pruned: usize,
    pub generators_examined: usize,
    pub clusters_solved: usize,
    pub clusters_deferred: usize,
}

impl DecodeStats {
    pub(crate) fn merge(&mut self, other: &DecodeStats) {
        self.peeled += other.peeled;
        self.pruned += other.pruned;
        self.generators_examined += other.generators_examined;
        self.clusters_solved += other.clusters_solved;
        self.clusters_deferred += other.clusters_deferred;
    }
}

/// Result of an erasure decoder run.
///
/// `correction` is meaningful when the status is `Corrected`; on abort it
/// holds the partial correction accumulated before the decoder stopped.
/// `residual_erasure` is empty on success and nonzero on abort.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    pub correction: BinaryVector,
    pub residual_erasure: BinaryVector,
    pub stats: DecodeStats,
}

impl DecodeOutcome {
    pub fn is_corrected(&self) -> bool {
        self.status == DecodeStatus::Corrected
    }
}

/// Maximum number of X generators multiplied together when pruning.
/// `m = 0` disables pruning.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PruneConfig {
    pub m: usize,
}

impl PruneConfig {
    pub fn new(m: usize) -> Self {
        Self { m }
    }
}

/// Partial state left after pruned peeling; consumed by the combined decoder.
pub(crate) struct PeelRun {
    pub outcome: DecodeOutcome,
    pub residual_syndrome: BinaryVector,
}

fn check_inputs(code: &HgpCode, erasure: &BinaryVector, s: &BinaryVector) -> Result<()> {
    check_len(code.num_qubits(), erasure.len(), "qubits vs erasure length")?;
    check_len(code.num_z_checks(), s.len(), "Z checks vs syndrome length")
}

/// Plain peeling with dangling Z generators.
pub fn peel_quantum(code: &HgpCode, erasure: &BinaryVector, s: &BinaryVector) -> Result<DecodeOutcome> {
    pruned_peel(code, erasure, s, PruneConfig::new(0))
}

/// Pruned peeling decoder.
pub fn pruned_peel(
    code: &HgpCode,
    erasure: &BinaryVector,
    s: &BinaryVector,
    cfg: PruneConfig,
) -> Result<DecodeOutcome> {
    Ok(pruned_peel_run(code, erasure, s, cfg)?.outcome)
}

pub(crate) fn pruned_peel_run(
    code: &HgpCode,
    erasure: &BinaryVector,
    s: &BinaryVector,
    cfg: PruneConfig,
) -> Result<PeelRun> {
    check_inputs(code, erasure, s)?;
    let mut stats = DecodeStats::default();
    let mut peeler = Peeler::new(code.tanner_z(), erasure.clone(), s.clone());
    peeler.run();
    // One pruning step per stall; another needs peeling progress first.
    while !peeler.is_done() && cfg.m > 0 {
        let found = search_erased_stabilizer(code, peeler.erasure(), cfg.m, &mut stats.generators_examined);
        let Some(support) = found else { break };
        peeler.unerase(support[0]);
        stats.pruned += 1;
        let before = peeler.peeled();
        peeler.run();
        if peeler.peeled() == before {
            break;
        }
    }
    let done = peeler.is_done();
    let parts = peeler.into_parts();
    stats.peeled = parts.peeled;
    let outcome = DecodeOutcome {
        status: if done {
            DecodeStatus::Corrected
        } else {
            DecodeStatus::Aborted
        },
        correction: parts.correction,
        residual_erasure: parts.erasure,
        stats,
    };
    Ok(PeelRun {
        outcome,
        residual_syndrome: parts.syndrome,
    })
}

/// Support of some product of at most `m` X generators contained in the
/// erasure, or `None`.
///
/// Only generators touching the erasure are considered. Products are searched
/// by increasing number of factors; within a size the first factor runs in
/// increasing index order and each further factor must cover the lowest
/// qubit of the partial product that still lies outside the erasure.
pub fn find_erased_stabilizer(code: &HgpCode, erasure: &BinaryVector, m: usize) -> Option<Vec<usize>> {
    let mut examined = 0;
    search_erased_stabilizer(code, erasure, m, &mut examined)
}

/// Symmetric difference of two sorted index lists.
fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

struct Search<'a> {
    code: &'a HgpCode,
    erasure: &'a BinaryVector,
    is_candidate: Vec<bool>,
    max_weight: usize,
    examined: usize,
}

impl Search<'_> {
    fn extend(&mut self, chosen: &mut Vec<usize>, product: &[usize], size: usize) -> Option<Vec<usize>> {
        self.examined += 1;
        let outside: Vec<usize> = product
            .iter()
            .copied()
            .filter(|&q| !self.erasure.get(q))
            .collect();
        if outside.is_empty() && !product.is_empty() {
            return (chosen.len() == size).then(|| product.to_vec());
        }
        let slots = size - chosen.len();
        if slots == 0 || outside.len() > slots * self.max_weight {
            return None;
        }
        let first = chosen[0];
        let tx = self.code.tanner_x();
        let next: Vec<usize> = match outside.first() {
            Some(&q) => tx.bit_neighbors(q).to_vec(),
            None => (first + 1..tx.num_checks()).collect(),
        };
        for g in next {
            if g <= first || !self.is_candidate[g] || chosen.contains(&g) {
                continue;
            }
            let merged = sym_diff(product, tx.check_neighbors(g));
            chosen.push(g);
            let hit = self.extend(chosen, &merged, size);
            chosen.pop();
            if hit.is_some() {
                return hit;
            }
        }
        None
    }
}

pub(crate) fn search_erased_stabilizer(
    code: &HgpCode,
    erasure: &BinaryVector,
    m: usize,
    examined: &mut usize,
) -> Option<Vec<usize>> {
    if m == 0 || erasure.is_zero() {
        return None;
    }
    let tx = code.tanner_x();
    let mut is_candidate = vec![false; tx.num_checks()];
    for q in erasure.iter_ones() {
        for &g in tx.bit_neighbors(q) {
            is_candidate[g] = true;
        }
    }
    let candidates: Vec<usize> = (0..tx.num_checks()).filter(|&g| is_candidate[g]).collect();
    let max_weight = candidates
        .iter()
        .map(|&g| tx.check_neighbors(g).len())
        .max()
        .unwrap_or(0);
    let mut search = Search {
        code,
        erasure,
        is_candidate,
        max_weight,
        examined: 0,
    };
    let mut found = None;
    'sizes: for size in 1..=m {
        for &g in &candidates {
            let mut chosen = vec![g];
            if let Some(hit) = search.extend(&mut chosen, tx.check_neighbors(g), size) {
                found = Some(hit);
                break 'sizes;
            }
        }
    }
    *examined += search.examined;
    found
}
