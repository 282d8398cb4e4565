#![allow(dead_code)]

use hgp_erasure_core::{peg_generate, HgpCode, PegParams, TannerGraph};

/// Repetition code on 3 bits; its product is the 13-qubit surface code.
pub fn rep3() -> TannerGraph {
    TannerGraph::from_edges(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap()
}

/// Hamming [7,4] parity checks.
pub fn hamming() -> TannerGraph {
    let rows = [[1, 0, 1, 0, 1, 0, 1], [0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]];
    let edges = rows
        .iter()
        .enumerate()
        .flat_map(|(c, r)| r.iter().enumerate().filter(|(_, &x)| x == 1).map(move |(b, _)| (c, b)));
    TannerGraph::from_edges(3, 7, edges).unwrap()
}

pub fn peg(n: usize, r: usize, dv: usize, seed: u64) -> TannerGraph {
    peg_generate(&PegParams {
        num_bits: n,
        num_checks: r,
        bit_degree: dv,
        seed,
    })
    .unwrap()
}

pub fn surface13() -> HgpCode {
    HgpCode::new(&rep3()).unwrap()
}

/// Small codes used across the property tests.
pub fn test_codes() -> Vec<(&'static str, HgpCode)> {
    vec![
        ("surface13", surface13()),
        ("hamming58", HgpCode::new(&hamming()).unwrap()),
        ("peg12x8", HgpCode::new(&peg(12, 8, 3, 5)).unwrap()),
        ("peg16x12", HgpCode::new(&peg(16, 12, 3, 1)).unwrap()),
    ]
}

use hgp_erasure_core::{classical_peel, BinaryVector, PeelOutcome};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Distinct non-empty stopping sets left behind by failed peeling runs on
/// random erasures of `g`.
pub fn harvest_stopping_sets(g: &TannerGraph, p: f64, attempts: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = BinaryVector::zeros(g.num_checks());
    let mut found: Vec<Vec<usize>> = Vec::new();
    for _ in 0..attempts {
        let erasure =
            BinaryVector::from_indices(g.num_bits(), (0..g.num_bits()).filter(|_| rng.gen::<f64>() < p));
        if let PeelOutcome::Stuck { residual } = classical_peel(g, &erasure, &zero).unwrap() {
            let set = residual.support();
            if !found.contains(&set) {
                found.push(set);
            }
        }
    }
    found
}
