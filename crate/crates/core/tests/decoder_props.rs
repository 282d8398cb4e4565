mod common;

use hgp_erasure_core::gf2::solve_constrained;
use hgp_erasure_core::vh::Orientation;
use hgp_erasure_core::{
    classify, classify_residual, decompose, erasure_supports_logical, ml_decode, sample,
    sample_with_erasure, vh_decode, BinaryVector, ClusterStatus, DecoderKind, HgpCode, RngStream,
    Verdict, VhGraph,
};
use proptest::prelude::*;

const DECODERS: [DecoderKind; 7] = [
    DecoderKind::Peeling,
    DecoderKind::Pruned(1),
    DecoderKind::Pruned(2),
    DecoderKind::Vh,
    DecoderKind::Combined(1),
    DecoderKind::Combined(2),
    DecoderKind::Ml,
];

fn is_forest(g: &VhGraph) -> bool {
    let mut parent: Vec<usize> = (0..g.clusters.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &g.edges {
        let (a, b) = (find(&mut parent, e.vertical), find(&mut parent, e.horizontal));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

#[test]
fn channel_samples_are_consistent() {
    for (_, code) in common::test_codes() {
        for t in 0..200 {
            let rng = RngStream::new(11, t);
            let s = sample(&code, 0.3, &rng).unwrap();
            assert!(s.error.is_subset_of(&s.erasure));
            assert_eq!(code.syndrome(&s.error).unwrap(), s.syndrome);
            assert_eq!(sample(&code, 0.3, &rng).unwrap(), s);
        }
        let none = sample(&code, 0.0, &RngStream::new(1, 1)).unwrap();
        assert!(none.erasure.is_zero());
        let all = sample(&code, 1.0, &RngStream::new(1, 1)).unwrap();
        assert_eq!(all.erasure.weight(), code.num_qubits());
    }
}

#[test]
fn decoders_are_sound_and_ordered_per_sample() {
    for (name, code) in common::test_codes() {
        for &p in &[0.05, 0.15, 0.3, 0.45] {
            for t in 0..300 {
                let s = sample(&code, p, &RngStream::new(7, t)).unwrap();
                let mut corrected = Vec::new();
                for d in DECODERS {
                    let out = d.decode(&code, &s).unwrap();
                    if out.is_corrected() {
                        assert_eq!(code.syndrome(&out.correction).unwrap(), s.syndrome, "{name} {d}");
                        assert!(out.correction.is_subset_of(&s.erasure), "{name} {d}");
                        assert!(out.residual_erasure.is_zero());
                        classify_residual(&code, &out.correction, &s.error, &d.label()).unwrap();
                    } else {
                        assert!(!out.residual_erasure.is_zero());
                        assert!(out.residual_erasure.is_subset_of(&s.erasure));
                    }
                    corrected.push(out.is_corrected());
                }
                // Peeling ⊆ Pruned(1) ⊆ Combined(1); ML always corrects.
                assert!(!corrected[0] || corrected[1], "{name} p={p} t={t}");
                assert!(!corrected[1] || corrected[4], "{name} p={p} t={t}");
                assert!(!corrected[2] || corrected[5], "{name} p={p} t={t}");
                assert!(corrected[6]);
            }
        }
    }
}

#[test]
fn without_an_erased_logical_every_correction_succeeds() {
    for (name, code) in common::test_codes() {
        for t in 0..400 {
            let s = sample(&code, 0.2, &RngStream::new(5, t)).unwrap();
            if erasure_supports_logical(&code, &s.erasure).unwrap() {
                continue;
            }
            for d in DECODERS {
                assert_ne!(d.verdict(&code, &s).unwrap(), Verdict::LogicalFailure, "{name} {d} t={t}");
            }
            assert_eq!(DecoderKind::Ml.verdict(&code, &s).unwrap(), Verdict::Success);
        }
    }
}

#[test]
fn acyclic_vh_graphs_are_decoded() {
    let mut forests = 0;
    for (name, code) in common::test_codes() {
        for &p in &[0.05, 0.15, 0.3] {
            for t in 0..300 {
                let s = sample(&code, p, &RngStream::new(3, t)).unwrap();
                let g = decompose(&code, &s.erasure).unwrap();
                for e in &g.edges {
                    assert_eq!(g.clusters[e.vertical].orientation, Orientation::Vertical);
                    assert_eq!(g.clusters[e.horizontal].orientation, Orientation::Horizontal);
                }
                if is_forest(&g) {
                    forests += 1;
                    let out = vh_decode(&code, &s.erasure, &s.syndrome).unwrap();
                    assert!(out.is_corrected(), "{name} p={p} t={t}");
                }
            }
        }
    }
    assert!(forests > 1000);
}

/// Exhaustive free/frozen test on one cluster.
fn brute_force_free(code: &HgpCode, qubits: &[usize], internal: &[usize], check: usize) -> bool {
    let tz = code.tanner_z();
    (1u32..1 << qubits.len()).any(|mask| {
        let mut parity = vec![false; code.num_z_checks()];
        for (i, &q) in qubits.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for &c in tz.bit_neighbors(q) {
                    parity[c] ^= true;
                }
            }
        }
        parity[check] && internal.iter().all(|&c| !parity[c])
    })
}

#[test]
fn free_and_frozen_checks_match_enumeration() {
    let (mut free, mut frozen) = (0, 0);
    for (_, code) in common::test_codes() {
        for &p in &[0.1, 0.2, 0.3] {
            for t in 0..300 {
                let s = sample(&code, p, &RngStream::new(21, t)).unwrap();
                let g = decompose(&code, &s.erasure).unwrap();
                for cl in g.clusters.iter().filter(|c| c.qubits.len() <= 20) {
                    match classify(&code, cl) {
                        ClusterStatus::FreeDangling { check } => {
                            free += 1;
                            assert!(brute_force_free(&code, &cl.qubits, &cl.internal_checks, check));
                        }
                        ClusterStatus::FrozenDangling { check } => {
                            frozen += 1;
                            assert!(!brute_force_free(&code, &cl.qubits, &cl.internal_checks, check));
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    assert!(free > 50 && frozen > 50, "free={free} frozen={frozen}");
}

#[test]
fn lifts_of_classical_stopping_sets() {
    for seed in 0..3 {
        let g = common::peg(14, 10, 3, seed);
        let code = HgpCode::new(&g).unwrap();
        let n = code.num_qubits();
        let vertical = common::harvest_stopping_sets(&g, 0.45, 200, seed);
        let horizontal = common::harvest_stopping_sets(&g.transpose(), 0.6, 200, seed);
        let lifts = vertical
            .iter()
            .flat_map(|s| (0..code.input_bits()).map(|b| code.lift_vertical(b, s)))
            .chain(
                horizontal
                    .iter()
                    .flat_map(|s| (0..code.input_checks()).map(|a| code.lift_horizontal(a, s))),
            );
        for (i, lift) in lifts.enumerate() {
            let erasure = BinaryVector::from_indices(n, lift);
            let s = sample_with_erasure(&code, &erasure, &RngStream::new(seed, i as u64)).unwrap();
            assert!(!DecoderKind::Peeling.decode(&code, &s).unwrap().is_corrected());
            let out = vh_decode(&code, &s.erasure, &s.syndrome).unwrap();
            assert!(out.is_corrected());
            assert_eq!(out.stats.clusters_deferred, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ml_is_the_canonical_solution(which in 0usize..4, p in 0.0f64..0.6, seed in any::<u64>()) {
        let (_, code) = common::test_codes().swap_remove(which);
        let s = sample(&code, p, &RngStream::new(seed, 0)).unwrap();
        let ml = ml_decode(&code, &s.erasure, &s.syndrome).unwrap();
        let reference = solve_constrained(code.h_z(), &s.syndrome, &s.erasure.support()).unwrap();
        prop_assert_eq!(ml, reference);
    }
}
