mod common;

use hgp_erasure_core::gf2::{kernel_basis, rank};
use hgp_erasure_core::{is_stopping_set, HgpCode};
use proptest::prelude::*;

/// `k` of the product from the classical parameters alone.
fn expected_k(code: &HgpCode) -> usize {
    let h = code.input_graph().to_matrix();
    let k = h.cols() - rank(&h);
    let kt = h.rows() - rank(&h);
    k * k + kt * kt
}

#[test]
fn fixture_sizes() {
    let s = common::surface13();
    assert_eq!((s.num_qubits(), s.num_x_checks(), s.num_z_checks(), s.k_logical()), (13, 6, 6, 1));
    let h = HgpCode::new(&common::hamming()).unwrap();
    assert_eq!((h.num_qubits(), h.num_x_checks(), h.num_z_checks()), (58, 21, 21));
    assert_eq!(h.k_logical(), 16);
}

#[test]
fn generator_supports_are_stopping_sets() {
    for (name, code) in common::test_codes() {
        for i in 0..code.num_x_checks() {
            let supp = code.h_x().row_support(i);
            assert!(is_stopping_set(code.tanner_z(), &supp), "{name} generator {i}");
        }
    }
}

#[test]
fn lifted_stopping_sets_are_stopping_sets() {
    for seed in 0..3 {
        let g = common::peg(14, 10, 3, seed);
        let code = HgpCode::new(&g).unwrap();
        let vertical = common::harvest_stopping_sets(&g, 0.45, 300, seed);
        let horizontal = common::harvest_stopping_sets(&g.transpose(), 0.6, 300, seed);
        assert!(!vertical.is_empty() && !horizontal.is_empty());
        for s in &vertical {
            for b in 0..code.input_bits() {
                assert!(is_stopping_set(code.tanner_z(), &code.lift_vertical(b, s)));
            }
        }
        for s in &horizontal {
            for a2 in 0..code.input_checks() {
                assert!(is_stopping_set(code.tanner_z(), &code.lift_horizontal(a2, s)));
            }
        }
    }
}

#[test]
fn logical_count_matches_kernel_quotient() {
    for (name, code) in common::test_codes() {
        let kernel = kernel_basis(code.h_z()).len();
        assert_eq!(kernel - code.rank_x(), code.k_logical(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_products_are_css(n in 4usize..20, r in 3usize..10, seed in any::<u64>()) {
        prop_assume!(3 <= r && n * 3 >= r);
        let code = HgpCode::new(&common::peg(n, r, 3, seed)).unwrap();
        prop_assert!(code.is_css_valid());
        prop_assert!(code.h_x().mul_transpose(code.h_z()).unwrap().is_zero());
        prop_assert_eq!(code.num_qubits(), n * n + r * r);
        prop_assert_eq!(code.k_logical(), expected_k(&code));
        for q in 0..code.num_qubits() {
            prop_assert_eq!(code.qubit_index(code.qubit_coord(q)), Some(q));
        }
        for c in 0..code.num_z_checks() {
            prop_assert_eq!(code.z_check_index(code.z_check_coord(c)), Some(c));
        }
        for c in 0..code.num_x_checks() {
            prop_assert_eq!(code.x_check_index(code.x_check_coord(c)), Some(c));
        }
    }
}
