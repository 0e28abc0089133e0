//! Property tests over seeded inputs.

use proptest::prelude::*;

use selftest::matcore::{kron, matricize, sgn_sym, sym_eig, vectorize};
use selftest::repcat::{build_distinguished, cyclic_variant, direct_sum, distinguished_ranks, functor_t};
use selftest::strategy::{born_correlation, check_synchronous, strategy_sn};
use selftest::verifier::{dilate, solve_multiplicities};
use selftest::{Matrix64, Vector64};

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix64> {
    proptest::collection::vec(-2.0f64..2.0, rows * cols)
        .prop_map(move |v| Matrix64::from_row_major(rows, cols, v).unwrap())
}

fn symmetric(n: usize) -> impl Strategy<Value = Matrix64> {
    matrix(n, n).prop_map(|m| m.symmetrized())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_bilinear(a in matrix(2, 3), b in matrix(2, 3), c in matrix(3, 2), s in -3.0f64..3.0) {
        let lhs = kron(&(&a.scale(s) + &b), &c);
        let rhs = &kron(&a, &c).scale(s) + &kron(&b, &c);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_mixed_product(a in matrix(2, 3), b in matrix(3, 2), c in matrix(3, 2), d in matrix(2, 2)) {
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-11);
    }

    #[test]
    fn matricize_inverts_vectorize(m in matrix(3, 4)) {
        let v: Vector64 = vectorize(&m);
        prop_assert_eq!(matricize(&v, 3, 4).unwrap(), m);
    }

    #[test]
    fn sign_is_an_involution_commuting_with_its_argument(a in symmetric(5), s in 0.1f64..10.0) {
        let eig = sym_eig(&a).unwrap();
        prop_assume!(eig.values.iter().all(|v| v.abs() > 1e-3));
        let g = sgn_sym(&a, 1e-9).unwrap();
        prop_assert!(g.matmul(&g).max_abs_diff(&Matrix64::identity(5)) < 1e-9);
        prop_assert!(g.matmul(&a).max_abs_diff(&a.matmul(&g)) < 1e-9);
        prop_assert!(sgn_sym(&a.scale(s), 1e-9).unwrap().max_abs_diff(&g) < 1e-9);
    }

    #[test]
    fn complement_functor_is_an_involution(n in 1usize..9, k in 0usize..4) {
        let rep = cyclic_variant(&build_distinguished::<f64>(n).unwrap(), k);
        let back = functor_t(&functor_t(&rep));
        prop_assert_eq!(back.alpha(), rep.alpha());
        for i in 0..4 {
            prop_assert!(back.gen(i).max_abs_diff(rep.gen(i)) < 1e-15);
        }
    }

    #[test]
    fn dilated_correlations_are_valid_and_unchanged(n in 1usize..6, anc in 1usize..4, seed in 1u64..10_000) {
        let s = strategy_sn::<f64>(n).unwrap();
        let c = born_correlation(&dilate(&s, anc, seed).unwrap()).unwrap();
        prop_assert!(c.normalization_defect() < 1e-12);
        prop_assert!(c.signalling_defect() < 1e-12);
        prop_assert!(check_synchronous(&c, 1e-12));
        prop_assert!(c.max_abs_diff(&born_correlation(&s).unwrap()).unwrap() < 1e-10);
    }

    #[test]
    fn rank_system_recovers_multiplicities(n in 1usize..40, m in proptest::array::uniform4(0usize..5)) {
        prop_assume!(m.iter().sum::<usize>() > 0);
        let base = distinguished_ranks(n);
        let ranks: [usize; 4] = std::array::from_fn(|i| (0..4).map(|k| m[k] * base[(i + 4 - k) % 4]).sum());
        prop_assert_eq!(solve_multiplicities(n, ranks).unwrap(), m);
    }

    #[test]
    fn direct_sum_ranks_add(n in 1usize..6, m in proptest::array::uniform4(0usize..3)) {
        prop_assume!(m.iter().sum::<usize>() > 0);
        let irrep = build_distinguished::<f64>(n).unwrap();
        let blocks: Vec<_> = (0..4).flat_map(|k| std::iter::repeat_n(cyclic_variant(&irrep, k), m[k])).collect();
        let rep = direct_sum(&blocks).unwrap();
        let want: [usize; 4] = std::array::from_fn(|i| blocks.iter().map(|b| b.trace_ranks()[i]).sum());
        prop_assert_eq!(rep.trace_ranks(), want);
        prop_assert!(rep.residuals().max() < 1e-12);
    }
}
