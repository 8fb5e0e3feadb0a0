use opineq_core::constants::{kantorovich, weights, SandwichBounds};
use opineq_core::linalg::{eigh, loewner_gap, matrix_power, op_norm};
use opineq_core::maps::{apply_map, random_map, validate_map, MAP_KINDS};
use opineq_core::means::{arithmetic_mean, bracket_term, geometric_mean};
use opineq_core::rng::{derive_seed, SplitMix64};
use opineq_core::sampler::{random_hermitian, sample_instance};
use opineq_core::HermitianMatrix;
use proptest::prelude::*;

fn rel_diff(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / (1.0 + b.frobenius_norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kantorovich_is_symmetric_and_at_least_one(h in 1e-3f64..1e3) {
        let k = kantorovich(h).unwrap();
        prop_assert!(k >= 1.0);
        prop_assert!((k - kantorovich(1.0 / h).unwrap()).abs() <= 1e-12 * k);
    }

    #[test]
    fn weights_stay_in_range(nu in 0.0f64..=1.0) {
        let (r, r1) = weights(nu).unwrap();
        prop_assert!((0.0..=0.5).contains(&r));
        prop_assert!((0.0..=0.5).contains(&r1));
    }

    #[test]
    fn geometric_mean_swaps_with_complementary_weight(
        n in 1usize..5, seed in any::<u64>(), nu in 0.0f64..=1.0, m in 0.3f64..2.0, h in 1.2f64..20.0,
    ) {
        let inst = sample_instance(SandwichBounds::common(m, m * h), n, seed, false).unwrap();
        let ab = geometric_mean(&inst.a, &inst.b, nu).unwrap();
        let ba = geometric_mean(&inst.b, &inst.a, 1.0 - nu).unwrap();
        prop_assert!(rel_diff(&ab, &ba) <= 1e-10);
    }

    #[test]
    fn means_are_ordered(
        n in 1usize..5, seed in any::<u64>(), nu in 0.0f64..=1.0, m in 0.3f64..2.0, h in 1.2f64..20.0,
    ) {
        let inst = sample_instance(SandwichBounds::common(m, m * h), n, seed, false).unwrap();
        let g = geometric_mean(&inst.a, &inst.b, nu).unwrap();
        let a = arithmetic_mean(&inst.a, &inst.b, nu).unwrap();
        let x = bracket_term(&inst.a, &inst.b, m, m * h, nu).unwrap();
        let scale = 1.0 + op_norm(&a);
        prop_assert!(loewner_gap(&g, &a).unwrap() >= -1e-10 * scale);
        prop_assert!(loewner_gap(&a, &x).unwrap() >= -1e-10 * scale);
    }

    #[test]
    fn maps_are_unital_and_positive(n in 1usize..6, seed in any::<u64>(), k in 0usize..6) {
        let phi = random_map(n, MAP_KINDS[k], seed).unwrap();
        let out = apply_map(&phi, &HermitianMatrix::identity(n)).unwrap();
        prop_assert!(rel_diff(&out, &HermitianMatrix::identity(phi.output_dim())) <= 1e-12);
        let report = validate_map(&phi, 4, derive_seed(seed, 9)).unwrap();
        prop_assert!(report.passes, "{:?}", report);
    }

    #[test]
    fn spectral_calculus_is_consistent(n in 1usize..8, seed in any::<u64>(), t in 0.1f64..3.0) {
        let a = random_hermitian(n, seed);
        let d = eigh(&a);
        prop_assert!(rel_diff(&d.reconstruct(), &a) <= 1e-12);
        prop_assert!(d.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let shift = 1.0 - d.min_eigenvalue();
        let pd = a.add(&HermitianMatrix::scalar(n, shift)).unwrap();
        let forth = matrix_power(&pd, t).unwrap();
        let back = matrix_power(&forth, 1.0 / t).unwrap();
        prop_assert!(rel_diff(&back, &pd) <= 1e-9);
    }

    #[test]
    fn derived_streams_are_reproducible(seed in any::<u64>(), i in any::<u64>()) {
        let a: Vec<u64> = { let mut r = SplitMix64::new(derive_seed(seed, i)); (0..4).map(|_| r.next_u64()).collect() };
        let b: Vec<u64> = { let mut r = SplitMix64::new(derive_seed(seed, i)); (0..4).map(|_| r.next_u64()).collect() };
        prop_assert_eq!(&a, &b);
        prop_assert_ne!(derive_seed(seed, i), derive_seed(seed, i.wrapping_add(1)));
    }
}
