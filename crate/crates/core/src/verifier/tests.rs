use super::*;
use crate::constants::SandwichBounds;
use crate::linalg::{loewner_gap, matrix_power, CMatrix};
use crate::registry::REGISTRY;
use crate::sampler::sample_instance;
use alloc::vec;
use alloc::vec::Vec;

fn scalar_case(id: InequalityId, a: f64, b: f64, bounds: SandwichBounds, params: CaseParams) -> InequalityCase {
    let n = 2;
    let instance = Instance { a: HermitianMatrix::scalar(n, a), b: HermitianMatrix::scalar(n, b), bounds, seed: 0, n };
    InequalityCase { id, instance, phi: MapSpec::Identity { n }, params }
}

#[test]
fn amgm_scalar_example() {
    let case = scalar_case(InequalityId::Amgm, 4.0, 1.0, SandwichBounds::common(1.0, 4.0), CaseParams::default());
    let v = check_case(&case).unwrap();
    assert!((v.gap - 0.5).abs() < 1e-14, "{v:?}");
    assert!(v.holds);
}

#[test]
fn thm24_scalar_example() {
    let case = scalar_case(
        InequalityId::Thm24Inside,
        4.0,
        1.0,
        SandwichBounds::b_low(1.0, 1.5, 2.0, 4.0),
        CaseParams::new(0.5, 2.0, 1.0),
    );
    let v = check_case(&case).unwrap();
    assert!((v.lhs_norm - 9.0).abs() < 1e-12);
    assert!((v.rhs_norm - 625.0 / 64.0).abs() < 1e-12);
    assert!((v.gap - (625.0 / 64.0 - 9.0)).abs() < 1e-12);
    assert!(v.holds);
}

#[test]
fn power_gate_rejects_small_p() {
    let case = scalar_case(
        InequalityId::Thm27Inside,
        4.0,
        1.0,
        SandwichBounds::b_low(1.0, 1.5, 2.0, 4.0),
        CaseParams::new(0.5, 1.0, 1.0),
    );
    assert!(matches!(check_case(&case), Err(Error::HypothesisNotMet(_))));
}

#[test]
fn bounds_gate_rejects_wrong_kind_and_uncontained_spectra() {
    let case =
        scalar_case(InequalityId::Thm24Inside, 4.0, 1.0, SandwichBounds::common(1.0, 4.0), CaseParams::default());
    assert!(matches!(check_case(&case), Err(Error::HypothesisNotMet(_))));
    let case = scalar_case(InequalityId::Amgm, 5.0, 1.0, SandwichBounds::common(1.0, 4.0), CaseParams::default());
    assert!(matches!(check_case(&case), Err(Error::HypothesisNotMet(_))));
}

#[test]
fn every_entry_evaluates_on_a_sampled_case() {
    let config = SuiteConfig { trials: 6, dims: vec![3], ..SuiteConfig::selftest(11) };
    let report = run_suite(&config).unwrap();
    assert_eq!(report.summary.len(), REGISTRY.len());
    for c in &report.cases {
        assert!(c.error.is_none(), "{} trial {}: {:?}", c.id, c.trial, c.error);
    }
}

#[test]
fn empty_and_repeated_suites() {
    let config = SuiteConfig { trials: 0, ..SuiteConfig::selftest(1) };
    let report = run_suite(&config).unwrap();
    assert!(report.cases.is_empty() && report.passed());

    let config = SuiteConfig {
        ids: vec![InequalityId::Amgm, InequalityId::Thm27Outside],
        trials: 5,
        ..SuiteConfig::selftest(9)
    };
    let first = run_suite(&config).unwrap();
    assert_eq!(first, run_suite(&config).unwrap());
    let mut shuffled: Vec<_> = plan_suite(&config).unwrap().iter().rev().map(|s| run_trial(&config, s)).collect();
    shuffled.swap(0, 3);
    assert_eq!(aggregate(shuffled), first);
}

#[test]
fn config_validation() {
    let bad = SuiteConfig { dims: vec![], ..SuiteConfig::selftest(1) };
    assert!(matches!(run_suite(&bad), Err(Error::ConfigInvalid(_))));
    let bad =
        SuiteConfig { ids: vec![InequalityId::Thm27Inside], p_values: Some(vec![1.0]), ..SuiteConfig::selftest(1) };
    assert!(matches!(run_suite(&bad), Err(Error::ConfigInvalid(_))));
    let bad = SuiteConfig {
        ids: vec![InequalityId::Thm24Inside],
        bounds: Some(SandwichBounds::common(1.0, 2.0)),
        ..SuiteConfig::selftest(1)
    };
    assert!(matches!(run_suite(&bad), Err(Error::ConfigInvalid(_))));
}

#[test]
fn deflated_constant_is_rejected() {
    let bounds = SandwichBounds::b_low(1.0, 1.0, 1.5, 1.5);
    let instance = sample_instance(bounds, 3, 4, true).unwrap();
    let case = InequalityCase {
        id: InequalityId::Lin,
        instance,
        phi: MapSpec::TraceAverage { n: 3 },
        params: CaseParams::default(),
    };
    assert!(check_case(&case).unwrap().holds);
    let deflated = CheckSettings { rhs_constant_scale: 0.95, ..CheckSettings::default() };
    assert!(!check_case_with(&case, &deflated).unwrap().holds);
}

#[test]
fn loewner_heinz_fails_for_squares() {
    let a = HermitianMatrix::from_real(2, &[1.0, 1.0, 1.0, 1.0]).unwrap();
    let b = HermitianMatrix::from_real(2, &[2.0, 1.0, 1.0, 1.0]).unwrap();
    assert!(loewner_gap(&a, &b).unwrap() >= -1e-15);
    let gap = loewner_gap(&matrix_power(&a, 2.0).unwrap(), &matrix_power(&b, 2.0).unwrap()).unwrap();
    assert!(gap < -0.1, "{gap}");
    let sqrt_gap = loewner_gap(&matrix_power(&a, 0.5).unwrap(), &matrix_power(&b, 0.5).unwrap()).unwrap();
    assert!(sqrt_gap >= -1e-12);
}

#[test]
fn norm_lemma_equivalence_on_scalars() {
    let case = scalar_case(
        InequalityId::NormLoewnerEquivalence,
        4.0,
        1.0,
        SandwichBounds::common(1.0, 4.0),
        CaseParams::default(),
    );
    let v = check_case(&case).unwrap();
    assert!((v.lhs_norm - 2.0).abs() < 1e-12 && (v.rhs_norm - 2.0).abs() < 1e-12, "{v:?}");
    assert!(v.holds);
}

#[test]
fn compression_outputs_are_handled() {
    let bounds = SandwichBounds::common(1.0, 3.0);
    let instance = sample_instance(bounds, 3, 2, false).unwrap();
    let v = CMatrix::from_parts(3, 2, &[1.0, 0.0, 0.0, 1.0, 0.0, 0.0], None).unwrap();
    let case = InequalityCase {
        id: InequalityId::Ando,
        instance,
        phi: MapSpec::Compression { v },
        params: CaseParams::new(0.3, 1.0, 1.0),
    };
    assert!(check_case(&case).unwrap().holds);
}
