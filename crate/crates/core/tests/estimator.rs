//! Feasibility-probability estimator: frozen examples, exact-mass fixtures,
//! and the early-interrupt contract.

mod common;

use common::{equal_indexed_set, indexed_set, TableModel};
use dsc_core::benchmark::IllustrativeModel;
use dsc_core::{
    feasibility_probability, feasibility_probability_bounded, BoundedOutcome, Error,
    ProcessModel, Result, UncertaintySet,
};

#[test]
fn two_scenario_weighted_sum() {
    // theta = 0 gives s = 0.3 (in band), theta = 2 gives s = 2.3 (out).
    let model = IllustrativeModel::new();
    let set = UncertaintySet::new(vec![(vec![0.0], 0.5), (vec![2.0], 0.5)]).unwrap();
    let p = feasibility_probability(&model, &[1.0, 0.3], &set).unwrap();
    assert_eq!(p, 0.5);
}

#[test]
fn deterministic_satisfaction_is_exactly_one() {
    // d1 = 0 makes theta irrelevant; s = 0.5 is always in the band.
    let model = IllustrativeModel::new();
    let set = UncertaintySet::new(vec![
        (vec![-3.0], 0.25),
        (vec![0.0], 0.25),
        (vec![1.0], 0.25),
        (vec![9.0], 0.25),
    ])
    .unwrap();
    let p = feasibility_probability(&model, &[0.0, 0.5], &set).unwrap();
    assert_eq!(p, 1.0);
}

#[test]
fn feasible_mass_is_exact_for_dyadic_weights() {
    let model = TableModel {
        feasible: vec![true, false, true],
    };
    let set = indexed_set(&[1.0 / 64.0, 3.0 / 64.0, 60.0 / 64.0]);
    let p = feasibility_probability(&model, &[0.0], &set).unwrap();
    assert_eq!(p, 61.0 / 64.0);
}

#[test]
fn interrupts_when_floor_is_unreachable() {
    // 100 equal weights; 9 feasible among the first 50 visited. After 50
    // evaluations: 0.09 accumulated + 0.50 remaining = 0.59 < 0.6.
    let mut feasible = vec![false; 100];
    for slot in feasible.iter_mut().take(9) {
        *slot = true;
    }
    let model = TableModel { feasible };
    let set = equal_indexed_set(100);
    match feasibility_probability_bounded(&model, &[0.0], &set, 0.6).unwrap() {
        BoundedOutcome::RejectedBelowFloor { evals } => {
            assert_eq!(evals, 50);
            assert!(evals <= 51);
        }
        other => panic!("expected early rejection, got {other:?}"),
    }
}

#[test]
fn strict_inequality_lets_borderline_evaluation_continue() {
    // 10 feasible among the first 50: at the checkpoint 0.10 + 0.50 = 0.60,
    // not strictly below 0.6, so evaluation continues to the end. The back
    // half is entirely feasible, so the final value clears the floor.
    let mut feasible = vec![false; 100];
    for slot in feasible.iter_mut().take(10) {
        *slot = true;
    }
    for slot in feasible.iter_mut().skip(50) {
        *slot = true;
    }
    let model = TableModel { feasible };
    let set = equal_indexed_set(100);
    match feasibility_probability_bounded(&model, &[0.0], &set, 0.6).unwrap() {
        BoundedOutcome::Value { prob, evals } => {
            assert_eq!(evals, 100);
            assert!((prob - 0.6).abs() < 1e-12);
        }
        other => panic!("expected full evaluation, got {other:?}"),
    }
}

#[test]
fn zero_floor_never_interrupts_and_matches_plain_estimate() {
    let feasible: Vec<bool> = (0..37).map(|i| i % 3 == 0).collect();
    let model = TableModel {
        feasible: feasible.clone(),
    };
    let set = equal_indexed_set(37);
    let plain = feasibility_probability(&model, &[0.0], &set).unwrap();
    match feasibility_probability_bounded(&model, &[0.0], &set, 0.0).unwrap() {
        BoundedOutcome::Value { prob, evals } => {
            assert_eq!(prob.to_bits(), plain.to_bits());
            assert_eq!(evals, set.len());
        }
        other => panic!("expected value, got {other:?}"),
    }
}

#[test]
fn estimate_is_invariant_under_sample_permutation() {
    struct ThresholdModel;
    impl ProcessModel for ThresholdModel {
        fn constraint_count(&self) -> usize {
            1
        }
        fn evaluate(&self, _d: &[f64], theta: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![theta[0] - 0.6])
        }
    }
    let pairs = vec![
        (vec![0.1], 0.3),
        (vec![0.9], 0.1),
        (vec![0.5], 0.25),
        (vec![0.7], 0.25),
        (vec![0.2], 0.1),
    ];
    let mut rotated = pairs.clone();
    rotated.rotate_left(2);
    rotated.swap(0, 3);
    let a = feasibility_probability(&ThresholdModel, &[0.0], &UncertaintySet::new(pairs).unwrap())
        .unwrap();
    let b = feasibility_probability(
        &ThresholdModel,
        &[0.0],
        &UncertaintySet::new(rotated).unwrap(),
    )
    .unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}

#[test]
fn non_finite_model_output_identifies_the_evaluation() {
    struct NanModel;
    impl ProcessModel for NanModel {
        fn constraint_count(&self) -> usize {
            1
        }
        fn evaluate(&self, _d: &[f64], _theta: &[f64]) -> Result<Vec<f64>> {
            Ok(vec![f64::NAN])
        }
    }
    let set = UncertaintySet::nominal(vec![4.25]).unwrap();
    let err = feasibility_probability(&NanModel, &[1.5, -0.5], &set).unwrap_err();
    match &err {
        Error::NonFiniteConstraint { d, theta, .. } => {
            assert_eq!(d, &vec![1.5, -0.5]);
            assert_eq!(theta, &vec![4.25]);
        }
        other => panic!("unexpected error {other:?}"),
    }
    let text = err.to_string();
    assert!(text.contains("model returned non-finite constraint value"));
    assert!(text.contains("4.25"));
}

#[test]
fn invalid_floor_is_rejected() {
    let model = TableModel {
        feasible: vec![true],
    };
    let set = equal_indexed_set(1);
    assert!(feasibility_probability_bounded(&model, &[0.0], &set, -0.1).is_err());
    assert!(feasibility_probability_bounded(&model, &[0.0], &set, 1.1).is_err());
    assert!(feasibility_probability_bounded(&model, &[0.0], &set, f64::NAN).is_err());
}
