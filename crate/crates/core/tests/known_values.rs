//! Small hand-checkable values.

use num_bigint::BigUint;

use rankmetric::codes::{construct_cshk, is_dually_qoac, is_qoac, maxrk, upper_triangular_f2, CanonicalForm};
use rankmetric::combinatorics::{count_rank_matrices, gaussian_binomial, general_linear_order};
use rankmetric::invariants::{generalized_weights_oracle, rank_distribution_oracle};
use rankmetric::sweep::{run_job, Status, Theorem, VerificationJob};
use rankmetric::{Budget, Error, FieldSpec, RankMetricCode};

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

#[test]
fn counting_functions() {
    assert_eq!(gaussian_binomial(4, 2, 2), big(35));
    assert_eq!(gaussian_binomial(3, 1, 3), big(13));
    assert_eq!(general_linear_order(2, 2), big(6));
    assert_eq!(general_linear_order(3, 2), big(168));
    // 2x2 over F_2: 1 zero, 9 rank one, 6 invertible
    assert_eq!(count_rank_matrices(2, 2, 1, 2), big(9));
    assert_eq!(count_rank_matrices(2, 2, 2, 2), big(6));
}

#[test]
fn full_space_rank_distribution() {
    let f = FieldSpec::with_order(2).unwrap().into_shared();
    let c = RankMetricCode::full(&f, 2, 2);
    let d = rank_distribution_oracle(&c, &Budget::default()).unwrap();
    assert_eq!(d.counts(), &[big(1), big(9), big(6)]);
}

#[test]
fn single_column_code_weights() {
    // all matrices supported on the first column: a rank-one anticode
    let f = FieldSpec::with_order(2).unwrap().into_shared();
    let c = construct_cshk(&f, 2, 2, 0, 2, 1).unwrap();
    assert_eq!(c.dim(), 2);
    let w = generalized_weights_oracle(&c, &Budget::default()).unwrap();
    assert_eq!(w.as_slice(), &[1, 1]);
}

#[test]
fn four_by_four_code() {
    let c = upper_triangular_f2();
    let b = Budget::default();
    assert_eq!(c.dim(), 9);
    assert_eq!(maxrk(&c, &b).unwrap(), 3);
    assert!(is_qoac(&c, &b).unwrap());
}

#[test]
fn zero_code_is_not_a_qoac() {
    let f = FieldSpec::with_order(3).unwrap().into_shared();
    let z = RankMetricCode::zero(&f, 2, 3);
    assert!(!is_qoac(&z, &Budget::default()).unwrap());
    assert!(!is_dually_qoac(&z, &Budget::default()).unwrap());
}

#[test]
fn budget_is_enforced() {
    let f = FieldSpec::with_order(2).unwrap().into_shared();
    let c = RankMetricCode::full(&f, 3, 3);
    let err = maxrk(&c, &Budget::default().with_codewords(100)).unwrap_err();
    assert!(err.is_budget());
    assert!(matches!(err, Error::Budget { .. }));
}

#[test]
fn canonical_form_names() {
    for f in CanonicalForm::ALL {
        assert_eq!(f.to_string().parse::<CanonicalForm>().unwrap(), f);
    }
    assert!("e".parse::<CanonicalForm>().is_err());
}

#[test]
fn sweep_rows_match() {
    for theorem in [Theorem::RankDistribution, Theorem::CshkQoac, Theorem::MaxrankSum] {
        let mut job = VerificationJob::new(theorem);
        job.qs = vec![2];
        job.n = (1, 2);
        job.m = (1, 2);
        let rows = run_job(&job).unwrap();
        assert!(!rows.is_empty());
        assert!(rows.iter().all(|r| r.status == Status::Match), "{theorem:?}");
    }
}

#[test]
fn sweep_skips_over_budget() {
    let mut job = VerificationJob::new(Theorem::RankDistribution);
    job.qs = vec![2];
    job.n = (3, 3);
    job.m = (3, 3);
    job.budget = Budget::default().with_codewords(16);
    let rows = run_job(&job).unwrap();
    assert!(rows.iter().any(|r| r.status == Status::Skipped));
    assert!(rows.iter().all(|r| r.status != Status::Mismatch));
}
