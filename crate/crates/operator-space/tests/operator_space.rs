use operator_space::{
    canonical_decompose, hermitian_eigen, hs_inner, matrix_exp, outer, positive_sqrt, sample, trace,
    Operator, OperatorError, Vector, C64, I, ONE, ZERO,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pauli_x() -> Operator {
    Operator::from_row_major(2, &[ZERO, ONE, ONE, ZERO]).unwrap()
}

fn pauli_z() -> Operator {
    Operator::from_real_diagonal(&[1.0, -1.0])
}

#[test]
fn hs_inner_of_identities_is_dimension() {
    let id = Operator::identity(2);
    assert_eq!(hs_inner(&id, &id).unwrap(), c(2.0, 0.0));
}

#[test]
fn pauli_x_and_z_are_hs_orthogonal() {
    assert_eq!(hs_inner(&pauli_x(), &pauli_z()).unwrap(), ZERO);
}

#[test]
fn hs_self_inner_matches_entry_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let a = sample::gaussian_operator(&mut rng, 5);
    let brute: f64 = a.to_row_major().iter().map(|z| z.norm_sqr()).sum();
    let v = hs_inner(&a, &a).unwrap();
    assert!((v.re - brute).abs() < 1e-12 * brute);
    assert!(v.im.abs() < 1e-12);
}

#[test]
fn hs_inner_is_linear_in_second_argument() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let a = sample::gaussian_operator(&mut rng, 3);
    let b = sample::gaussian_operator(&mut rng, 3);
    let z = c(0.3, -1.7);
    let lhs = hs_inner(&a, &(&b * z)).unwrap();
    let rhs = z * hs_inner(&a, &b).unwrap();
    assert!((lhs - rhs).norm() < 1e-12);
}

#[test]
fn hs_inner_rejects_mismatched_dimensions() {
    let err = hs_inner(&Operator::identity(2), &Operator::identity(3)).unwrap_err();
    assert_eq!(err, OperatorError::DimensionMismatch { expected: 2, found: 3 });
}

#[test]
fn row_major_construction_checks_length() {
    assert!(matches!(
        Operator::from_row_major(2, &[ONE; 3]),
        Err(OperatorError::BadEntryCount { len: 3, expected: 4 })
    ));
    assert_eq!(Operator::from_row_major(0, &[]), Err(OperatorError::EmptyDimension));
}

#[test]
fn row_major_roundtrip() {
    let e: Vec<C64> = (0..9).map(|k| c(k as f64, -(k as f64))).collect();
    let a = Operator::from_row_major(3, &e).unwrap();
    assert_eq!(a.get(0, 1), e[1]);
    assert_eq!(a.get(1, 0), e[3]);
    assert_eq!(a.to_row_major(), e);
}

#[test]
fn trace_of_identity() {
    assert_eq!(trace(&Operator::identity(3)), c(3.0, 0.0));
}

#[test]
fn trace_norm_of_diagonal() {
    let a = Operator::from_real_diagonal(&[1.0, -2.0]);
    assert!((a.trace_norm() - 3.0).abs() < 1e-14);
    assert!((a.op_norm() - 2.0).abs() < 1e-14);
}

#[test]
fn op_norm_matches_eigenvalues_of_gram_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let a = sample::gaussian_operator(&mut rng, 6);
        let gram = &a.adjoint() * &a;
        let (vals, _) = hermitian_eigen(&gram);
        let oracle = vals.last().unwrap().sqrt();
        let dec = canonical_decompose(&a);
        assert!((a.op_norm() - oracle).abs() < 1e-10 * oracle);
        assert!((dec.singular_values[0] - oracle).abs() < 1e-10 * oracle);
        let trace_norm_oracle: f64 = vals.iter().map(|l| l.max(0.0).sqrt()).sum();
        assert!((a.trace_norm() - trace_norm_oracle).abs() < 1e-9 * trace_norm_oracle);
    }
}

#[test]
fn decomposition_of_rank_one_unit() {
    let dec = canonical_decompose(&Operator::unit(2, 0, 1));
    assert_eq!(dec.rank(), 1);
    assert!((dec.singular_values[0] - 1.0).abs() < 1e-14);
    assert!(dec.reconstruct().max_abs_diff(&Operator::unit(2, 0, 1)) < 1e-14);
}

#[test]
fn decomposition_of_identity() {
    let dec = canonical_decompose(&Operator::identity(2));
    assert_eq!(dec.singular_values.len(), 2);
    for s in &dec.singular_values {
        assert!((s - 1.0).abs() < 1e-14);
    }
}

#[test]
fn decomposition_of_zero_is_empty() {
    let dec = canonical_decompose(&Operator::zeros(4));
    assert_eq!(dec.rank(), 0);
    assert_eq!(dec.reconstruct(), Operator::zeros(4));
}

#[test]
fn decomposition_reconstructs_random_4x4() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = sample::gaussian_operator(&mut rng, 4);
    let dec = canonical_decompose(&a);
    assert!(dec.reconstruct().hs_distance(&a) < 1e-12);
    assert!(dec.singular_values.windows(2).all(|w| w[0] >= w[1]));
    for (i, u) in dec.left_vectors.iter().enumerate() {
        for (j, v) in dec.left_vectors.iter().enumerate() {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((u.dotc(v) - c(expect, 0.0)).norm() < 1e-12);
        }
    }
}

#[test]
fn sqrt_of_diagonal() {
    let r = positive_sqrt(&Operator::from_real_diagonal(&[4.0, 9.0])).unwrap();
    assert!(r.max_abs_diff(&Operator::from_real_diagonal(&[2.0, 3.0])) < 1e-14);
}

#[test]
fn sqrt_rejects_negative_and_non_hermitian_input() {
    let err = positive_sqrt(&Operator::from_real_diagonal(&[1.0, -1.0])).unwrap_err();
    assert!(matches!(err, OperatorError::NotPositive { min_eigenvalue, .. } if (min_eigenvalue + 1.0).abs() < 1e-12));
    let err = positive_sqrt(&Operator::unit(2, 0, 1)).unwrap_err();
    assert!(matches!(err, OperatorError::NotPositive { .. }));
}

#[test]
fn exp_of_zero_is_identity() {
    assert!(matrix_exp(&Operator::zeros(3)).max_abs_diff(&Operator::identity(3)) < 1e-15);
}

#[test]
fn exp_of_diagonal_matches_scalar_exponentials() {
    let theta = 0.7;
    let a = pauli_z() * (I * theta);
    let e = matrix_exp(&a);
    let oracle = Operator::from_diagonal(&[(I * theta).exp(), (-I * theta).exp()]);
    assert!(e.max_abs_diff(&oracle) < 1e-14);
    let d = Operator::from_diagonal(&[c(0.5, 1.0), c(-2.0, 0.25), c(0.0, -3.0)]);
    let oracle = Operator::from_diagonal(&[c(0.5, 1.0).exp(), c(-2.0, 0.25).exp(), c(0.0, -3.0).exp()]);
    assert!(matrix_exp(&d).max_abs_diff(&oracle) < 1e-13);
}

#[test]
fn exp_of_anti_hermitian_is_unitary() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = sample::hermitian(&mut rng, 6);
    let u = matrix_exp(&(h * I));
    assert!(u.is_unitary(1e-12));
}

#[test]
fn outer_product_action() {
    let phi = Vector::from_vec(vec![ONE, I]);
    let psi = Vector::from_vec(vec![c(0.0, 2.0), ONE]);
    let op = outer(&phi, &psi);
    let x = Vector::from_vec(vec![c(1.0, 1.0), c(-1.0, 0.5)]);
    let expected = &phi * psi.dotc(&x);
    assert!((op.apply(&x) - expected).norm() < 1e-14);
}

#[test]
fn predicates() {
    assert!(pauli_x().is_hermitian(1e-14));
    assert!(pauli_x().is_unitary(1e-14));
    assert!(!Operator::unit(2, 0, 1).is_hermitian(1e-3));
    assert!(Operator::from_real_diagonal(&[1.0, 0.0]).is_positive(1e-12));
    assert!(!pauli_z().is_positive(1e-12));
}

fn operator_strategy(n: usize) -> impl Strategy<Value = Operator> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n)
        .prop_map(move |v| Operator::from_row_major(n, &v.iter().map(|&(a, b)| c(a, b)).collect::<Vec<_>>()).unwrap())
}

proptest! {
    #[test]
    fn hs_inner_is_conjugate_symmetric(a in operator_strategy(3), b in operator_strategy(3)) {
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() < 1e-12);
    }

    #[test]
    fn norm_ordering(a in operator_strategy(4)) {
        let (t, h, o) = (a.trace_norm(), a.hs_norm(), a.op_norm());
        prop_assert!(t >= h - 1e-12);
        prop_assert!(h >= o - 1e-12);
    }

    #[test]
    fn decomposition_residual_is_small(a in operator_strategy(4)) {
        let r = canonical_decompose(&a).reconstruct().hs_distance(&a);
        prop_assert!(r <= 1e-10 * a.hs_norm().max(1e-300));
    }

    #[test]
    fn sqrt_squares_back(q in operator_strategy(4)) {
        let p = &q.adjoint() * &q;
        let r = positive_sqrt(&p).unwrap();
        prop_assert!((&r * &r).hs_distance(&p) < 1e-10 * p.hs_norm().max(1.0));
        prop_assert!(r.is_hermitian(1e-10));
    }
}
