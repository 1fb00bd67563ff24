use std::sync::Arc;

use frame_engine::{FrameError, PhaseFunction, VectorFrame, WeightedPointSet};
use nalgebra::DMatrix;
use operator_space::{outer, sample, Operator, Vector, C64, ONE, ZERO};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn e(n: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(n);
    v[i] = ONE;
    v
}

fn onb(n: usize) -> VectorFrame {
    let pts = Arc::new(WeightedPointSet::uniform(n, 1.0).unwrap());
    VectorFrame::new(pts, (0..n).map(|i| e(n, i)).collect()).unwrap()
}

fn repeated() -> VectorFrame {
    let pts = Arc::new(WeightedPointSet::uniform(3, 1.0).unwrap());
    VectorFrame::new(pts, vec![e(2, 0), e(2, 0), e(2, 1)]).unwrap()
}

/// Three unit vectors at 120° in R², weight 2/3 each: tight with bound 1.
fn mercedes() -> VectorFrame {
    let pts = Arc::new(WeightedPointSet::uniform(3, 2.0 / 3.0).unwrap());
    let vs = (0..3)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
            Vector::from_vec(vec![C64::new(t.cos(), 0.0), C64::new(t.sin(), 0.0)])
        })
        .collect();
    VectorFrame::new(pts, vs).unwrap()
}

fn random_frame(rng: &mut ChaCha8Rng, n: usize, m: usize) -> VectorFrame {
    let weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.2..2.0)).collect();
    let pts = Arc::new(WeightedPointSet::indexed(weights).unwrap());
    VectorFrame::new(pts, (0..m).map(|_| sample::gaussian_vector(rng, n)).collect()).unwrap()
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

#[test]
fn point_set_validation() {
    assert_eq!(WeightedPointSet::new(vec![], vec![]), Err(FrameError::EmptyPointSet));
    assert!(matches!(
        WeightedPointSet::new(vec!["a".into(), "b".into()], vec![1.0, 0.0]),
        Err(FrameError::NonPositiveWeight { index: 1, .. })
    ));
    assert_eq!(
        WeightedPointSet::new(vec!["a".into(), "a".into()], vec![1.0, 1.0]),
        Err(FrameError::DuplicateLabel("a".into()))
    );
    let p = WeightedPointSet::uniform(2, 0.5).unwrap().product(&WeightedPointSet::uniform(3, 2.0).unwrap());
    assert_eq!(p.len(), 6);
    assert_eq!(p.labels()[4], "(1,1)");
    assert!((p.total_weight() - 6.0).abs() < 1e-15);
}

#[test]
fn onb_analysis_of_basis_vector_is_indicator() {
    let f = onb(3).analyze(&e(3, 1)).unwrap();
    assert_eq!(f.values(), &[ZERO, ONE, ZERO]);
}

#[test]
fn analysis_of_zero_is_zero() {
    let f = repeated().analyze(&Vector::zeros(2)).unwrap();
    assert!(f.values().iter().all(|v| *v == ZERO));
}

#[test]
fn repeated_frame_analysis_oracle() {
    let fr = repeated();
    let phi = Vector::from_vec(vec![ONE, ONE]);
    let f = fr.analyze(&phi).unwrap();
    assert_eq!(f.values(), &[ONE, ONE, ONE]);
    assert!((f.norm_squared() - 3.0).abs() < 1e-15);
    let (a, b) = fr.frame_bounds();
    assert!(a * 2.0 <= 3.0 + 1e-12 && 3.0 <= b * 2.0 + 1e-12);
}

#[test]
fn analysis_rejects_wrong_dimension() {
    assert_eq!(
        onb(3).analyze(&Vector::zeros(2)).unwrap_err(),
        FrameError::DimensionMismatch { expected: 3, found: 2 }
    );
}

#[test]
fn onb_synthesis_resolves_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let fr = onb(4);
    let phi = sample::gaussian_vector(&mut rng, 4);
    let back = fr.synthesize(&fr.analyze(&phi).unwrap()).unwrap();
    assert!((back - phi).norm() < 1e-14);
    let zero = fr.synthesize(&PhaseFunction::zeros(fr.points().clone())).unwrap();
    assert_eq!(zero.norm(), 0.0);
}

#[test]
fn synthesis_rejects_foreign_point_set() {
    let fr = onb(3);
    let other = PhaseFunction::zeros(Arc::new(WeightedPointSet::uniform(3, 2.0).unwrap()));
    assert_eq!(fr.synthesize(&other).unwrap_err(), FrameError::PointSetMismatch);
}

#[test]
fn synthesis_is_adjoint_of_analysis() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let fr = random_frame(&mut rng, 3, 7);
    let phi = sample::gaussian_vector(&mut rng, 3);
    let big_phi = PhaseFunction::from_fn(fr.points().clone(), |_| sample::gaussian(&mut rng));
    let lhs = fr.synthesize(&big_phi).unwrap().dotc(&phi);
    let rhs = big_phi.inner(&fr.analyze(&phi).unwrap()).unwrap();
    assert!((lhs - rhs).norm() < 1e-12);
}

#[test]
fn onb_metric_is_identity() {
    let fr = onb(3);
    assert!(fr.metric_operator().max_abs_diff(&Operator::identity(3)) < 1e-15);
    assert_eq!(fr.frame_bounds(), (1.0, 1.0));
    assert!(fr.is_tight(1e-12));
}

#[test]
fn repeated_frame_metric_oracle() {
    let fr = repeated();
    assert!(fr.metric_operator().max_abs_diff(&Operator::from_real_diagonal(&[2.0, 1.0])) < 1e-15);
    let (a, b) = fr.frame_bounds();
    assert!((a - 1.0).abs() < 1e-14 && (b - 2.0).abs() < 1e-14);
    assert!(!fr.is_tight(1e-6));
    assert!((fr.condition_number() - 2.0).abs() < 1e-14);
}

#[test]
fn degenerate_family_is_not_a_frame() {
    let pts = Arc::new(WeightedPointSet::uniform(2, 1.0).unwrap());
    let err = VectorFrame::new(pts, vec![e(2, 0), e(2, 0)]).unwrap_err();
    assert!(matches!(err, FrameError::NotAFrame { .. }));
}

#[test]
fn tight_normalized_frame_is_self_dual() {
    let fr = mercedes();
    assert!(fr.is_tight(1e-12));
    for (v, d) in fr.vectors().iter().zip(fr.dual_vectors()) {
        assert!((v - d).norm() < 1e-12);
    }
}

#[test]
fn pseudo_inverse_reconstructs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let fr = random_frame(&mut rng, 4, 9);
    let phi = sample::gaussian_vector(&mut rng, 4);
    let back = fr.pseudo_inverse_apply(&fr.analyze(&phi).unwrap()).unwrap();
    assert!((back - phi).norm() < 1e-12);
}

#[test]
fn pseudo_inverse_vanishes_on_range_complement() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let fr = random_frame(&mut rng, 3, 8);
    let w = fr.points().weights().to_vec();
    // Orthonormal basis of Ran(F) in L²(X, μ) by Gram–Schmidt on F e_i.
    let mut basis: Vec<PhaseFunction> = Vec::new();
    for i in 0..3 {
        let mut f = fr.analyze(&e(3, i)).unwrap();
        for b in &basis {
            let p = b.inner(&f).unwrap();
            f = f.sub(&b.scale(p)).unwrap();
        }
        let n = f.norm();
        basis.push(f.scale(c(1.0 / n)));
    }
    let mut g = PhaseFunction::from_fn(fr.points().clone(), |_| sample::gaussian(&mut rng));
    for b in &basis {
        let p = b.inner(&g).unwrap();
        g = g.sub(&b.scale(p)).unwrap();
    }
    assert!(g.norm() > 0.1, "complement sample should be nontrivial ({w:?})");
    assert!(fr.pseudo_inverse_apply(&g).unwrap().norm() < 1e-10);
}

#[test]
fn onb_kernel_is_kronecker() {
    let fr = onb(3);
    for x in 0..3 {
        for y in 0..3 {
            let k = fr.reproducing_kernel(x, y).unwrap();
            assert_eq!(k, if x == y { ONE } else { ZERO });
        }
    }
    assert!(matches!(fr.reproducing_kernel(0, 3), Err(FrameError::IndexOutOfRange { .. })));
}

#[test]
fn projection_fixes_range_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let fr = random_frame(&mut rng, 3, 7);
    let f = fr.analyze(&sample::gaussian_vector(&mut rng, 3)).unwrap();
    let p = fr.project_onto_range(&f).unwrap();
    assert!(p.distance(&f).unwrap() < 1e-12);
}

#[test]
fn projection_matrix_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let fr = random_frame(&mut rng, 3, 7);
    let k = fr.kernel_matrix();
    let w = fr.points().weights();
    let p = DMatrix::from_fn(7, 7, |x, y| k[(x, y)] * w[y]);
    let p2 = &p * &p;
    assert!((p2 - &p).norm() < 1e-10);
}

#[test]
fn operator_kernel_special_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let fr = random_frame(&mut rng, 3, 6);
    for x in 0..6 {
        for y in 0..6 {
            let ki = fr.operator_kernel(&Operator::identity(3), x, y).unwrap();
            assert!((ki - fr.reproducing_kernel(x, y).unwrap()).norm() < 1e-14);
            assert_eq!(fr.operator_kernel(&Operator::zeros(3), x, y).unwrap(), ZERO);
        }
    }
}

#[test]
fn operator_kernel_intertwines_analysis() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let fr = random_frame(&mut rng, 4, 10);
    let a = sample::gaussian_operator(&mut rng, 4);
    let phi = sample::gaussian_vector(&mut rng, 4);
    let via_kernel = fr.apply_operator_kernel(&a, &fr.analyze(&phi).unwrap()).unwrap();
    let direct = fr.analyze(&a.apply(&phi)).unwrap();
    assert!(via_kernel.sup_distance(&direct).unwrap() < 1e-10);
}

#[test]
fn trace_via_frame_special_cases() {
    let fr = onb(3);
    assert!((fr.trace_via_frame(&Operator::identity(3)).unwrap() - c(3.0)).norm() < 1e-15);
    assert!(fr.trace_via_frame(&Operator::unit(3, 0, 1)).unwrap().norm() < 1e-15);
}

fn assert_trace_formula(fr: &VectorFrame, rng: &mut ChaCha8Rng) {
    let n = fr.dim();
    for _ in 0..50 {
        let a = sample::gaussian_operator(rng, n);
        let r = (fr.trace_via_frame(&a).unwrap() - a.trace()).norm();
        assert!(r < 1e-10 * a.hs_norm().max(1.0), "residual {r}");
    }
}

#[test]
fn trace_formula_on_tight_and_non_tight_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    assert_trace_formula(&mercedes(), &mut rng);
    assert_trace_formula(&repeated(), &mut rng);
    let fr = random_frame(&mut rng, 4, 9);
    assert!(!fr.is_tight(1e-3));
    assert_trace_formula(&fr, &mut rng);
}

#[test]
fn frame_inequality_over_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let fr = random_frame(&mut rng, 3, 8);
    let (a, b) = fr.frame_bounds();
    for _ in 0..100 {
        let phi = sample::gaussian_vector(&mut rng, 3);
        let n2 = phi.norm_squared();
        let f2 = fr.analyze(&phi).unwrap().norm_squared();
        assert!(a * n2 <= f2 + 1e-12 * f2 && f2 <= b * n2 + 1e-12 * f2);
    }
}

#[test]
fn dual_of_dual_recovers_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let fr = random_frame(&mut rng, 3, 7);
    let dual = fr.dual_frame().unwrap();
    assert!(dual.metric_operator().hs_distance(fr.metric_inverse()) < 1e-10);
    let dd = dual.dual_frame().unwrap();
    for (v, w) in fr.vectors().iter().zip(dd.vectors()) {
        assert!((v - w).norm() < 1e-10);
    }
}

#[test]
fn tight_dual_is_rescaled_original() {
    let pts = Arc::new(WeightedPointSet::uniform(3, 1.0).unwrap());
    let vs = mercedes().vectors().to_vec();
    let fr = VectorFrame::new(pts, vs).unwrap();
    let (a, b) = fr.frame_bounds();
    assert!((a - 1.5).abs() < 1e-12 && (b - 1.5).abs() < 1e-12);
    for (v, d) in fr.vectors().iter().zip(fr.dual_vectors()) {
        assert!((v.scale(1.0 / a) - d).norm() < 1e-10);
    }
}

#[test]
fn positive_operator_has_nonnegative_diagonal_kernel_on_tight_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let fr = mercedes();
    for _ in 0..20 {
        let g = sample::gaussian_vector(&mut rng, 2);
        let h = sample::gaussian_vector(&mut rng, 2);
        let p = outer(&g, &g) + outer(&h, &h);
        for k in fr.diagonal_kernel(&p).unwrap() {
            assert!(k.re >= -1e-12 && k.im.abs() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn analysis_is_linear(re in -3.0f64..3.0, im in -3.0f64..3.0, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fr = random_frame(&mut rng, 3, 6);
        let x = sample::gaussian_vector(&mut rng, 3);
        let y = sample::gaussian_vector(&mut rng, 3);
        let z = C64::new(re, im);
        let lhs = fr.analyze(&(&x * z + &y)).unwrap();
        let rhs = fr.analyze(&x).unwrap().scale(z).add(&fr.analyze(&y).unwrap()).unwrap();
        prop_assert!(lhs.sup_distance(&rhs).unwrap() < 1e-11 * (1.0 + z.norm()));
    }

    #[test]
    fn projection_is_self_adjoint(seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fr = random_frame(&mut rng, 2, 5);
        let f = PhaseFunction::from_fn(fr.points().clone(), |_| sample::gaussian(&mut rng));
        let g = PhaseFunction::from_fn(fr.points().clone(), |_| sample::gaussian(&mut rng));
        let lhs = fr.project_onto_range(&f).unwrap().inner(&g).unwrap();
        let rhs = f.inner(&fr.project_onto_range(&g).unwrap()).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-10);
    }
}
