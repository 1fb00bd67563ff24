use std::f64::consts::PI;

use frame_engine::PhaseFunction;
use group_reps::{
    modular_inverse, weyl_heisenberg_finite, FiniteGroupTable, Grid, GroupError, Multiplier, ProjectiveRep,
    TruncatedWeylSystem, WeylHeisenbergLabels,
};
use operator_space::{sample, Operator, Vector, C64};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_function(rep: &ProjectiveRep, rng: &mut ChaCha8Rng) -> PhaseFunction {
    PhaseFunction::from_fn(rep.group().points().clone(), |_| sample::gaussian(rng))
}

#[test]
fn modular_inverse_of_two() {
    assert_eq!(modular_inverse(2, 3), Some(2));
    assert_eq!(modular_inverse(2, 5), Some(3));
    assert_eq!(modular_inverse(2, 7), Some(4));
    assert_eq!(modular_inverse(2, 4), None);
}

#[test]
fn group_table_rejects_non_groups() {
    // Constant table: no identity.
    let err = FiniteGroupTable::new(2, vec![0, 0, 0, 0], vec!["a".into(), "b".into()], vec![1.0, 1.0]);
    assert!(matches!(err, Err(GroupError::InvalidTable(_))));
    // Identity exists but element 1 has no inverse.
    let err = FiniteGroupTable::new(2, vec![0, 1, 1, 1], vec!["a".into(), "b".into()], vec![1.0, 1.0]);
    assert!(matches!(err, Err(GroupError::InvalidTable(_))));
    let err = FiniteGroupTable::new(2, vec![0, 1, 1, 0], vec!["a".into(), "b".into()], vec![1.0, -1.0]);
    assert!(err.is_err());
}

#[test]
fn group_table_zd_squared_laws() {
    let g = FiniteGroupTable::zd_squared(3, 1.0 / 3.0).unwrap();
    assert_eq!(g.order(), 9);
    assert_eq!(g.identity(), 0);
    for a in 0..9 {
        assert_eq!(g.mul(a, g.inv(a)), 0);
    }
    assert!(g.has_uniform_weight());
}

#[test]
fn multiplier_rejects_broken_cocycle() {
    let g = FiniteGroupTable::cyclic(3, 1.0).unwrap();
    let mut table = vec![C64::new(1.0, 0.0); 9];
    table[4] = C64::from_polar(1.0, 0.3);
    assert!(matches!(Multiplier::new(&g, table), Err(GroupError::InvalidMultiplier(_))));
    let mut table = vec![C64::new(1.0, 0.0); 9];
    table[5] = C64::new(2.0, 0.0);
    assert!(Multiplier::new(&g, table).is_err());
}

#[test]
fn weyl_heisenberg_rejects_even_or_tiny_dimension() {
    for d in [0, 1, 2, 4, 6] {
        assert!(matches!(weyl_heisenberg_finite(d), Err(GroupError::InvalidWeylDimension(_))));
    }
}

#[test]
fn weyl_heisenberg_identity_element() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    assert!(rep.matrix(0).max_abs_diff(&Operator::identity(3)) == 0.0);
}

#[test]
fn weyl_heisenberg_projective_relation_exhaustive() {
    for d in [3, 5, 7] {
        let rep = weyl_heisenberg_finite(d).unwrap();
        assert!(rep.projective_residual() < 1e-12, "d = {d}: {}", rep.projective_residual());
    }
}

#[test]
fn weyl_heisenberg_multiplier_formula() {
    let d = 5;
    let rep = weyl_heisenberg_finite(d).unwrap();
    let lab = WeylHeisenbergLabels { d };
    let half = modular_inverse(2, d).unwrap() as i64;
    for g in 0..d * d {
        for h in 0..d * d {
            let (q, p) = lab.coords(g);
            let (qq, pp) = lab.coords(h);
            let k = (half * (q as i64 * pp as i64 - p as i64 * qq as i64)).rem_euclid(d as i64);
            let expected = C64::from_polar(1.0, 2.0 * PI * k as f64 / d as f64);
            assert!((rep.multiplier().value(g, h) - expected).norm() < 1e-14);
        }
    }
}

#[test]
fn multiplier_cocycle_exhaustive() {
    for d in [3, 5, 7] {
        let rep = weyl_heisenberg_finite(d).unwrap();
        assert!(rep.multiplier().cocycle_residual(rep.group()) < 1e-12);
    }
}

#[test]
fn weyl_heisenberg_is_irreducible() {
    for d in [3, 5, 7] {
        let rep = weyl_heisenberg_finite(d).unwrap();
        assert_eq!(rep.commutant_dimension(), 1, "d = {d}");
        assert!(rep.is_irreducible());
    }
}

#[test]
fn weyl_heisenberg_duflo_constant_is_one() {
    for d in [3, 5, 7] {
        let rep = weyl_heisenberg_finite(d).unwrap();
        assert!((rep.duflo_constant() - 1.0).abs() < 1e-14);
    }
}

#[test]
fn orthogonality_sum_for_random_pairs() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(1);
    for _ in 0..20 {
        let psi = sample::gaussian_vector(&mut r, 3);
        let phi = sample::gaussian_vector(&mut r, 3);
        let c = rep.coefficient(&psi, &phi).unwrap();
        let lhs = c.norm_squared();
        let rhs = psi.norm_squared() * phi.norm_squared();
        assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0));
    }
}

#[test]
fn orthogonality_residual_weyl_heisenberg() {
    for d in [3, 5] {
        let rep = weyl_heisenberg_finite(d).unwrap();
        let report = rep.orthogonality_residual();
        assert!(report.residual < 1e-12, "d = {d}: {}", report.residual);
        assert!((report.duflo_estimate - 1.0).abs() < 1e-12);
        assert!(report.holds());
    }
}

#[test]
fn orthogonality_residual_flags_reducible_sum() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let sum = rep.direct_sum(&rep).unwrap();
    assert_eq!(sum.dim(), 6);
    assert_eq!(sum.commutant_dimension(), 4);
    assert!(!sum.is_irreducible());
    let report = sum.orthogonality_residual();
    assert!(report.residual > 0.05, "residual {}", report.residual);
    assert!(!report.holds());
    assert!(report.duflo_spread > 1e-3);
}

#[test]
fn rescaled_haar_scales_duflo() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let scaled = rep.with_rescaled_haar(4.0).unwrap();
    assert!((scaled.duflo_constant() - 2.0).abs() < 1e-14);
    let report = scaled.orthogonality_residual();
    assert!(report.residual < 1e-11);
    assert!((report.duflo_estimate - 2.0).abs() < 1e-12);
}

#[test]
fn coefficient_trivial_cases() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let e1 = Vector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
    let e2 = Vector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    assert!((rep.coefficient(&e1, &e1).unwrap().value(0) - 1.0).norm() < 1e-15);
    assert!(rep.coefficient(&e1, &e2).unwrap().value(0).norm() < 1e-15);
    assert!(matches!(rep.coefficient(&e1, &Vector::zeros(2)), Err(GroupError::DimensionMismatch { .. })));
}

#[test]
fn wavelet_transform_is_isometry() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(2);
    for _ in 0..20 {
        let psi = sample::gaussian_vector(&mut r, 3);
        let phi = sample::gaussian_vector(&mut r, 3);
        let w = rep.wavelet_transform(&psi).unwrap();
        let f = w.transform(&phi).unwrap();
        assert!((f.norm() - phi.norm()).abs() < 1e-12);
        let back = w.adjoint(&f).unwrap();
        assert!((back - &phi).norm() < 1e-12);
    }
}

#[test]
fn wavelet_rejects_zero_fiducial() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    assert!(matches!(rep.wavelet_transform(&Vector::zeros(3)), Err(GroupError::ZeroFiducial)));
    assert!(matches!(
        rep.rep_kernel(&Vector::zeros(3), &Operator::identity(3), 0, 0),
        Err(GroupError::ZeroFiducial)
    ));
}

#[test]
fn wavelet_intertwines_left_regular() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(3);
    let psi = sample::unit_vector(&mut r, 3);
    let phi = sample::gaussian_vector(&mut r, 3);
    let w = rep.wavelet_transform(&psi).unwrap();
    for g in 0..rep.order() {
        let lhs = w.transform(&rep.matrix(g).apply(&phi)).unwrap();
        let rhs = rep.left_regular(g, &w.transform(&phi).unwrap()).unwrap();
        assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12, "g = {g}");
    }
}

#[test]
fn left_regular_identity_unitarity_and_multiplier_algebra() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(4);
    let f = random_function(&rep, &mut r);
    assert!(rep.left_regular(0, &f).unwrap().sup_distance(&f).unwrap() < 1e-15);
    for g in 0..rep.order() {
        let rg = rep.left_regular(g, &f).unwrap();
        assert!((rg.norm() - f.norm()).abs() < 1e-12);
        for h in 0..rep.order() {
            // R(gh) = m(g, h) R(g) R(h), the same convention as U.
            let gh = rep.group().mul(g, h);
            let lhs = rep.left_regular(gh, &f).unwrap();
            let rhs = rep.left_regular(g, &rep.left_regular(h, &f).unwrap()).unwrap().scale(rep.multiplier().value(g, h));
            assert!(lhs.sup_distance(&rhs).unwrap() < 1e-12, "({g}, {h})");
        }
    }
}

#[test]
fn orbit_frame_is_normalized_tight() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(5);
    for _ in 0..5 {
        let psi = sample::unit_vector(&mut r, 3);
        let frame = rep.wavelet_transform(&psi).unwrap().frame().unwrap();
        let (a, b) = frame.frame_bounds();
        assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12, "({a}, {b})");
    }
}

#[test]
fn range_projection_and_reproducing_kernel() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(6);
    let psi = sample::unit_vector(&mut r, 3);
    let w = rep.wavelet_transform(&psi).unwrap();
    let f = random_function(&rep, &mut r);
    let pf = w.project_onto_range(&f).unwrap();
    let ppf = w.project_onto_range(&pf).unwrap();
    assert!(pf.sup_distance(&ppf).unwrap() < 1e-12);

    // Analyzed functions are reproduced by the kernel.
    let phi = sample::gaussian_vector(&mut r, 3);
    let c = w.transform(&phi).unwrap();
    let mu = rep.group().haar_weights();
    for g in 0..rep.order() {
        let s: C64 = (0..rep.order()).map(|gp| w.reproducing_kernel(g, gp) * c.value(gp) * mu[gp]).sum();
        assert!((s - c.value(g)).norm() < 1e-12);
    }

    // κ_ψ(I; ·, ·) is the reproducing kernel.
    let k = rep.rep_kernel_matrix(&psi, &Operator::identity(3)).unwrap();
    for g in 0..rep.order() {
        for gp in 0..rep.order() {
            assert!((k[(g, gp)] - w.reproducing_kernel(g, gp)).norm() < 1e-14);
            let single = rep.rep_kernel(&psi, &Operator::identity(3), g, gp).unwrap();
            assert!((single - k[(g, gp)]).norm() < 1e-14);
        }
    }
}

#[test]
fn weak_integral_reconstruction() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(7);
    let psi = sample::unit_vector(&mut r, 3);
    let id = Operator::identity(3);
    let k = rep.rep_kernel_matrix(&psi, &id).unwrap();
    assert!(rep.weak_integral_reconstruct(&psi, &k).unwrap().max_abs_diff(&id) < 1e-10);

    for _ in 0..5 {
        let a = sample::gaussian_operator(&mut r, 3);
        let k = rep.rep_kernel_matrix(&psi, &a).unwrap();
        assert!(rep.weak_integral_reconstruct(&psi, &k).unwrap().max_abs_diff(&a) < 1e-10);
        // Non-normalized fiducial.
        let psi2 = sample::gaussian_vector(&mut r, 3) * C64::new(3.0, 0.0);
        let k2 = rep.rep_kernel_matrix(&psi2, &a).unwrap();
        assert!(rep.weak_integral_reconstruct(&psi2, &k2).unwrap().max_abs_diff(&a) < 1e-10);
    }
}

#[test]
fn first_trace_formula() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(8);
    let psi = sample::unit_vector(&mut r, 3);
    assert!(rep.first_trace_formula_residual(&psi, &psi, &Operator::identity(3)).unwrap() < 1e-13);

    let x = sample::gaussian_operator(&mut r, 3);
    let y = sample::gaussian_operator(&mut r, 3);
    let traceless = x.commutator(&y);
    assert!(traceless.trace().norm() < 1e-12);
    let phi = sample::gaussian_vector(&mut r, 3);
    assert!(rep.first_trace_formula_residual(&psi, &phi, &traceless).unwrap() < 1e-12);

    // Orthogonal pair: right side vanishes.
    let e1 = Vector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
    let e2 = Vector::from_vec(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    assert!(rep.first_trace_formula_residual(&e1, &e2, &x).unwrap() < 1e-12);

    for _ in 0..10 {
        let a = sample::gaussian_operator(&mut r, 3);
        let psi = sample::gaussian_vector(&mut r, 3);
        let phi = sample::gaussian_vector(&mut r, 3);
        assert!(rep.first_trace_formula_residual(&psi, &phi, &a).unwrap() < 1e-11);
    }
}

#[test]
fn second_trace_formula() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let mut r = rng(9);
    let id = Operator::identity(3);
    assert!(rep.second_trace_formula_residual(&id, &(id.clone() * (1.0 / 3.0))).unwrap() < 1e-12);
    for _ in 0..10 {
        let a = sample::positive(&mut r, 3);
        let t = sample::positive(&mut r, 3);
        assert!(rep.second_trace_formula_residual(&a, &t).unwrap() < 1e-10);
    }
    let x = sample::gaussian_operator(&mut r, 3);
    let y = sample::gaussian_operator(&mut r, 3);
    let traceless = x.commutator(&y);
    let t = sample::positive(&mut r, 3);
    assert!(rep.second_trace_formula_residual(&traceless, &t).unwrap() < 1e-12);
}

#[test]
fn direct_sum_requires_same_group() {
    let a = weyl_heisenberg_finite(3).unwrap();
    let b = weyl_heisenberg_finite(5).unwrap();
    assert!(matches!(a.direct_sum(&b), Err(GroupError::GroupMismatch)));
}

#[test]
fn rep_rejects_non_projective_matrices() {
    let rep = weyl_heisenberg_finite(3).unwrap();
    let trivial = Multiplier::trivial(rep.group());
    let err = ProjectiveRep::new(rep.group().clone(), rep.matrices().to_vec(), trivial);
    assert!(matches!(err, Err(GroupError::ProjectiveRelation { .. })));

    let mut mats = rep.matrices().to_vec();
    mats[1] = mats[1].clone() * 2.0;
    let err = ProjectiveRep::new(rep.group().clone(), mats, rep.multiplier().clone());
    assert!(matches!(err, Err(GroupError::NotUnitary { element: 1, .. })));
}

// Grid and truncated continuous system.

#[test]
fn grid_validation_and_layout() {
    let g = Grid::new(6.0, 0.1).unwrap();
    assert_eq!(g.side(), 121);
    assert_eq!(g.len(), 121 * 121);
    assert!(g.coord(60).abs() < 1e-15);
    assert!((g.coord(0) + 6.0).abs() < 1e-12);
    assert!((g.cell_weight() - 0.01 / (2.0 * PI)).abs() < 1e-18);
    assert!(Grid::new(6.0, 0.25).is_ok());
    assert!(Grid::new(1.0, 0.3).is_err());
    assert!(Grid::new(0.5, 1.0).is_err());
    assert!(Grid::new(-1.0, 0.1).is_err());
    assert!(Grid::new(1.0, 0.0).is_err());
    let pts = Grid::new(1.0, 0.5).unwrap().points();
    assert_eq!(pts.len(), 25);
}

#[test]
fn truncated_rejects_tiny_fock_space() {
    let g = Grid::new(1.0, 0.5).unwrap();
    assert!(matches!(TruncatedWeylSystem::new(1, g), Err(GroupError::FockTooSmall(1))));
}

#[test]
fn truncated_displacement_at_origin_is_identity() {
    let sys = TruncatedWeylSystem::new(20, Grid::new(1.0, 0.5).unwrap()).unwrap();
    assert!(sys.displacement(0.0, 0.0).max_abs_diff(&Operator::identity(20)) < 1e-13);
}

#[test]
fn spectral_displacement_matches_matrix_exponential() {
    let sys = TruncatedWeylSystem::new(30, Grid::new(1.0, 0.5).unwrap()).unwrap();
    for &(q, p) in &[(0.3, -0.2), (1.5, 0.7), (-2.0, 1.1), (0.0, 2.5), (-3.0, -3.0)] {
        let a = sys.displacement(q, p);
        let b = sys.displacement_expm(q, p);
        assert!(a.max_abs_diff(&b) < 1e-11, "({q}, {p}): {}", a.max_abs_diff(&b));
    }
}

#[test]
fn vacuum_overlap_is_gaussian() {
    // |⟨0|U(q,p)|0⟩|² = e^{−|α|²} with α = (q + ip)/√2.
    let sys = TruncatedWeylSystem::new(40, Grid::new(1.0, 0.5).unwrap()).unwrap();
    for &(q, p) in &[(0.5, 0.0), (1.0, -1.0), (2.0, 0.5), (-1.2, 1.6)] {
        let c = sys.coherent_state(q, p);
        let alpha2 = (q * q + p * p) / 2.0;
        assert!((c[0].norm_sqr() - (-alpha2).exp()).abs() < 1e-12);
        assert!((c.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn coherent_state_amplitudes_are_poissonian() {
    let sys = TruncatedWeylSystem::new(40, Grid::new(1.0, 0.5).unwrap()).unwrap();
    let (q, p) = (1.0, 0.6);
    let alpha = C64::new(q, p) / 2f64.sqrt();
    let c = sys.coherent_state(q, p);
    let mut expected = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..15 {
        assert!((c[n] - expected).norm() < 1e-12, "n = {n}");
        expected *= alpha / ((n + 1) as f64).sqrt();
    }
}

#[test]
fn truncated_unitarity_bound() {
    let sys = TruncatedWeylSystem::new(60, Grid::new(1.0, 0.5).unwrap()).unwrap();
    for &(q, p) in &[(3.0, 0.0), (0.0, -3.0), (2.1, 2.1), (-1.0, 2.8)] {
        assert!(sys.displacement(q, p).unitarity_defect() < 1e-8);
    }
}

#[test]
fn truncated_weyl_relation_near_origin() {
    // U(z)U(w) = e^{−i(q p′ − p q′)/2} U(z + w).
    let sys = TruncatedWeylSystem::new(60, Grid::new(1.0, 0.5).unwrap()).unwrap();
    let (q, p, qq, pp) = (0.4, -0.3, -0.2, 0.5);
    let lhs = &sys.displacement(q, p) * &sys.displacement(qq, pp);
    let rhs = sys.displacement(q + qq, p + pp) * C64::from_polar(1.0, -(q * pp - p * qq) / 2.0);
    // Compare on low Fock levels, untouched by the truncation.
    for i in 0..10 {
        for j in 0..10 {
            assert!((lhs.get(i, j) - rhs.get(i, j)).norm() < 1e-10);
        }
    }
}

#[test]
fn grid_orthogonality_sum_for_vacuum() {
    let sys = TruncatedWeylSystem::new(40, Grid::new(6.0, 0.1).unwrap()).unwrap();
    let mut vac = Vector::zeros(40);
    vac[0] = C64::new(1.0, 0.0);
    let s = sys.orthogonality_sum(&vac).unwrap();
    assert!((s - 1.0).abs() < 1e-3, "sum {s}");
}

#[test]
fn column_iteration_matches_direct_displacement() {
    let sys = TruncatedWeylSystem::new(12, Grid::new(1.0, 0.5).unwrap()).unwrap();
    sys.for_each_columns(3, |k, cols| {
        let (q, p) = sys.grid().point(k);
        let u = sys.displacement_expm(q, p);
        for j in 0..12 {
            for c in 0..3 {
                assert!((cols[(j, c)] - u.get(j, c)).norm() < 1e-12);
            }
        }
    });
}

#[test]
fn truncation_warning_reports_headroom() {
    let small = TruncatedWeylSystem::new(40, Grid::new(6.0, 0.5).unwrap()).unwrap();
    assert!(small.truncation_warning().is_some());
    let fine = TruncatedWeylSystem::new(100, Grid::new(2.0, 0.5).unwrap()).unwrap();
    assert!(fine.truncation_warning().is_none());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn orbit_frame_tight_for_any_unit_fiducial(seed in any::<u64>(), d in prop::sample::select(vec![3usize, 5])) {
        let rep = weyl_heisenberg_finite(d).unwrap();
        let psi = sample::unit_vector(&mut rng(seed), d);
        let (a, b) = rep.wavelet_transform(&psi).unwrap().frame().unwrap().frame_bounds();
        prop_assert!((a - 1.0).abs() < 1e-12 && (b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn coefficient_orthogonality_relation(seed in any::<u64>()) {
        let rep = weyl_heisenberg_finite(5).unwrap();
        let mut r = rng(seed);
        let [p1, s1, p2, s2] = std::array::from_fn(|_| sample::gaussian_vector(&mut r, 5));
        let c1 = rep.coefficient(&s1, &p1).unwrap();
        let c2 = rep.coefficient(&s2, &p2).unwrap();
        // ⟨c1, c2⟩ = Σ μ ⟨φ₁, Uψ₁⟩⟨Uψ₂, φ₂⟩.
        let lhs = c1.inner(&c2).unwrap();
        let rhs = p1.dotc(&p2) * s2.dotc(&s1);
        prop_assert!((lhs - rhs).norm() < 1e-11 * (1.0 + rhs.norm()));
    }
}
