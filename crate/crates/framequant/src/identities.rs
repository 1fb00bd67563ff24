//! Residual computations shared by `framequant check` and the acceptance
//! suite. Every function returns a non-negative residual and draws its
//! random inputs from the generator it is handed.

use std::f64::consts::PI;

use cahill_glauber::{
    diagonal_trace_check, quasi_distribution, reconstruct, t_s_norm_report, t_s_operator, NormReport, SParameter,
    TruncatedWeylSystem,
};
use group_reps::{Grid, ProjectiveRep};
use hs_frames::{fiducial_projector, OperatorFrame, StarPath};
use operator_space::{outer, sample, Operator, Vector, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use wigner_weyl::{generalized_wigner, tm_action, uvu_action, weyl_map, wigner_distribution, wigner_rank_one, SampledWavefunction};

use crate::state::coherent_coefficients;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Fock levels used for grid test vectors; higher levels reach past `L = 6`.
pub const LOW_FOCK_LEVELS: usize = 6;

fn real(v: f64) -> SParameter {
    SParameter::real(v).expect("s != 1")
}

/// Unit vector on Fock levels `0..levels`, embedded in dimension `n`.
pub fn low_fock_vector(rng: &mut ChaCha8Rng, n: usize, levels: usize) -> Vector {
    let levels = levels.min(n);
    let mut v = Vector::zeros(n);
    let head = sample::unit_vector(rng, levels);
    v.rows_mut(0, levels).copy_from(&head);
    v
}

/// Unit-HS-norm analyzers: rank one, random full rank, self-adjoint.
pub fn analyzer_kinds(rng: &mut ChaCha8Rng, d: usize) -> Vec<(&'static str, Operator)> {
    let rank_one = fiducial_projector(&sample::unit_vector(rng, d));
    let full = sample::hs_normalized(rng, d);
    let h = sample::hermitian(rng, d);
    let selfadj = h.scale(C64::new(1.0 / h.hs_norm(), 0.0));
    vec![("rank_one", rank_one), ("full_rank", full), ("self_adjoint", selfadj)]
}

// Representations.

/// `max(|d̂_U − 1|, spread)` of the Duflo–Moore estimate.
pub fn duflo_deviation(rep: &ProjectiveRep, samples: usize, seed: u64) -> f64 {
    let r = rep.orthogonality_residual_with(samples, seed);
    (r.duflo_estimate - 1.0).abs().max(r.duflo_spread)
}

pub fn projective_residual(rep: &ProjectiveRep) -> f64 {
    rep.projective_residual().max(rep.multiplier().cocycle_residual(rep.group()))
}

pub fn rep_trace_formulas(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<(f64, f64)> {
    let d = rep.dim();
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let psi = sample::unit_vector(rng, d);
        let phi = sample::unit_vector(rng, d);
        let a = sample::gaussian_operator(rng, d);
        let t = sample::gaussian_operator(rng, d);
        first = first.max(rep.first_trace_formula_residual(&psi, &phi, &a)?);
        second = second.max(rep.second_trace_formula_residual(&a, &t)?);
    }
    Ok((first, second))
}

/// `‖a − Σ μμ′ κ_ψ(a) |η⟩⟨η′|‖_max` for random `a` and `ψ`.
pub fn weak_integral_residual(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let d = rep.dim();
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let psi = sample::unit_vector(rng, d);
        let a = sample::gaussian_operator(rng, d);
        let back = rep.weak_integral_reconstruct(&psi, &rep.rep_kernel_matrix(&psi, &a)?)?;
        worst = worst.max(back.max_abs_diff(&a));
    }
    Ok(worst)
}

/// `‖M⁻¹ F* F φ − φ‖` and `‖F φ‖² − ‖φ‖²` for the orbit frame of a random fiducial.
pub fn wavelet_frame_residual(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let d = rep.dim();
    let w = rep.wavelet_transform(&sample::unit_vector(rng, d))?;
    let frame = w.frame()?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let phi = sample::gaussian_vector(rng, d);
        let coeffs = frame.analyze(&phi)?;
        let back = frame.pseudo_inverse_apply(&coeffs)?;
        worst = worst.max((back - &phi).norm());
        worst = worst.max((coeffs.norm_squared() - phi.norm_squared()).abs());
    }
    Ok(worst)
}

// Generalized Wigner transform.

pub fn generalized_wigner_isometry(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = sample::gaussian_operator(rng, rep.dim());
        let s = generalized_wigner(rep, &a)?;
        worst = worst.max((s.norm() - a.hs_norm()).abs());
        worst = worst.max(weyl_map(rep, &s)?.max_abs_diff(&a));
    }
    Ok(worst)
}

/// `max_g ‖S_U(U(g)aU(g)†) − T_m(g) S_U a‖` and `max_g ‖S_U*(T_m(g) f) − U(g)(S_U* f)U(g)†‖`.
pub fn wigner_intertwining(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = sample::gaussian_operator(rng, rep.dim());
        let sa = generalized_wigner(rep, &a)?;
        let f = frame_engine_function(rep, rng);
        let wf = weyl_map(rep, &f)?;
        for g in 0..rep.order() {
            let lhs = generalized_wigner(rep, &uvu_action(rep, g, &a)?)?;
            worst = worst.max(lhs.distance(&tm_action(rep, g, &sa)?)?);
            let back = weyl_map(rep, &tm_action(rep, g, &f)?)?;
            worst = worst.max(back.hs_distance(&uvu_action(rep, g, &wf)?));
        }
    }
    Ok(worst)
}

fn frame_engine_function(rep: &ProjectiveRep, rng: &mut ChaCha8Rng) -> frame_engine::PhaseFunction {
    frame_engine::PhaseFunction::from_fn(rep.group().points().clone(), |_| sample::gaussian(rng))
}

// Hilbert–Schmidt frames.

/// `| ‖D_T a‖ − ‖a‖_HS |` over the analyzer kinds.
pub fn hs_isometry(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for (_, t) in analyzer_kinds(rng, rep.dim()) {
        let f = OperatorFrame::new(rep.clone(), t)?;
        for _ in 0..samples {
            let a = sample::gaussian_operator(rng, rep.dim());
            worst = worst.max((f.dequantize(&a)?.norm() - a.hs_norm()).abs());
        }
    }
    Ok(worst)
}

/// `‖Q_T D_T a − a‖_max`.
pub fn hs_quantize_inverse(frame: &OperatorFrame, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = sample::gaussian_operator(rng, frame.dim());
        worst = worst.max(frame.quantize(&frame.dequantize(&a)?)?.max_abs_diff(&a));
    }
    Ok(worst)
}

/// Residual of `⟨D_T a, D_S b⟩ = ⟨S, T⟩⟨a, b⟩` over random tuples.
pub fn hs_ortho_ortho(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, tuples: usize) -> Result<f64> {
    let d = rep.dim();
    let mut worst = 0.0f64;
    for _ in 0..tuples {
        let t = OperatorFrame::new(rep.clone(), sample::hs_normalized(rng, d))?;
        let s = OperatorFrame::new(rep.clone(), sample::hs_normalized(rng, d))?;
        let a = sample::gaussian_operator(rng, d);
        let b = sample::gaussian_operator(rng, d);
        worst = worst.max(t.orthogonality_check(&s, &a, &b)?);
    }
    Ok(worst)
}

/// `max |⟨D_T a, D_S b⟩|` for the HS-orthogonal analyzers `|0⟩⟨0|` and `|1⟩⟨2|`.
pub fn hs_orthogonal_ranges(rep: &ProjectiveRep, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let d = rep.dim();
    let t = OperatorFrame::new(rep.clone(), Operator::unit(d, 0, 0))?;
    let s = OperatorFrame::new(rep.clone(), Operator::unit(d, 1, 2))?;
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = sample::gaussian_operator(rng, d);
        let b = sample::gaussian_operator(rng, d);
        worst = worst.max(t.dequantize(&a)?.inner(&s.dequantize(&b)?)?.norm());
    }
    Ok(worst)
}

/// `‖D_T(ab) − D_T a ⋆ D_T b‖` via `path`.
pub fn star_homomorphism(frame: &OperatorFrame, rng: &mut ChaCha8Rng, pairs: usize, path: StarPath) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let a = sample::gaussian_operator(rng, frame.dim());
        let b = sample::gaussian_operator(rng, frame.dim());
        let target = frame.dequantize(&(&a * &b))?;
        let star = frame.star_product(&frame.dequantize(&a)?, &frame.dequantize(&b)?, path)?;
        worst = worst.max(star.distance(&target)?);
    }
    Ok(worst)
}

/// Expectation `tr(a ρ)` via the χ^L and χ^R paths, for Hermitian pairs.
pub fn expectation_residuals(frame: &OperatorFrame, rng: &mut ChaCha8Rng, pairs: usize) -> Result<(f64, f64)> {
    let s = frame.default_fiducial();
    let (mut left, mut right) = (0.0f64, 0.0f64);
    for _ in 0..pairs {
        let a = sample::hermitian(rng, frame.dim());
        let rho = sample::hermitian(rng, frame.dim());
        let direct = (&a * &rho).trace();
        left = left.max((frame.expectation(&s, &a, &rho)? - direct).norm());
        right = right.max((frame.expectation_right(&s, &a, &rho)? - direct).norm());
    }
    Ok((left, right))
}

/// Triple-sum (γ-kernel) and diagonal-point trace formulas.
pub fn trace_formula_residuals(frame: &OperatorFrame, rng: &mut ChaCha8Rng, samples: usize) -> Result<(f64, f64)> {
    let s = frame.default_fiducial();
    let (mut triple, mut diagonal) = (0.0f64, 0.0f64);
    for _ in 0..samples {
        let rho = sample::gaussian_operator(rng, frame.dim());
        triple = triple.max((frame.trace_triple(&s, &frame.dequantize(&rho)?)? - rho.trace()).norm());
        diagonal = diagonal.max((frame.trace_diagonal(&rho)? - rho.trace()).norm());
    }
    Ok((triple, diagonal))
}

/// `|‖a‖ via kernel spectrum − ‖a‖_op|` for Hermitian `a`.
pub fn intrinsic_norm(frame: &OperatorFrame, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let a = sample::hermitian(rng, frame.dim());
        worst = worst.max((frame.operator_norm_via_kernel(&a)? - a.op_norm()).abs());
    }
    Ok(worst)
}

pub fn kernel_roundtrip(frame: &OperatorFrame, rng: &mut ChaCha8Rng, samples: usize) -> Result<f64> {
    let mut worst = frame.kernel_roundtrip(&frame.analyzer().clone())?;
    for _ in 0..samples {
        worst = worst.max(frame.kernel_roundtrip(&sample::gaussian_operator(rng, frame.dim()))?);
    }
    Ok(worst)
}

/// Jordan and Lie kernels against the left kernels of `a∘b` and `−i[a, b]`.
pub fn jordan_lie(frame: &OperatorFrame, rng: &mut ChaCha8Rng) -> Result<f64> {
    let a = sample::hermitian(rng, frame.dim());
    let b = sample::hermitian(rng, frame.dim());
    let circ = a.anticommutator(&b).scale(C64::new(0.5, 0.0));
    let bracket = a.commutator(&b).scale(C64::new(0.0, -1.0));
    let jordan = frame.jordan_kernel(&a, &b)? - frame.left_kernel_matrix(&circ)?;
    let lie = frame.lie_kernel(&a, &b)? - frame.left_kernel_matrix(&bracket)?;
    Ok(jordan.iter().chain(lie.iter()).map(|c| c.norm()).fold(0.0, f64::max))
}

pub fn lm_intertwining(frame: &OperatorFrame, samples: usize, seed: u64) -> Result<f64> {
    Ok(frame.intertwining_lm_residual(samples, seed)?.max(frame.m_cocycle_residual()))
}

/// Tolerance of the pure-state classifier.
pub const PURE_STATE_TOL: f64 = 1e-9;

/// `(pure cases, non-pure cases)` for the classifier.
pub fn pure_state_cases(rng: &mut ChaCha8Rng, d: usize, per_class: usize) -> (Vec<Operator>, Vec<Operator>) {
    let pure: Vec<Operator> = (0..per_class).map(|_| fiducial_projector(&sample::unit_vector(rng, d))).collect();
    let impure = (0..per_class)
        .map(|k| match k % 5 {
            // Full-rank density matrix: unit trace, not idempotent.
            0 => sample::density_matrix(rng, d),
            // Rank-two projector: idempotent, trace 2.
            1 => {
                let u = sample::unit_vector(rng, d);
                let mut v = sample::gaussian_vector(rng, d);
                v -= &u * u.dotc(&v);
                v /= C64::new(v.norm(), 0.0);
                &outer(&u, &u) + &outer(&v, &v)
            }
            // Scaled projector: trace and idempotence both broken.
            2 => fiducial_projector(&sample::unit_vector(rng, d)).scale(C64::new(rng.random_range(0.2..0.9), 0.0)),
            // Rank-one non-Hermitian |u⟩⟨v| with ⟨v, u⟩ = 1.
            3 => {
                let u = sample::unit_vector(rng, d);
                let mut v = sample::gaussian_vector(rng, d);
                v += &u * (C64::new(1.0, 0.0) - u.dotc(&v));
                outer(&u, &v)
            }
            // Equal mixture of two orthogonal pure states.
            _ => {
                let u = sample::unit_vector(rng, d);
                let mut v = sample::gaussian_vector(rng, d);
                v -= &u * u.dotc(&v);
                v /= C64::new(v.norm(), 0.0);
                (&outer(&u, &u) + &outer(&v, &v)).scale(C64::new(0.5, 0.0))
            }
        })
        .collect();
    (pure, impure)
}

/// Number of misclassified cases.
pub fn pure_state_misclassified(frame: &OperatorFrame, pure: &[Operator], impure: &[Operator]) -> Result<usize> {
    let s = frame.default_fiducial();
    let mut wrong = 0;
    for (ops, expected) in [(pure, true), (impure, false)] {
        for a in ops {
            if frame.pure_state_test(&s, &frame.dequantize(a)?, PURE_STATE_TOL)? != expected {
                wrong += 1;
            }
        }
    }
    Ok(wrong)
}

// Wigner distributions on a grid.

/// `max |∫∫ Q₁* Q₂ − (2π)⁻¹⟨φ₁,φ₂⟩⟨ψ₂,ψ₁⟩| / |rhs|` over random quadruples.
pub fn moyal_relative_error(grid: &Grid, n_fock: usize, rng: &mut ChaCha8Rng, quadruples: usize) -> Result<f64> {
    let mut worst = 0.0f64;
    for _ in 0..quadruples {
        let v: Vec<Vector> = (0..4).map(|_| low_fock_vector(rng, n_fock, LOW_FOCK_LEVELS)).collect();
        let s: Vec<SampledWavefunction> = v.iter().map(|x| SampledWavefunction::from_fock(grid.clone(), x)).collect();
        let q1 = wigner_rank_one(&s[0], &s[1], grid)?;
        let q2 = wigner_rank_one(&s[2], &s[3], grid)?;
        let rhs = v[0].dotc(&v[2]) * v[3].dotc(&v[1]) / (2.0 * PI);
        worst = worst.max((q1.inner(&q2)? - rhs).norm() / rhs.norm());
    }
    Ok(worst)
}

/// `max_q |∫ Q(q, p) dp − |ψ(q)|²|`.
pub fn marginal_residual(grid: &Grid, coeffs: &Vector) -> Result<f64> {
    let psi = SampledWavefunction::from_fock(grid.clone(), coeffs);
    let q = wigner_distribution(&psi, grid)?;
    Ok(q.marginal_q().iter().zip(psi.density()).map(|(m, d)| (m - d).norm()).fold(0.0, f64::max))
}

/// `max(0, sup |Q| − ‖ψ‖²/π)`.
pub fn sup_bound_excess(grid: &Grid, coeffs: &Vector) -> Result<f64> {
    let psi = SampledWavefunction::from_fock(grid.clone(), coeffs);
    let q = wigner_distribution(&psi, grid)?;
    Ok((q.sup_norm() - psi.norm_squared() / PI).max(0.0))
}

/// `sup |Q_vac − e^{−q²−p²}/π|`.
pub fn vacuum_wigner_residual(grid: &Grid, n_fock: usize) -> Result<f64> {
    let mut e0 = Vector::zeros(n_fock);
    e0[0] = C64::new(1.0, 0.0);
    let q = wigner_distribution(&SampledWavefunction::from_fock(grid.clone(), &e0), grid)?;
    Ok((0..grid.len())
        .map(|k| {
            let (x, p) = grid.point(k);
            (q.value(k) - (-x * x - p * p).exp() / PI).norm()
        })
        .fold(0.0, f64::max))
}

/// Fock coefficients of `|α⟩` with `α = 1 + 0.5i`.
pub fn reference_coherent(n_fock: usize) -> Vector {
    coherent_coefficients(C64::new(1.0, 0.5), n_fock)
}

// Cahill–Glauber family.

/// Closed-form norms of `T_{−1/2}` at `n_fock`.
pub fn cg_norms(n_fock: usize) -> Result<NormReport> {
    Ok(t_s_norm_report(real(-0.5), n_fock)?)
}

/// `‖T_{−1} − |0⟩⟨0|‖_max`.
pub fn cg_t_minus_one(n_fock: usize) -> f64 {
    t_s_operator(real(-1.0), n_fock).max_abs_diff(&Operator::unit(n_fock, 0, 0))
}

/// `‖T_0 − 2·parity‖_max`.
pub fn cg_t_zero(n_fock: usize) -> f64 {
    let parity: Vec<f64> = (0..n_fock).map(|n| if n % 2 == 0 { 2.0 } else { -2.0 }).collect();
    t_s_operator(real(0.0), n_fock).max_abs_diff(&Operator::from_real_diagonal(&parity))
}

/// `sup |𝖠_{−1}(z) − e^{−(q²+p²)/2}|` for the vacuum.
pub fn husimi_vacuum(sys: &TruncatedWeylSystem) -> Result<f64> {
    let q = quasi_distribution(&Operator::unit(sys.n_fock(), 0, 0), real(-1.0), sys)?;
    Ok((0..sys.len())
        .map(|k| {
            let (x, p) = sys.grid().point(k);
            (q.value(k) - (-(x * x + p * p) / 2.0).exp()).norm()
        })
        .fold(0.0, f64::max))
}

/// `max(0, −min Re 𝖠_{−1})` for a random low-Fock pure state.
pub fn husimi_negativity(sys: &TruncatedWeylSystem, rng: &mut ChaCha8Rng) -> Result<f64> {
    let v = low_fock_vector(rng, sys.n_fock(), LOW_FOCK_LEVELS);
    let q = quasi_distribution(&outer(&v, &v), real(-1.0), sys)?;
    Ok((-q.min_real()).max(0.0))
}

/// `|Σ_z (h²/2π) 𝖠_{−1/2}(z) − tr ρ|` for a random low-Fock pure state.
pub fn cg_diagonal_trace(sys: &TruncatedWeylSystem, rng: &mut ChaCha8Rng) -> Result<f64> {
    let v = low_fock_vector(rng, sys.n_fock(), 3);
    Ok(diagonal_trace_check(&outer(&v, &v), real(-0.5), sys)?)
}

/// Relative HS error of the tight-frame reconstruction of `|i⟩⟨j|` at `s`.
pub fn cg_reconstruction(sys: &TruncatedWeylSystem, s: f64, i: usize, j: usize) -> Result<f64> {
    Ok(reconstruct(&Operator::unit(sys.n_fock(), i, j), real(s), sys)?.relative_error)
}
