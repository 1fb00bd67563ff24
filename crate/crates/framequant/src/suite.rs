//! The property suite behind `framequant check`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use cahill_glauber::TruncatedWeylSystem;
use group_reps::{weyl_heisenberg_finite, Grid, ProjectiveRep};
use hs_frames::{OperatorFrame, StarPath};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::identities as id;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Sizes a suite run works at.
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub d: usize,
    pub n_fock: usize,
    pub grid: Grid,
    pub seed: u64,
}

impl SuiteParams {
    fn rep(&self) -> Result<ProjectiveRep> {
        Ok(weyl_heisenberg_finite(self.d)?)
    }

    fn frame(&self) -> Result<OperatorFrame> {
        Ok(OperatorFrame::with_default_analyzer(self.rep()?)?)
    }

    fn system(&self) -> Result<TruncatedWeylSystem> {
        Ok(TruncatedWeylSystem::new(self.n_fock, self.grid.clone())?)
    }
}

/// Explicit triple sums over `(G × G)³` cost `d¹²`; they run at `d = 3` only.
fn frame_d3() -> Result<OperatorFrame> {
    Ok(OperatorFrame::with_default_analyzer(weyl_heisenberg_finite(3)?)?)
}

/// ChaCha8 seeded with the run seed, on a stream derived from the check name.
pub fn check_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(name));
    rng
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// A named residual with its default tolerance.
pub struct CheckSpec {
    pub name: &'static str,
    pub label: &'static str,
    pub tolerance: f64,
    run: fn(&SuiteParams, &mut ChaCha8Rng) -> Result<f64>,
}

macro_rules! check {
    ($name:literal, $label:literal, $tol:expr, $run:expr) => {
        CheckSpec { name: $name, label: $label, tolerance: $tol, run: $run }
    };
}

/// Every check, sorted by name.
pub fn registry() -> Vec<CheckSpec> {
    let mut checks = vec![
        check!("cg_diagonal_trace", "diagonal phase-space integral of the s = -1/2 quasi-distribution", 1e-3, |p, r| {
            id::cg_diagonal_trace(&p.system()?, r)
        }),
        check!("cg_hs_norm", "Hilbert-Schmidt norm of T_s at s = -1/2 equals sqrt 2", 1e-6, |p, _| {
            let n = id::cg_norms(p.n_fock)?;
            Ok((n.hs_norm - n.expected_hs_norm).abs())
        }),
        check!("cg_husimi_positivity", "Husimi function (s = -1) of a pure state is non-negative", 1e-10, |p, r| {
            id::husimi_negativity(&p.system()?, r)
        }),
        check!("cg_husimi_vacuum", "Husimi function of the vacuum is exp(-(q^2+p^2)/2)", 1e-6, |p, _| {
            id::husimi_vacuum(&p.system()?)
        }),
        check!("cg_op_norm", "operator norm of T_s at s = -1/2 equals 4/3", 1e-10, |p, _| {
            let n = id::cg_norms(p.n_fock)?;
            Ok((n.op_norm - n.expected_op_norm).abs())
        }),
        check!("cg_reconstruction_offdiagonal", "tight-frame reconstruction of |0><1| at s = -1", 1e-2, |p, _| {
            id::cg_reconstruction(&p.system()?, -1.0, 0, 1)
        }),
        check!("cg_reconstruction_vacuum", "tight-frame reconstruction of |0><0| at s = -1", 1e-2, |p, _| {
            id::cg_reconstruction(&p.system()?, -1.0, 0, 0)
        }),
        check!("cg_t_minus_one", "T_{-1} is the vacuum projector", 0.0, |p, _| Ok(id::cg_t_minus_one(p.n_fock))),
        check!("cg_t_zero_parity", "T_0 is twice the parity operator", 1e-14, |p, _| Ok(id::cg_t_zero(p.n_fock))),
        check!("cg_trace", "trace of T_s at s = -1/2 equals 1", 1e-10, |p, _| {
            let n = id::cg_norms(p.n_fock)?;
            Ok((n.trace - n.expected_trace).norm())
        }),
        check!("cg_trace_norm", "trace norm of T_s at s = -1/2 equals 2", 1e-6, |p, _| {
            let n = id::cg_norms(p.n_fock)?;
            Ok((n.trace_norm - n.expected_trace_norm).abs())
        }),
        check!("frame_wavelet_reconstruction", "orbit of a unit vector is a normalized tight frame", 1e-11, |p, r| {
            id::wavelet_frame_residual(&p.rep()?, r, 10)
        }),
        check!("hs_expectation_left", "expectation tr(a rho) from the left-kernel triple sum", 1e-9, |p, r| {
            Ok(id::expectation_residuals(&p.frame()?, r, 10)?.0)
        }),
        check!("hs_expectation_right", "expectation tr(a rho) from the right-kernel triple sum", 1e-9, |p, r| {
            Ok(id::expectation_residuals(&p.frame()?, r, 10)?.1)
        }),
        check!("hs_intrinsic_norm", "operator norm from the spectrum of the left kernel", 1e-8, |p, r| {
            id::intrinsic_norm(&p.frame()?, r, 5)
        }),
        check!("hs_isometry", "dequantization is an isometry for rank-one, full-rank and self-adjoint analyzers", 1e-11, |p, r| {
            id::hs_isometry(&p.rep()?, r, 10)
        }),
        check!("hs_jordan_lie", "Jordan and Lie kernel products match the symmetrized and bracket kernels", 1e-10, |p, r| {
            id::jordan_lie(&p.frame()?, r)
        }),
        check!("hs_kernel_roundtrip", "triple-kernel and gamma-kernel reconstruction of an operator at d = 3", 1e-9, |_, r| {
            id::kernel_roundtrip(&frame_d3()?, r, 3)
        }),
        check!("hs_lm_intertwining", "two-sided group action intertwines with the left m-representation", 1e-11, |p, _| {
            id::lm_intertwining(&p.frame()?, 3, p.seed)
        }),
        check!("hs_ortho_ortho", "orthogonality relations between frames of two analyzers", 1e-10, |p, r| {
            id::hs_ortho_ortho(&p.rep()?, r, 10)
        }),
        check!("hs_orthogonal_ranges", "HS-orthogonal analyzers have orthogonal transform ranges", 1e-11, |p, r| {
            id::hs_orthogonal_ranges(&p.rep()?, r, 10)
        }),
        check!("hs_pure_state_classifier", "pure states are the self-adjoint star-idempotents of unit trace", 0.0, |p, r| {
            let (pure, impure) = id::pure_state_cases(r, p.d, 10);
            Ok(id::pure_state_misclassified(&p.frame()?, &pure, &impure)? as f64)
        }),
        check!("hs_quantize_inverse", "quantization inverts dequantization", 1e-11, |p, r| {
            id::hs_quantize_inverse(&p.frame()?, r, 10)
        }),
        check!("hs_star_homomorphism_kernel", "star product homomorphism via the triple kernel sum at d = 3", 1e-9, |_, r| {
            id::star_homomorphism(&frame_d3()?, r, 3, StarPath::Kernel)
        }),
        check!("hs_star_homomorphism_operator", "star product homomorphism via the operator path", 1e-9, |p, r| {
            id::star_homomorphism(&p.frame()?, r, 10, StarPath::Operator)
        }),
        check!("hs_trace_diagonal", "operator trace from the diagonal points of the frame transform", 1e-10, |p, r| {
            Ok(id::trace_formula_residuals(&p.frame()?, r, 10)?.1)
        }),
        check!("hs_trace_triple", "operator trace from the gamma-kernel sum", 1e-10, |p, r| {
            Ok(id::trace_formula_residuals(&p.frame()?, r, 10)?.0)
        }),
        check!("rep_duflo_constant", "Duflo-Moore constant of the Weyl-Heisenberg representation is 1", 1e-11, |p, _| {
            Ok(id::duflo_deviation(&p.rep()?, 20, p.seed))
        }),
        check!("rep_orthogonality", "orthogonality relations of the square-integrable representation", 1e-11, |p, _| {
            Ok(p.rep()?.orthogonality_residual_with(20, p.seed).residual)
        }),
        check!("rep_projective_multiplier", "projective representation law and multiplier cocycle identity", 1e-12, |p, _| {
            Ok(id::projective_residual(&p.rep()?))
        }),
        check!("rep_trace_formula_first", "first trace formula of the group integral", 1e-10, |p, r| {
            Ok(id::rep_trace_formulas(&p.rep()?, r, 10)?.0)
        }),
        check!("rep_trace_formula_second", "second trace formula of the group integral", 1e-10, |p, r| {
            Ok(id::rep_trace_formulas(&p.rep()?, r, 10)?.1)
        }),
        check!("rep_weak_integral", "weak-integral reconstruction from the representation kernel", 1e-11, |p, r| {
            id::weak_integral_residual(&p.rep()?, r, 10)
        }),
        check!("wigner_marginal_coherent", "position marginal of the Wigner function, coherent state 1+0.5i", 1e-4, |p, _| {
            id::marginal_residual(&p.grid, &id::reference_coherent(p.n_fock))
        }),
        check!("wigner_marginal_vacuum", "position marginal of the Wigner function, vacuum", 1e-4, |p, _| {
            let mut e0 = operator_space::Vector::zeros(p.n_fock);
            e0[0] = operator_space::ONE;
            id::marginal_residual(&p.grid, &e0)
        }),
        check!("wigner_moyal", "Moyal identity, relative error", 1e-3, |p, r| id::moyal_relative_error(&p.grid, p.n_fock, r, 3)),
        check!("wigner_sup_bound", "Wigner function bounded by |psi|^2/pi", 1e-10, |p, r| {
            let v = id::low_fock_vector(r, p.n_fock, id::LOW_FOCK_LEVELS);
            let coherent = id::sup_bound_excess(&p.grid, &id::reference_coherent(p.n_fock))?;
            Ok(id::sup_bound_excess(&p.grid, &v)?.max(coherent))
        }),
        check!("wigner_vacuum_gaussian", "vacuum Wigner function is exp(-q^2-p^2)/pi", 1e-6, |p, _| {
            id::vacuum_wigner_residual(&p.grid, p.n_fock)
        }),
        check!("ww_generalized_wigner_isometry", "generalized Wigner transform is an isometry inverted by the Weyl map", 1e-11, |p, r| {
            id::generalized_wigner_isometry(&p.rep()?, r, 10)
        }),
        check!("ww_intertwining", "generalized Wigner transform and Weyl map intertwine the group actions", 1e-11, |p, r| {
            id::wigner_intertwining(&p.rep()?, r, 3)
        }),
    ];
    checks.sort_by_key(|c| c.name);
    checks
}

pub fn check_names() -> Vec<&'static str> {
    registry().iter().map(|c| c.name).collect()
}

/// Result of one check.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub paper_ref: String,
    /// `None` when the computation itself failed.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckSpec {
    pub fn run(&self, params: &SuiteParams, tolerance: f64) -> CheckOutcome {
        let mut rng = check_rng(params.seed, self.name);
        let (residual, error) = match (self.run)(params, &mut rng) {
            Ok(r) => (Some(r), None),
            Err(e) => (None, Some(e.to_string())),
        };
        CheckOutcome {
            name: self.name.into(),
            paper_ref: self.label.into(),
            residual,
            tolerance,
            pass: residual.is_some_and(|r| r <= tolerance),
            error,
        }
    }
}

/// Runs `checks` on up to `threads` workers; the output order follows `checks`.
pub fn run_checks(checks: &[(CheckSpec, f64)], params: &SuiteParams, threads: usize) -> Vec<CheckOutcome> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<CheckOutcome>>> = Mutex::new(vec![None; checks.len()]);
    std::thread::scope(|scope| {
        for _ in 0..threads.clamp(1, checks.len().max(1)) {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some((spec, tol)) = checks.get(k) else { break };
                let outcome = spec.run(params, *tol);
                slots.lock().expect("no worker panics while holding the lock")[k] = Some(outcome);
            });
        }
    });
    slots.into_inner().expect("workers joined").into_iter().map(|o| o.expect("every check ran")).collect()
}
