use std::fmt::Write as _;

use cahill_glauber::{quasi_distribution, TruncatedWeylSystem};
use group_reps::weyl_heisenberg_finite;
use hs_frames::{OperatorFrame, StarPath};
use operator_space::{outer, sample};
use serde::Serialize;
use wigner_weyl::{wigner_distribution, SampledWavefunction};

use crate::config::{ConfigEcho, RunConfig};
use crate::suite::{check_rng, registry, run_checks, CheckOutcome};
use crate::CliError;

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// Exit code when a check fails.
pub const EXIT_CHECK_FAILED: i32 = 1;

/// Tolerance of the star-demo homomorphism residual.
pub const STAR_DEMO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub version: String,
    pub schema: u32,
    pub config: ConfigEcho,
    pub checks: Vec<CheckOutcome>,
    pub all_pass: bool,
}

impl CheckReport {
    pub fn exit_code(&self) -> i32 {
        if self.all_pass {
            0
        } else {
            EXIT_CHECK_FAILED
        }
    }
}

pub fn version() -> String {
    env!("CARGO_PKG_VERSION").to_string()
}

/// Runs every registered check at the configured sizes.
pub fn cmd_check(cfg: &RunConfig) -> CheckReport {
    let checks: Vec<_> = registry()
        .into_iter()
        .map(|c| {
            let tol = cfg.tolerance(c.name, c.tolerance);
            (c, tol)
        })
        .collect();
    let outcomes = run_checks(&checks, &cfg.suite_params(), cfg.threads);
    let all_pass = outcomes.iter().all(|o| o.pass);
    CheckReport { version: version(), schema: SCHEMA_VERSION, config: cfg.echo(), checks: outcomes, all_pass }
}

/// Round-trip float formatting: 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Wigner function of the configured state, CSV `q,p,value`, row-major.
pub fn cmd_wigner(cfg: &RunConfig) -> Result<String, CliError> {
    let coeffs = cfg.state.coefficients(cfg.n_fock)?;
    let psi = SampledWavefunction::from_fock(cfg.grid.clone(), &coeffs);
    let q = wigner_distribution(&psi, &cfg.grid)?;
    let mut out = String::from("q,p,value\n");
    for k in 0..cfg.grid.len() {
        let (x, p) = cfg.grid.point(k);
        writeln!(out, "{},{},{}", fmt_f64(x), fmt_f64(p), fmt_f64(q.value(k).re)).expect("writing to a String");
    }
    Ok(out)
}

/// Quasi-distribution of the configured state's projector, CSV `q,p,re,im`.
pub fn cmd_quasi(cfg: &RunConfig) -> Result<String, CliError> {
    let coeffs = cfg.state.coefficients(cfg.n_fock)?;
    let sys = TruncatedWeylSystem::new(cfg.n_fock, cfg.grid.clone())?;
    let q = quasi_distribution(&outer(&coeffs, &coeffs), cfg.s, &sys)?;
    let mut out = String::from("q,p,re,im\n");
    for k in 0..sys.len() {
        let (x, p) = sys.grid().point(k);
        let v = q.value(k);
        writeln!(out, "{},{},{},{}", fmt_f64(x), fmt_f64(p), fmt_f64(v.re), fmt_f64(v.im)).expect("writing to a String");
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct StarDemoNorms {
    pub dequantized_a: f64,
    pub dequantized_b: f64,
    pub star_product: f64,
    pub dequantized_ab: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct StarDemo {
    pub version: String,
    pub schema: u32,
    pub config: ConfigEcho,
    pub norms: StarDemoNorms,
    /// `‖D_T(ab) − D_T a ⋆ D_T b‖` via the operator path.
    pub residual_operator: f64,
    /// The same via the triple kernel sum; computed for `d = 3` only.
    pub residual_kernel: Option<f64>,
    /// Largest of the computed residuals.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `D_T(a)`, `D_T(b)`, `D_T(a) ⋆ D_T(b)` and `D_T(ab)` for a seeded random pair.
pub fn cmd_star_demo(cfg: &RunConfig) -> Result<StarDemo, CliError> {
    let frame = OperatorFrame::with_default_analyzer(weyl_heisenberg_finite(cfg.d)?)?;
    let mut rng = check_rng(cfg.seed, "star-demo");
    let a = sample::gaussian_operator(&mut rng, cfg.d);
    let b = sample::gaussian_operator(&mut rng, cfg.d);
    let da = frame.dequantize(&a)?;
    let db = frame.dequantize(&b)?;
    let dab = frame.dequantize(&(&a * &b))?;
    let star = frame.star_product(&da, &db, StarPath::Operator)?;
    let residual_operator = star.distance(&dab)?;
    let residual_kernel = if cfg.d == 3 {
        Some(frame.star_product(&da, &db, StarPath::Kernel)?.distance(&dab)?)
    } else {
        None
    };
    let residual = residual_kernel.map_or(residual_operator, |k| k.max(residual_operator));
    let tolerance = cfg.tolerance("star-demo", STAR_DEMO_TOL);
    Ok(StarDemo {
        version: version(),
        schema: SCHEMA_VERSION,
        config: cfg.echo(),
        norms: StarDemoNorms {
            dequantized_a: da.norm(),
            dequantized_b: db.norm(),
            star_product: star.norm(),
            dequantized_ab: dab.norm(),
        },
        residual_operator,
        residual_kernel,
        residual,
        tolerance,
        pass: residual <= tolerance,
    })
}
