use std::collections::BTreeMap;
use std::path::PathBuf;

use cahill_glauber::SParameter;
use clap::{Args, Parser, Subcommand};
use group_reps::Grid;
use serde::Serialize;

use crate::state::{parse_complex, StateSpec};
use crate::suite::{check_names, SuiteParams};
use crate::CliError;

/// Odd dimensions the finite Weyl–Heisenberg suites accept.
pub const SUPPORTED_D: [usize; 3] = [3, 5, 7];
pub const MAX_N_FOCK: usize = 200;
pub const THREADS_ENV: &str = "FRAMEQUANT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "framequant", version, about = "Frame quantization identity suite and phase-space exports")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Run the property suite and print a JSON report.
    Check,
    /// Wigner function of a state as CSV `q,p,value`.
    Wigner,
    /// s-parametrized quasi-distribution of a state as CSV `q,p,re,im`.
    Quasi,
    /// Star-product homomorphism for a seeded random pair, as JSON.
    StarDemo,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Odd dimension of the finite Weyl–Heisenberg representation (3, 5 or 7).
    #[arg(long, global = true, default_value_t = 3)]
    pub d: usize,

    /// Truncated Fock dimension.
    #[arg(long, global = true, default_value_t = 40)]
    pub n_fock: usize,

    /// Phase-space grid `L,h`: square [-L, L]^2 with spacing h.
    #[arg(long, global = true, default_value = "6,0.1", allow_hyphen_values = true)]
    pub grid: String,

    /// Cahill–Glauber parameter `re,im`.
    #[arg(long, global = true, default_value = "-1,0", allow_hyphen_values = true)]
    pub s: String,

    /// State: vacuum, fock:n or coherent:re,im.
    #[arg(long, global = true, default_value = "vacuum", allow_hyphen_values = true)]
    pub state: String,

    /// Seed of the ChaCha8 generator behind every random input.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Tolerance override `name=value`; `all=value` applies to every check.
    #[arg(long = "tol", global = true, value_name = "NAME=VAL")]
    pub tol: Vec<String>,

    /// Output path; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// A validated run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub d: usize,
    pub n_fock: usize,
    pub grid: Grid,
    pub s: SParameter,
    pub state: StateSpec,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    pub out: Option<PathBuf>,
    pub threads: usize,
}

impl RunConfig {
    /// Validates `cli`; `threads_env` is the raw value of [`THREADS_ENV`].
    pub fn from_cli(cli: &Cli, threads_env: Option<&str>) -> Result<Self, CliError> {
        let o = &cli.options;
        if !SUPPORTED_D.contains(&o.d) {
            return Err(CliError::config(format!("d must be one of {SUPPORTED_D:?}, got {}", o.d)));
        }
        if !(2..=MAX_N_FOCK).contains(&o.n_fock) {
            return Err(CliError::config(format!("n_fock must lie in 2..={MAX_N_FOCK}, got {}", o.n_fock)));
        }
        let s = SParameter::new(parse_complex(&o.s)?).map_err(|e| CliError::config(format!("--s {}: {e}", o.s)))?;
        let state: StateSpec = o.state.parse()?;
        state.coefficients(o.n_fock)?;
        let names = check_names();
        let mut tolerances = BTreeMap::new();
        for item in &o.tol {
            let (name, value) = parse_tolerance(item)?;
            if name != "all" && !names.contains(&name.as_str()) {
                return Err(CliError::config(format!("unknown check {name:?} in --tol")));
            }
            tolerances.insert(name, value);
        }
        Ok(RunConfig {
            command: cli.command,
            d: o.d,
            n_fock: o.n_fock,
            grid: parse_grid(&o.grid)?,
            s,
            state,
            seed: o.seed,
            tolerances,
            out: o.out.clone(),
            threads: parse_threads(threads_env)?,
        })
    }

    pub fn suite_params(&self) -> SuiteParams {
        SuiteParams { d: self.d, n_fock: self.n_fock, grid: self.grid.clone(), seed: self.seed }
    }

    /// Tolerance for `name`: a named override, else `all`, else `default`.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).or_else(|| self.tolerances.get("all")).copied().unwrap_or(default)
    }

    /// Echo for reports; omits the thread count, which never changes results.
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            command: self.command,
            d: self.d,
            n_fock: self.n_fock,
            grid: GridEcho { half_extent: self.grid.half_extent(), spacing: self.grid.spacing() },
            s: [self.s.value().re, self.s.value().im],
            state: self.state.to_string(),
            seed: self.seed,
            tolerances: self.tolerances.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub command: Command,
    pub d: usize,
    pub n_fock: usize,
    pub grid: GridEcho,
    pub s: [f64; 2],
    pub state: String,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GridEcho {
    #[serde(rename = "L")]
    pub half_extent: f64,
    #[serde(rename = "h")]
    pub spacing: f64,
}

pub fn parse_grid(s: &str) -> Result<Grid, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [l, h] = parts.as_slice() else {
        return Err(CliError::config(format!("invalid grid {s:?}; expected L,h")));
    };
    let num = |t: &str| t.parse::<f64>().map_err(|_| CliError::config(format!("invalid grid {s:?}; expected L,h")));
    Grid::new(num(l)?, num(h)?).map_err(|e| CliError::config(format!("grid {s:?}: {e}")))
}

fn parse_tolerance(item: &str) -> Result<(String, f64), CliError> {
    let (name, value) = item
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("invalid tolerance {item:?}; expected name=value")))?;
    let value: f64 = value
        .trim()
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite() && *v >= 0.0)
        .ok_or_else(|| CliError::config(format!("invalid tolerance value in {item:?}")))?;
    Ok((name.trim().to_string(), value))
}

/// `0` or unset means one worker per available core.
pub fn parse_threads(raw: Option<&str>) -> Result<usize, CliError> {
    let n = match raw.map(str::trim) {
        None | Some("") => 0,
        Some(v) => v.parse().map_err(|_| CliError::config(format!("{THREADS_ENV} must be a non-negative integer, got {v:?}")))?,
    };
    Ok(if n == 0 { std::thread::available_parallelism().map_or(1, |n| n.get()) } else { n })
}
