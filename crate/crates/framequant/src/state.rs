use std::fmt;
use std::str::FromStr;

use operator_space::{Vector, C64};

use crate::CliError;

/// Largest tolerated norm deficit of a truncated coherent state.
const COHERENT_TRUNCATION_TOL: f64 = 1e-10;

/// A pure state on the truncated Fock space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StateSpec {
    Vacuum,
    Fock(usize),
    /// Coherent state `|α⟩` with `α = re + i·im`.
    Coherent(C64),
}

impl FromStr for StateSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if s == "vacuum" {
            return Ok(StateSpec::Vacuum);
        }
        if let Some(n) = s.strip_prefix("fock:") {
            let n = n.trim().parse().map_err(|_| CliError::config(format!("invalid Fock level in state {s:?}")))?;
            return Ok(StateSpec::Fock(n));
        }
        if let Some(z) = s.strip_prefix("coherent:") {
            return Ok(StateSpec::Coherent(parse_complex(z)?));
        }
        Err(CliError::config(format!("unknown state {s:?}; expected vacuum, fock:n or coherent:re,im")))
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Vacuum => f.write_str("vacuum"),
            StateSpec::Fock(n) => write!(f, "fock:{n}"),
            StateSpec::Coherent(z) => write!(f, "coherent:{},{}", z.re, z.im),
        }
    }
}

impl StateSpec {
    /// Fock coefficients in dimension `n_fock`.
    pub fn coefficients(&self, n_fock: usize) -> Result<Vector, CliError> {
        match *self {
            StateSpec::Vacuum => StateSpec::Fock(0).coefficients(n_fock),
            StateSpec::Fock(n) => {
                if n >= n_fock {
                    return Err(CliError::config(format!("fock:{n} needs n_fock > {n}, got {n_fock}")));
                }
                let mut v = Vector::zeros(n_fock);
                v[n] = C64::new(1.0, 0.0);
                Ok(v)
            }
            StateSpec::Coherent(alpha) => {
                let v = coherent_coefficients(alpha, n_fock);
                let deficit = 1.0 - v.norm_squared();
                if deficit > COHERENT_TRUNCATION_TOL {
                    return Err(CliError::config(format!(
                        "coherent state {alpha} loses {deficit:.3e} of its norm at n_fock = {n_fock}"
                    )));
                }
                Ok(v)
            }
        }
    }
}

/// `e^{−|α|²/2} αⁿ/√n!` for `n < n_fock`.
pub fn coherent_coefficients(alpha: C64, n_fock: usize) -> Vector {
    let mut c = C64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    Vector::from_fn(n_fock, |n, _| {
        let v = c;
        c *= alpha / ((n + 1) as f64).sqrt();
        v
    })
}

/// Parses `"re,im"` or a bare real number. Accepts U+2212 as a minus sign.
pub fn parse_complex(s: &str) -> Result<C64, CliError> {
    let clean = s.replace('\u{2212}', "-");
    let parts: Vec<&str> = clean.split(',').map(str::trim).collect();
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| CliError::config(format!("invalid complex number {s:?}; expected re,im")))
    };
    match parts.as_slice() {
        [re] => Ok(C64::new(num(re)?, 0.0)),
        [re, im] => Ok(C64::new(num(re)?, num(im)?)),
        _ => Err(CliError::config(format!("invalid complex number {s:?}; expected re,im"))),
    }
}
