pub mod dispersion;
pub mod solve;
pub mod sweep;
pub mod verify;

use helmholtz_cip::{Complex64, Problem};

use crate::error::CliResult;
use crate::PenaltyArgs;

/// Builds a validated problem, resolving `gamma_o` from `t = k / n`.
pub(crate) fn build_problem(k: f64, n: usize, penalty: &PenaltyArgs) -> CliResult<Problem> {
    if !(k.is_finite() && k > 0.0) {
        return Err(crate::error::CliError::Config(format!("k must be positive, got {k}")));
    }
    let gamma: Complex64 = penalty.gamma.resolve(k / n as f64)?;
    let rhs = penalty.rhs.to_spec(k)?;
    let p = Problem::new(k, n, gamma, rhs)?;
    Ok(p.with_boundary_penalty(penalty.boundary_penalty && !penalty.no_boundary_penalty))
}
