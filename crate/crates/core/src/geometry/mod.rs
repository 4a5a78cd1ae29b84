//! Numerical geometry of `G_n`: membership, the Bergman metric, diastasis,
//! potentials along holomorphic curves and the isometry residual.

mod curve;
mod metric;
mod potential;
mod residual;

pub use curve::{parse_complex, parse_point, CurveSpec, CurveTarget, UniPoly};
pub use metric::{bergman_metric_at, HermitianMatrix, MetricEvaluator};
pub use potential::{centered_potential, diastasis_eval, potential_eval};
pub use residual::{
    euclidean_pullback_density, pullback_residual, Grid, ResidualField, ResidualMethod,
    ResidualSummary,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::symfun::fiber_roots;

/// Default margin on root moduli: a point is in `G_n` when every root of
/// its fiber polynomial has modulus below `1 - MEMBERSHIP_TOL`.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Margin required for metric and residual evaluation.
pub const INTERIOR_TOL: f64 = 1e-6;

/// Largest modulus among the roots of `t^n - xi_1 t^(n-1) + ... + (-1)^n xi_n`.
pub fn max_root_modulus(xi: &[Complex64]) -> f64 {
    fiber_roots(xi).iter().map(|r| r.norm()).fold(0.0, f64::max)
}

/// Whether `xi` lies in `G_n` with margin `tol`.
pub fn gn_membership(xi: &[Complex64], tol: f64) -> bool {
    !xi.is_empty() && xi.iter().all(|z| z.is_finite()) && max_root_modulus(xi) < 1.0 - tol
}

/// Like [`gn_membership`] but reports the offending root modulus.
pub fn require_membership(xi: &[Complex64], tol: f64) -> Result<()> {
    if gn_membership(xi, tol) {
        Ok(())
    } else if xi.is_empty() {
        Err(Error::InvalidArgument("empty point".into()))
    } else {
        Err(Error::OutsideDomain(format!(
            "point outside G_{}: root modulus {:.15}",
            xi.len(),
            max_root_modulus(xi)
        )))
    }
}
