use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use super::{gn_membership, CurveSpec, CurveTarget, MetricEvaluator, INTERIOR_TOL};
use crate::error::{Error, Result};
use crate::kernel::KernelFormula;
use crate::numdiff;

/// Square lattice of `points_per_axis^2` points on `[-radius, radius]^2`,
/// restricted to the closed disc of that radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub radius: f64,
    pub points_per_axis: usize,
}

impl Grid {
    pub const DEFAULT_POINTS_PER_AXIS: usize = 21;

    pub fn new(radius: f64) -> Self {
        Self {
            radius,
            points_per_axis: Self::DEFAULT_POINTS_PER_AXIS,
        }
    }

    pub fn points(&self) -> Result<Vec<Complex64>> {
        if !(self.radius > 0.0) || !self.radius.is_finite() || self.points_per_axis < 2 {
            return Err(Error::InvalidArgument(format!(
                "degenerate grid: radius {}, {} points per axis",
                self.radius, self.points_per_axis
            )));
        }
        let m = self.points_per_axis;
        let coord = |i: usize| -self.radius + 2.0 * self.radius * i as f64 / (m - 1) as f64;
        let mut out = Vec::new();
        for iy in 0..m {
            for ix in 0..m {
                let z = Complex64::new(coord(ix), coord(iy));
                if z.norm() <= self.radius * (1.0 + 1e-12) {
                    out.push(z);
                }
            }
        }
        Ok(out)
    }
}

/// How `d^2/dz dzbar` of the potential difference is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResidualMethod {
    /// `sum |f_i'|^2 - G'^T g(G) conj(G')` with the symbolic metric.
    #[default]
    Symbolic,
    /// Laplacian / 4 of the potential by five-point stencils.
    FiniteDifference,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualSummary {
    pub sup_norm: f64,
    pub mean: f64,
    pub excluded: usize,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualField {
    pub samples: Vec<(Complex64, f64)>,
    pub excluded: usize,
}

impl ResidualField {
    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max)
    }

    pub fn mean(&self) -> f64 {
        if self.samples.is_empty() {
            return 0.0;
        }
        self.samples.iter().map(|s| s.1).sum::<f64>() / self.samples.len() as f64
    }

    pub fn summary(&self) -> ResidualSummary {
        ResidualSummary {
            sup_norm: self.sup_norm(),
            mean: self.mean(),
            excluded: self.excluded,
            points: self.samples.len(),
        }
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string(&self.summary()).expect("summary serializes")
    }

    /// `re(z),im(z),residual` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re(z),im(z),residual\n");
        for (z, r) in &self.samples {
            writeln!(s, "{:.15e},{:.15e},{:.15e}", z.re, z.im, r).expect("write to string");
        }
        s
    }
}

/// `d^2/dz dzbar sum |f_i(z)|^2 = sum |f_i'(z)|^2`.
pub fn euclidean_pullback_density(f: &CurveSpec, z: Complex64) -> f64 {
    f.derivative().eval(z).iter().map(|d| d.norm_sqr()).sum()
}

fn check_targets(f_curve: &CurveSpec, g_curve: &CurveSpec, n: usize) -> Result<()> {
    if !matches!(f_curve.target(), CurveTarget::Euclidean(_)) {
        return Err(Error::InvalidArgument(format!(
            "F must target C^m, got {}",
            f_curve.target()
        )));
    }
    if g_curve.target() != CurveTarget::Symmetrized(n) {
        return Err(Error::InvalidArgument(format!(
            "G must target symmetrized({n}), got {}",
            g_curve.target()
        )));
    }
    Ok(())
}

/// `r(z) = d^2/dz dzbar [sum |f_i(z)|^2 - log K(G(z), G(z))]` on the grid.
///
/// Grid points where `G` leaves `G_n` are skipped and counted as excluded;
/// an empty field is an error.
pub fn pullback_residual(
    f_curve: &CurveSpec,
    g_curve: &CurveSpec,
    formula: &KernelFormula,
    grid: &Grid,
    method: ResidualMethod,
) -> Result<ResidualField> {
    check_targets(f_curve, g_curve, formula.n())?;
    let points = grid.points()?;
    let metric = MetricEvaluator::new(formula)?;
    let g_prime = g_curve.derivative();
    let mut samples = Vec::with_capacity(points.len());
    let mut excluded = 0;
    for z in points {
        let gz = g_curve.eval(z);
        if !gn_membership(&gz, INTERIOR_TOL) {
            excluded += 1;
            continue;
        }
        let r = match method {
            ResidualMethod::Symbolic => {
                let g = metric.metric_at(&gz)?;
                let d = g_prime.eval(z);
                let mut pull = Complex64::new(0.0, 0.0);
                for j in 0..d.len() {
                    for k in 0..d.len() {
                        pull += g.get(j, k) * d[j] * d[k].conj();
                    }
                }
                euclidean_pullback_density(f_curve, z) - pull.re
            }
            ResidualMethod::FiniteDifference => fd_residual(f_curve, g_curve, formula, z)?,
        };
        samples.push((z, r));
    }
    if samples.is_empty() {
        return Err(Error::OutsideDomain(
            "G leaves G_n at every grid point".into(),
        ));
    }
    Ok(ResidualField { samples, excluded })
}

fn fd_residual(
    f_curve: &CurveSpec,
    g_curve: &CurveSpec,
    formula: &KernelFormula,
    z: Complex64,
) -> Result<f64> {
    let g0 = g_curve.eval(z);
    let k0 = formula.eval(&g0, &g0)?.re;
    let phi = |dz: Complex64| -> f64 {
        let w = z + dz;
        let gw = g_curve.eval(w);
        let euclid: f64 = f_curve.eval(w).iter().map(|v| v.norm_sqr()).sum();
        let k = formula.eval(&gw, &gw).map(|k| k.re).unwrap_or(f64::NAN);
        euclid - (k / k0).ln()
    };
    let h = numdiff::STEP;
    let lap = numdiff::d2(|t| phi(Complex64::new(t, 0.0)), h)
        + numdiff::d2(|t| phi(Complex64::new(0.0, t)), h);
    if !lap.is_finite() {
        return Err(Error::OutsideDomain(format!(
            "finite-difference stencil leaves G_n near z = {z}"
        )));
    }
    Ok(lap / 4.0)
}
