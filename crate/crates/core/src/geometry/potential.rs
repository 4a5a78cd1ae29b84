use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;

use super::{require_membership, CurveSpec, MEMBERSHIP_TOL};
use crate::error::{Error, Result};
use crate::kernel::KernelFormula;

const PATH_STEPS: usize = 64;
const MAX_BISECTIONS: u32 = 30;
// Largest argument change accepted in one path step.
const MAX_ARG_STEP: f64 = FRAC_PI_4;
// Imaginary residue tolerated in the diastasis before it is reported.
const DIASTASIS_IMAG_TOL: f64 = 1e-10;

fn log_ratio(a: Complex64, b: Complex64) -> Complex64 {
    (b / a).ln()
}

/// `log K(G(z), G(w))`, the branch continued from the real value at `w = z`
/// along the segment from `z` to `w`.
pub fn potential_eval(
    f: &KernelFormula,
    g: &CurveSpec,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    if g.dim() != f.n() {
        return Err(Error::LengthMismatch {
            expected: f.n(),
            got: g.dim(),
        });
    }
    let gz = g.eval(z);
    require_membership(&gz, MEMBERSHIP_TOL)?;
    require_membership(&g.eval(w), MEMBERSHIP_TOL)?;
    let kernel = |s: f64| -> Result<Complex64> {
        let k = f.eval(&gz, &g.eval(z + (w - z) * s))?;
        if k.norm() == 0.0 || !k.is_finite() {
            return Err(Error::Branch(format!(
                "kernel vanishes or blows up at path parameter {s}"
            )));
        }
        Ok(k)
    };
    let k0 = kernel(0.0)?;
    let mut log = Complex64::new(k0.re.ln(), 0.0);
    let mut prev = (0.0, k0);
    let mut next = 1.0 / PATH_STEPS as f64;
    while prev.0 < 1.0 {
        let s = next.min(1.0);
        let k = kernel(s)?;
        let step = log_ratio(prev.1, k);
        if step.im.abs() > MAX_ARG_STEP {
            let h = (s - prev.0) / 2.0;
            if h < (0.5f64).powi(MAX_BISECTIONS as i32) {
                return Err(Error::Branch(format!(
                    "argument of the kernel jumps near path parameter {s}"
                )));
            }
            next = prev.0 + h;
            continue;
        }
        log += step;
        let h = s - prev.0;
        prev = (s, k);
        next = s + h.max(1.0 / PATH_STEPS as f64);
    }
    Ok(log)
}

/// `log K(z,w) - log K(z,0) - log K(0,w) + log K(0,0)` along `G`.
pub fn centered_potential(
    f: &KernelFormula,
    g: &CurveSpec,
    z: Complex64,
    w: Complex64,
) -> Result<Complex64> {
    let o = Complex64::new(0.0, 0.0);
    Ok(
        potential_eval(f, g, z, w)? - potential_eval(f, g, z, o)? - potential_eval(f, g, o, w)?
            + potential_eval(f, g, o, o)?,
    )
}

/// Calabi's diastasis `log K(xi,xi) + log K(eta,eta) - log K(xi,eta) - log K(eta,xi)`.
pub fn diastasis_eval(f: &KernelFormula, xi: &[Complex64], eta: &[Complex64]) -> Result<f64> {
    require_membership(xi, MEMBERSHIP_TOL)?;
    require_membership(eta, MEMBERSHIP_TOL)?;
    let kxx = f.eval(xi, xi)?;
    let kyy = f.eval(eta, eta)?;
    let kxy = f.eval(xi, eta)?;
    let kyx = f.eval(eta, xi)?;
    let d = kxx.ln() + kyy.ln() - kxy.ln() - kyx.ln();
    if d.im.abs() > DIASTASIS_IMAG_TOL * d.re.abs().max(1.0) {
        return Err(Error::Branch(format!(
            "diastasis has imaginary residue {:e}",
            d.im
        )));
    }
    Ok(d.re)
}
