use std::fmt;

use num_complex::{Complex, Complex64};

use super::{direct_generic, FormulaScalar, KernelFormula};
use crate::error::{Error, Result};
use crate::polyalg::{lift, Dd, Precision};
use crate::sampling::PolydiscSampler;
use crate::symfun::symmetrize_generic;

/// Monte-Carlo comparison of the formula against direct evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub n: usize,
    pub seed: u64,
    pub samples: usize,
    pub radius: f64,
    pub separation: f64,
    pub tolerance: f64,
    pub precision: Precision,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            n: 2,
            seed: 0,
            samples: 1000,
            radius: 0.8,
            separation: 0.05,
            tolerance: 1e-9,
            precision: Precision::Double,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidArgument("samples must be at least 1".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if !(self.radius > 0.0 && self.radius < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "radius must lie in (0, 1), got {}",
                self.radius
            )));
        }
        if !(self.separation > 0.0) {
            // zero separation admits critical samples, where direct evaluation is undefined
            return Err(Error::InvalidArgument(format!(
                "separation must be positive, got {}",
                self.separation
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub max_rel_error: f64,
    pub mean_rel_error: f64,
    pub worst_sample: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.max_rel_error <= self.config.tolerance
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        let precision = match c.precision {
            Precision::Double => "double",
            Precision::Extended => "extended",
        };
        writeln!(
            f,
            "n={} seed={} samples={} radius={} separation={} precision={}",
            c.n, c.seed, c.samples, c.radius, c.separation, precision
        )?;
        writeln!(
            f,
            "max relative error: {:.14e} (sample {})",
            self.max_rel_error, self.worst_sample
        )?;
        writeln!(f, "mean relative error: {:.14e}", self.mean_rel_error)?;
        write!(
            f,
            "tolerance: {:.14e} {}",
            c.tolerance,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

fn norm_sqr<T: FormulaScalar>(z: Complex<T>) -> f64 {
    z.norm_sqr().to_f64()
}

fn relative_error<T: FormulaScalar>(
    f: &KernelFormula,
    lambda: &[Complex64],
    mu: &[Complex64],
) -> Result<f64> {
    let direct = direct_generic::<T>(lambda, mu)?;
    let l: Vec<Complex<T>> = lambda.iter().map(|&z| lift(z)).collect();
    let m: Vec<Complex<T>> = mu.iter().map(|&z| lift(z)).collect();
    let point: Vec<Complex<T>> = symmetrize_generic(&l)
        .into_iter()
        .chain(symmetrize_generic(&m).into_iter().map(|z| z.conj()))
        .collect();
    let value = f.ratio_generic(&point)?;
    Ok((norm_sqr(value - direct) / norm_sqr(direct)).sqrt())
}

/// Samples `config.samples` pairs `(lambda, mu)` and compares
/// `K(pi(lambda), pi(mu))` from the formula with the direct evaluation.
pub fn cross_validate(formula: &KernelFormula, config: &VerifyConfig) -> Result<VerifyReport> {
    config.validate()?;
    if formula.n() != config.n {
        return Err(Error::InvalidArgument(format!(
            "formula has n = {}, config has n = {}",
            formula.n(),
            config.n
        )));
    }
    let mut sampler =
        PolydiscSampler::new(config.seed, config.n, config.radius, config.separation)?;
    let mut max = 0.0f64;
    let mut sum = 0.0;
    let mut worst = 0;
    for k in 0..config.samples {
        let lambda = sampler.sample()?;
        let mu = sampler.sample()?;
        let err = match config.precision {
            Precision::Double => relative_error::<f64>(formula, &lambda, &mu)?,
            Precision::Extended => relative_error::<Dd>(formula, &lambda, &mu)?,
        };
        sum += err;
        if err > max || err.is_nan() {
            max = if err.is_nan() { f64::INFINITY } else { err };
            worst = k;
        }
    }
    Ok(VerifyReport {
        config: config.clone(),
        max_rel_error: max,
        mean_rel_error: sum / config.samples as f64,
        worst_sample: worst,
    })
}
