use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Parses `a+bi`, `a`, `bi`, `i`, `-i`, ...
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let t = text.trim();
    Complex64::from_str(t).map_err(|_| Error::Parse(format!("not a complex number: {text:?}")))
}

/// Comma-separated complex coordinates.
pub fn parse_point(text: &str) -> Result<Vec<Complex64>> {
    if text.trim().is_empty() {
        return Err(Error::Parse("empty point".into()));
    }
    text.split(',').map(parse_complex).collect()
}

/// Univariate polynomial with complex coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct UniPoly {
    coeffs: Vec<Complex64>,
}

impl UniPoly {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^d`, zero past the end.
    pub fn coefficient(&self, d: usize) -> Complex64 {
        self.coeffs.get(d).copied().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs
            .iter()
            .skip(1)
            .all(|c| *c == Complex64::new(0.0, 0.0))
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, &c)| c * d as f64)
                .collect(),
        )
    }
}

/// Where a curve maps: `C^m` or `G_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveTarget {
    Euclidean(usize),
    Symmetrized(usize),
}

impl CurveTarget {
    pub fn dim(self) -> usize {
        match self {
            CurveTarget::Euclidean(m) | CurveTarget::Symmetrized(m) => m,
        }
    }
}

impl fmt::Display for CurveTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveTarget::Euclidean(m) => write!(f, "euclidean({m})"),
            CurveTarget::Symmetrized(n) => write!(f, "symmetrized({n})"),
        }
    }
}

/// A holomorphic polynomial curve given componentwise.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    components: Vec<UniPoly>,
    target: CurveTarget,
}

impl CurveSpec {
    pub fn new(components: Vec<Vec<Complex64>>, target: CurveTarget) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::LengthMismatch {
                expected: target.dim(),
                got: components.len(),
            });
        }
        if target.dim() == 0 {
            return Err(Error::InvalidArgument(
                "curve needs at least one component".into(),
            ));
        }
        if components.iter().any(|c| c.is_empty()) {
            return Err(Error::InvalidArgument(
                "curve component without coefficients".into(),
            ));
        }
        Ok(Self {
            components: components.into_iter().map(UniPoly::new).collect(),
            target,
        })
    }

    /// `;`-separated components, each a `,`-separated coefficient list
    /// (lowest degree first): `"0,1;0"` is `z -> (z, 0)`.
    pub fn parse(text: &str, target: CurveTarget) -> Result<Self> {
        let comps = text
            .split(';')
            .map(parse_point)
            .collect::<Result<Vec<_>>>()?;
        Self::new(comps, target)
    }

    /// Parses with the target dimension taken from the component count.
    pub fn parse_euclidean(text: &str) -> Result<Self> {
        let m = text.split(';').count();
        Self::parse(text, CurveTarget::Euclidean(m))
    }

    pub fn parse_symmetrized(text: &str) -> Result<Self> {
        let n = text.split(';').count();
        Self::parse(text, CurveTarget::Symmetrized(n))
    }

    pub fn components(&self) -> &[UniPoly] {
        &self.components
    }

    pub fn target(&self) -> CurveTarget {
        self.target
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_constant(&self) -> bool {
        self.components.iter().all(UniPoly::is_constant)
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval(z)).collect()
    }

    pub fn derivative(&self) -> CurveSpec {
        CurveSpec {
            components: self.components.iter().map(UniPoly::derivative).collect(),
            target: self.target,
        }
    }

    /// For a `G_n` target, checks membership on `rings` concentric circles of
    /// `points` samples each inside `|z| <= radius`, plus the center.
    pub fn check_in_domain(&self, radius: f64, rings: usize, points: usize) -> Result<()> {
        if let CurveTarget::Symmetrized(_) = self.target {
            crate::geometry::require_membership(
                &self.eval(Complex64::new(0.0, 0.0)),
                super::MEMBERSHIP_TOL,
            )?;
            for r in 1..=rings {
                let rho = radius * r as f64 / rings as f64;
                for k in 0..points {
                    let z = Complex64::from_polar(
                        rho,
                        std::f64::consts::TAU * k as f64 / points as f64,
                    );
                    crate::geometry::require_membership(&self.eval(z), super::MEMBERSHIP_TOL)?;
                }
            }
        }
        Ok(())
    }
}
