use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::{Complex, Complex64};

use super::{require_membership, INTERIOR_TOL};
use crate::error::{Error, Result};
use crate::kernel::KernelFormula;
use crate::polyalg::{lift, lower, CompiledPoly, Dd, Polynomial};

/// `n x n` matrix of metric coefficients `g_{j kbar}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn new(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(Self {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.n + k]
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// `max |g_jk - conj g_kj|`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for j in 0..self.n {
            for k in 0..self.n {
                worst = worst.max((self.get(j, k) - self.get(k, j).conj()).norm());
            }
        }
        worst
    }

    /// Hermitian to `tol` relative to the largest entry.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol * self.max_abs().max(f64::MIN_POSITIVE)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_fn(self.n, self.n, |j, k| {
            (self.get(j, k) + self.get(k, j).conj()) * 0.5
        });
        let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue() > 0.0
    }
}

// H and its first and mixed partials, compiled for double-double evaluation.
#[derive(Debug, Clone)]
struct Partials {
    h: CompiledPoly<Dd>,
    dxi: Vec<CompiledPoly<Dd>>,
    detab: Vec<CompiledPoly<Dd>>,
    mixed: Vec<Vec<CompiledPoly<Dd>>>,
}

impl Partials {
    fn new(h: &Polynomial, n: usize) -> Result<Self> {
        let dxi: Vec<Polynomial> = (0..n).map(|j| h.partial(j)).collect::<Result<_>>()?;
        let mixed = dxi
            .iter()
            .map(|p| {
                (0..n)
                    .map(|k| p.partial(n + k).map(|q| CompiledPoly::new(&q)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            h: CompiledPoly::new(h),
            dxi: dxi.iter().map(CompiledPoly::new).collect(),
            detab: (0..n)
                .map(|k| h.partial(n + k).map(|q| CompiledPoly::new(&q)))
                .collect::<Result<_>>()?,
            mixed,
        })
    }
}

/// Symbolic Bergman metric of a kernel formula:
/// `g_{j kbar} = d/dxi_j d/detab_k log(H1/H2)` at `etab = conj(xi)`.
#[derive(Debug, Clone)]
pub struct MetricEvaluator {
    n: usize,
    parts: [Partials; 2],
}

impl MetricEvaluator {
    pub fn new(formula: &KernelFormula) -> Result<Self> {
        let n = formula.n();
        Ok(Self {
            n,
            parts: [
                Partials::new(formula.h1(), n)?,
                Partials::new(formula.h2(), n)?,
            ],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn metric_at(&self, xi: &[Complex64]) -> Result<HermitianMatrix> {
        let n = self.n;
        if xi.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: xi.len(),
            });
        }
        require_membership(xi, INTERIOR_TOL)?;
        let point: Vec<Complex<Dd>> = xi
            .iter()
            .map(|&z| lift(z))
            .chain(xi.iter().map(|&z| lift(z.conj())))
            .collect();
        let zero = Complex::new(Dd::from(0.0), Dd::from(0.0));
        let mut g = vec![vec![zero; n]; n];
        for (p, sign) in self.parts.iter().zip([1.0, -1.0]) {
            let h = p.h.eval(&point);
            if h.norm_sqr().hi() == 0.0 {
                return Err(Error::OutsideDomain(
                    "kernel numerator or denominator vanishes on the diagonal".into(),
                ));
            }
            let hj: Vec<_> = p.dxi.iter().map(|q| q.eval(&point) / h).collect();
            let hk: Vec<_> = p.detab.iter().map(|q| q.eval(&point) / h).collect();
            let s = Dd::from(sign);
            for j in 0..n {
                for k in 0..n {
                    let term = p.mixed[j][k].eval(&point) / h - hj[j] * hk[k];
                    g[j][k] = g[j][k] + term * s;
                }
            }
        }
        HermitianMatrix::new(
            g.into_iter()
                .map(|r| r.into_iter().map(lower).collect())
                .collect(),
        )
    }
}

/// The Bergman metric of `G_n` at an interior point.
pub fn bergman_metric_at(formula: &KernelFormula, xi: &[Complex64]) -> Result<HermitianMatrix> {
    MetricEvaluator::new(formula)?.metric_at(xi)
}
