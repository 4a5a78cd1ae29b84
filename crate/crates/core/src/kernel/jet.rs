use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use super::KernelFormula;
use crate::error::{Error, Result};
use crate::geometry::{require_membership, CurveSpec, MEMBERSHIP_TOL};
use crate::polyalg::{CompiledPoly, Polynomial};

/// Highest supported jet order.
pub const MAX_JET_ORDER: usize = 3;

// Radius of the circle around w = 0 sampled to check that G stays in G_n.
const NEAR_ZERO_RADIUS: f64 = 1e-3;
const NEAR_ZERO_SAMPLES: usize = 8;

/// Partial derivatives of `H1` and `H2` in the `etab` variables up to order
/// three, compiled once and reused across jet evaluations.
#[derive(Debug, Clone)]
pub struct JetEvaluator<'a> {
    formula: &'a KernelFormula,
    // keyed by the sorted list of etab indices differentiated
    partials: [BTreeMap<Vec<usize>, CompiledPoly<f64>>; 2],
}

impl<'a> JetEvaluator<'a> {
    pub fn new(formula: &'a KernelFormula) -> Self {
        let n = formula.n();
        let mut partials: [BTreeMap<Vec<usize>, CompiledPoly<f64>>; 2] = Default::default();
        for (slot, h) in [formula.h1(), formula.h2()].into_iter().enumerate() {
            let mut frontier: Vec<(Vec<usize>, Polynomial)> = vec![(Vec::new(), h.clone())];
            for _ in 0..=MAX_JET_ORDER {
                let mut next = Vec::new();
                for (key, p) in frontier {
                    partials[slot].insert(key.clone(), CompiledPoly::new(&p));
                    let start = key.last().copied().unwrap_or(0);
                    if key.len() < MAX_JET_ORDER {
                        for k in start..n {
                            let mut k2 = key.clone();
                            k2.push(k);
                            next.push((k2, p.partial(n + k).expect("index in range")));
                        }
                    }
                }
                frontier = next;
            }
        }
        Self { formula, partials }
    }

    /// `d^delta/dwbar^delta log K(G(z), G(w))` at `w = 0`.
    pub fn jet(&self, g: &CurveSpec, z: Complex64, delta: usize) -> Result<Complex64> {
        let n = self.formula.n();
        if delta == 0 {
            return Err(Error::InvalidArgument(
                "jet order must be at least 1".into(),
            ));
        }
        if delta > MAX_JET_ORDER {
            return Err(Error::Unsupported(format!(
                "jet order {delta} > {MAX_JET_ORDER}"
            )));
        }
        if g.dim() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: g.dim(),
            });
        }
        require_membership(&g.eval(Complex64::new(0.0, 0.0)), MEMBERSHIP_TOL)?;
        for k in 0..NEAR_ZERO_SAMPLES {
            let w = Complex64::from_polar(
                NEAR_ZERO_RADIUS,
                2.0 * PI * k as f64 / NEAR_ZERO_SAMPLES as f64,
            );
            require_membership(&g.eval(w), MEMBERSHIP_TOL)?;
        }

        // u(t) = conj(G(conj t)); u_k^(d)(0) = d! conj(coefficient d)
        let u: Vec<[Complex64; 4]> = g
            .components()
            .iter()
            .map(|c| {
                let mut d = [Complex64::new(0.0, 0.0); 4];
                let mut fact = 1.0;
                for (order, slot) in d.iter_mut().enumerate().skip(1) {
                    fact *= order as f64;
                    *slot = c.coefficient(order).conj() * fact;
                }
                d
            })
            .collect();

        let xi = g.eval(z);
        let etab: Vec<Complex64> = g
            .eval(Complex64::new(0.0, 0.0))
            .iter()
            .map(|c| c.conj())
            .collect();
        let point: Vec<Complex64> = xi.iter().chain(&etab).copied().collect();

        let mut total = Complex64::new(0.0, 0.0);
        for (slot, sign) in [(0usize, 1.0), (1, -1.0)] {
            let h = |key: &[usize]| self.partials[slot][key].eval(&point);
            let h0 = h(&[]);
            if h0.norm() == 0.0 {
                let name = if slot == 0 { "H1" } else { "H2" };
                return Err(Error::OutsideDomain(format!(
                    "{name} vanishes at (G(z), conj G(0))"
                )));
            }
            let derivs = chain_derivatives(n, &u, delta, |key| h(key));
            total += log_derivative(h0, &derivs, delta) * sign;
        }
        Ok(total)
    }
}

/// `(d/dt)^d H(xi, u(t))` at `t = 0` for `d = 1..=delta`, by the
/// multivariate chain rule.
fn chain_derivatives(
    n: usize,
    u: &[[Complex64; 4]],
    delta: usize,
    h: impl Fn(&[usize]) -> Complex64,
) -> [Complex64; 4] {
    let key = |v: &[usize]| {
        let mut k = v.to_vec();
        k.sort_unstable();
        k
    };
    let zero = Complex64::new(0.0, 0.0);
    let mut d = [zero; 4];
    for k in 0..n {
        let hk = h(&[k]);
        for (order, slot) in d.iter_mut().enumerate().skip(1).take(delta) {
            *slot += hk * u[k][order];
        }
    }
    if delta >= 2 {
        for k in 0..n {
            for l in 0..n {
                let hkl = h(&key(&[k, l]));
                d[2] += hkl * u[k][1] * u[l][1];
                if delta >= 3 {
                    d[3] += hkl * u[k][2] * u[l][1] * 3.0;
                }
            }
        }
    }
    if delta >= 3 {
        for k in 0..n {
            for l in 0..n {
                for m in 0..n {
                    d[3] += h(&key(&[k, l, m])) * u[k][1] * u[l][1] * u[m][1];
                }
            }
        }
    }
    d
}

/// Derivative of order `delta` of `log h` from the derivatives of `h`.
fn log_derivative(h: Complex64, d: &[Complex64; 4], delta: usize) -> Complex64 {
    let (a, b, c) = (d[1] / h, d[2] / h, d[3] / h);
    match delta {
        1 => a,
        2 => b - a * a,
        3 => c - a * b * 3.0 + a * a * a * 2.0,
        _ => unreachable!("order checked by caller"),
    }
}

/// `d^delta/dwbar^delta log K(G(z), G(w))` at `w = 0`, for `1 <= delta <= 3`.
pub fn log_kernel_jet(
    f: &KernelFormula,
    g: &CurveSpec,
    z: Complex64,
    delta: usize,
) -> Result<Complex64> {
    JetEvaluator::new(f).jet(g, z, delta)
}
