//! Oracles shared by the integration tests and the acceptance harness.
//!
//! Each oracle computes its reference value by a route that does not go
//! through the code under test: printed closed forms, finite differences of
//! plain kernel values, Richardson extrapolation of direct evaluations.

#![allow(dead_code)]

use gnkernel::geometry::{CurveSpec, CurveTarget};
use gnkernel::kernel::{formula_arena, KernelFormula};
use gnkernel::numdiff;
use gnkernel::polyalg::{rat, Monomial, Polynomial, VariableArena};
use gnkernel::sampling::disc_point;
use gnkernel::Complex64;
use itertools::Itertools;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `H1`, `H2` of the printed `n = 2` kernel, built term by term from
/// `2 - s sb + 2 p pb` and
/// `[1 - s sb + (s^2 - 2p) pb - p s sb pb + p sb^2 + p^2 pb^2]^2`.
pub fn golden_n2() -> (Polynomial, Polynomial) {
    let a = formula_arena(2);
    let v = |i| Polynomial::var(&a, i).unwrap();
    let (s, p, sb, pb) = (v(0), v(1), v(2), v(3));
    let k = |x: i64| Polynomial::constant(&a, rat(x));
    let prod = |fs: &[&Polynomial]| fs.iter().fold(Polynomial::one(&a), |acc, f| &acc * *f);
    let h1 = k(2) - prod(&[&s, &sb]) + prod(&[&k(2), &p, &pb]);
    let bracket = k(1) - prod(&[&s, &sb]) + prod(&[&(prod(&[&s, &s]) - prod(&[&k(2), &p])), &pb])
        - prod(&[&p, &s, &sb, &pb])
        + prod(&[&p, &sb, &sb])
        + prod(&[&p, &p, &pb, &pb]);
    (h1, &bracket * &bracket)
}

/// Random polynomial in `n` variables, symmetrized by summing over all
/// permutations of the variables. Total degree at most `max_degree`.
pub fn random_symmetric<R: Rng>(
    rng: &mut R,
    arena: &VariableArena,
    n: usize,
    max_degree: u32,
) -> Polynomial {
    let terms = rng.random_range(1..=3);
    let mut seed_terms = Vec::new();
    for _ in 0..terms {
        let deg = rng.random_range(0..=max_degree);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.random_range(0..n)] += 1;
        }
        let num = rng.random_range(-9i64..=9);
        let den = rng.random_range(1i64..=5);
        seed_terms.push((
            e,
            gnkernel::polyalg::ratio(if num == 0 { 1 } else { num }, den),
        ));
    }
    let mut all = Vec::new();
    for perm in (0..n).permutations(n) {
        for (e, coef) in &seed_terms {
            let mut pe = vec![0u32; arena.len()];
            for (i, &pi) in perm.iter().enumerate() {
                pe[pi] = e[i];
            }
            all.push((Monomial::from_exponents(&pe), coef.clone()));
        }
    }
    Polynomial::from_terms(arena, all).unwrap()
}

/// `log(K(x)/K(x0))`; the ratio keeps the stencil values near zero.
fn log_ratio(k: Complex64, k0: Complex64) -> Complex64 {
    (k / k0).ln()
}

/// Metric by finite differences of `phi = log K(xi, xi)` in the real
/// coordinates `x_j = Re xi_j`, `y_j = Im xi_j`:
/// `g_{j kbar} = (phi_{x_j x_k} + phi_{y_j y_k} + i (phi_{x_j y_k} - phi_{y_j x_k})) / 4`.
pub fn metric_fd(f: &KernelFormula, xi: &[Complex64], h: f64) -> Vec<Vec<Complex64>> {
    let n = xi.len();
    let k0 = f.eval(xi, xi).unwrap();
    let phi = |x: &[f64]| -> f64 {
        let p: Vec<Complex64> = (0..n).map(|j| c(x[2 * j], x[2 * j + 1])).collect();
        log_ratio(f.eval(&p, &p).unwrap(), k0).re
    };
    let x0: Vec<f64> = xi.iter().flat_map(|z| [z.re, z.im]).collect();
    let hess = numdiff::hessian(phi, &x0, h);
    let mut g = vec![vec![c(0.0, 0.0); n]; n];
    for j in 0..n {
        for k in 0..n {
            let (xj, yj, xk, yk) = (2 * j, 2 * j + 1, 2 * k, 2 * k + 1);
            g[j][k] = c(hess[xj][xk] + hess[yj][yk], hess[xj][yk] - hess[yj][xk]) * 0.25;
        }
    }
    g
}

/// `d^delta/dt^delta log K(G(z), G(conj t))` at `t = 0` by five-point
/// stencils along real `t` (the function is holomorphic in `t`).
pub fn jet_fd(f: &KernelFormula, g: &CurveSpec, z: Complex64, delta: usize, h: f64) -> Complex64 {
    let gz = g.eval(z);
    let k0 = f.eval(&gz, &g.eval(c(0.0, 0.0))).unwrap();
    let psi = |t: f64| log_ratio(f.eval(&gz, &g.eval(c(t, 0.0))).unwrap(), k0);
    match delta {
        1 => numdiff::d1(psi, h),
        2 => numdiff::d2(psi, h),
        3 => numdiff::d3(psi, h),
        _ => panic!("unsupported order"),
    }
}

/// A curve `w -> pi_2(a + b w, c + d w)` into `G_2`, with `|a|, |c| <= 0.5`
/// and `0.1 <= |b|, |d| <= 0.3`, so it stays in `G_2` for `|w| < 1`.
pub fn random_g2_curve<R: Rng>(rng: &mut R) -> CurveSpec {
    let a = disc_point(rng, 0.5);
    let cc = disc_point(rng, 0.5);
    let slope = |rng: &mut R| {
        let r = rng.random_range(0.1..=0.3);
        Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
    };
    let b = slope(rng);
    let d = slope(rng);
    CurveSpec::new(
        vec![vec![a + cc, b + d], vec![a * cc, a * d + b * cc, b * d]],
        CurveTarget::Symmetrized(2),
    )
    .unwrap()
}

/// Richardson extrapolation to `eps -> 0` of values at `eps, eps/10, eps/100`,
/// eliminating the linear and quadratic terms.
pub fn richardson(values: [Complex64; 3]) -> Complex64 {
    let r1a = (values[1] * 10.0 - values[0]) / 9.0;
    let r1b = (values[2] * 10.0 - values[1]) / 9.0;
    (r1b * 100.0 - r1a) / 99.0
}

/// `max |a - b| / max |b|` over matrix entries.
pub fn matrix_rel_error(a: &[Vec<Complex64>], b: &[Vec<Complex64>]) -> f64 {
    let scale = b.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let diff = a
        .iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    diff / scale
}
