//! Central finite-difference stencils.
//!
//! Used as independent oracles for the symbolic derivatives.

use std::ops::{Add, Mul};

/// Default step.
pub const STEP: f64 = 1e-4;

const OFFSETS5: [f64; 5] = [-2.0, -1.0, 0.0, 1.0, 2.0];
const D1: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const D2: [f64; 5] = [-1.0, 16.0, -30.0, 16.0, -1.0];
const OFFSETS7: [f64; 7] = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0];
const D3: [f64; 7] = [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0];

fn stencil<T, F>(f: F, h: f64, offsets: &[f64], weights: &[f64], scale: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    let mut acc: Option<T> = None;
    for (&o, &w) in offsets.iter().zip(weights) {
        if w != 0.0 {
            let v = f(o * h) * w;
            acc = Some(match acc {
                Some(a) => a + v,
                None => v,
            });
        }
    }
    acc.expect("non-empty stencil") * (1.0 / scale)
}

/// `f'(0)`, fourth order.
pub fn d1<T, F>(f: F, h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    stencil(f, h, &OFFSETS5, &D1, 12.0 * h)
}

/// `f''(0)`, fourth order.
pub fn d2<T, F>(f: F, h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    stencil(f, h, &OFFSETS5, &D2, 12.0 * h * h)
}

/// `f'''(0)`, fourth order.
pub fn d3<T, F>(f: F, h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64) -> T,
{
    stencil(f, h, &OFFSETS7, &D3, 8.0 * h * h * h)
}

/// `d^2 f / dx dy` at the origin from the tensor product of two `d1` stencils.
pub fn mixed<T, F>(f: F, h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
    F: Fn(f64, f64) -> T,
{
    d1(|x| d1(|y| f(x, y), h), h)
}

/// Real Hessian of `f: R^d -> R` at `x`.
pub fn hessian<F>(f: F, x: &[f64], h: f64) -> Vec<Vec<f64>>
where
    F: Fn(&[f64]) -> f64,
{
    let d = x.len();
    let shifted = |i: usize, a: f64, j: usize, b: f64| {
        let mut y = x.to_vec();
        y[i] += a;
        y[j] += b;
        f(&y)
    };
    let mut out = vec![vec![0.0; d]; d];
    for i in 0..d {
        out[i][i] = d2(|t| shifted(i, t, i, 0.0), h);
        for j in 0..i {
            let v = mixed(|a, b| shifted(i, a, j, b), h);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    out
}
