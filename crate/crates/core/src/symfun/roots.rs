use nalgebra::DMatrix;
use num_complex::Complex64;

/// Roots with multiplicity of `t^n - xi_1 t^(n-1) + xi_2 t^(n-2) - ... + (-1)^n xi_n`,
/// i.e. a point of the fiber `pi_n^{-1}(xi)` up to ordering.
///
/// Eigenvalues of the balanced companion matrix, followed by a short Newton
/// polish that is only accepted when it reduces the residual.
pub fn fiber_roots(xi: &[Complex64]) -> Vec<Complex64> {
    let n = xi.len();
    if n == 0 {
        return Vec::new();
    }
    // monic coefficients, highest degree first: a[0] = 1, a[k] = (-1)^k xi_k
    let coeffs: Vec<Complex64> = std::iter::once(Complex64::new(1.0, 0.0))
        .chain(
            xi.iter()
                .enumerate()
                .map(|(k, &x)| if k % 2 == 0 { -x } else { x }),
        )
        .collect();
    // exact zero roots come off the trailing coefficients
    let mut degree = n;
    while degree > 0 && coeffs[degree] == Complex64::new(0.0, 0.0) {
        degree -= 1;
    }
    let mut roots = vec![Complex64::new(0.0, 0.0); n - degree];
    let coeffs = &coeffs[..=degree];
    match degree {
        0 => {}
        1 => roots.push(-coeffs[1]),
        _ => roots.extend(
            companion_roots(coeffs)
                .into_iter()
                .map(|r| polish(coeffs, r)),
        ),
    }
    roots
}

const SCHUR_MAX_ITER: usize = 10_000;

fn companion_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for k in 0..n {
        m[(0, k)] = -coeffs[k + 1];
    }
    for k in 1..n {
        m[(k, k - 1)] = Complex64::new(1.0, 0.0);
    }
    balance(&mut m);
    match nalgebra::linalg::Schur::try_new(m, f64::EPSILON, SCHUR_MAX_ITER) {
        Some(schur) => {
            let (_, t) = schur.unpack();
            (0..n).map(|k| t[(k, k)]).collect()
        }
        None => aberth(coeffs),
    }
}

// Simultaneous Aberth iteration; fallback when QR does not converge.
fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let bound = 1.0 + coeffs[1..].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                bound * 0.5,
                0.4 + std::f64::consts::TAU * k as f64 / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(coeffs, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let step = ratio / (1.0 - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved <= 1e-16 * bound {
            break;
        }
    }
    z
}

fn horner(coeffs: &[Complex64], t: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs {
        dp = dp * t + p;
        p = p * t + c;
    }
    (p, dp)
}

fn polish(coeffs: &[Complex64], mut r: Complex64) -> Complex64 {
    let (mut val, mut d) = horner(coeffs, r);
    for _ in 0..3 {
        if d.norm() == 0.0 || val.norm() == 0.0 {
            break;
        }
        let cand = r - val / d;
        let (cv, cd) = horner(coeffs, cand);
        if cv.norm() < val.norm() {
            r = cand;
            val = cv;
            d = cd;
        } else {
            break;
        }
    }
    r
}

/// Parlett-Reinsch balancing with radix 2 (diagonal similarity, so the
/// spectrum is unchanged and exact in floating point).
fn balance(m: &mut DMatrix<Complex64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut g = r / radix;
            let mut f = 1.0;
            let s = c + r;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    m[(i, j)] *= inv;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

/// Largest pair distance of a greedy minimal-distance matching between two
/// multisets of equal size (`INFINITY` if the sizes differ).
pub fn match_multisets(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut left: Vec<Complex64> = a.to_vec();
    let mut right: Vec<Complex64> = b.to_vec();
    let mut worst = 0.0f64;
    while !left.is_empty() {
        let mut best = (0, 0, f64::INFINITY);
        for (i, x) in left.iter().enumerate() {
            for (j, y) in right.iter().enumerate() {
                let d = (x - y).norm();
                if d < best.2 {
                    best = (i, j, d);
                }
            }
        }
        worst = worst.max(best.2);
        left.swap_remove(best.0);
        right.swap_remove(best.1);
    }
    worst
}
