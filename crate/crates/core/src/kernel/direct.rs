use num_complex::{Complex, Complex64};

use crate::error::{Error, Result};
use crate::polyalg::{lift, lower, Dd, EvalScalar, Precision};
use crate::symfun::{vandermonde_eval, vandermonde_generic, CRITICAL_TOL_NUMERIC};

/// Determinant by Gaussian elimination with partial pivoting.
pub(crate) fn determinant<T: EvalScalar>(mut m: Vec<Vec<Complex<T>>>) -> Complex<T> {
    let n = m.len();
    let mut det = Complex::new(T::one(), T::zero());
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| {
                let na = m[a][col].norm_sqr().to_f64();
                let nb = m[b][col].norm_sqr().to_f64();
                na.total_cmp(&nb)
            })
            .expect("non-empty range");
        if m[pivot][col].norm_sqr().to_f64() == 0.0 {
            return Complex::new(T::zero(), T::zero());
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det = det * p;
        for r in col + 1..n {
            let factor = m[r][col] / p;
            for c in col..n {
                let sub = factor * m[col][c];
                m[r][c] = m[r][c] - sub;
            }
        }
    }
    det
}

/// `K_{G_n}(pi_n(lambda), pi_n(mu))` from the polydisc kernel:
/// `det[1/(1 - lambda_j conj(mu_k))^2] / (pi^n V(lambda) conj(V(mu)))`.
///
/// Undefined (0/0) on the critical set; such inputs are rejected.
pub fn kernel_direct_eval(lambda: &[Complex64], mu: &[Complex64]) -> Result<Complex64> {
    kernel_direct_eval_with(lambda, mu, Precision::Double)
}

pub fn kernel_direct_eval_with(
    lambda: &[Complex64],
    mu: &[Complex64],
    precision: Precision,
) -> Result<Complex64> {
    match precision {
        Precision::Double => direct_generic::<f64>(lambda, mu).map(lower),
        Precision::Extended => direct_generic::<Dd>(lambda, mu).map(lower),
    }
}

pub(crate) fn direct_generic<T: EvalScalar>(
    lambda: &[Complex64],
    mu: &[Complex64],
) -> Result<Complex<T>> {
    let n = lambda.len();
    if n == 0 {
        return Err(Error::InvalidArgument("empty point".into()));
    }
    if mu.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: mu.len(),
        });
    }
    for p in [lambda, mu] {
        let v = vandermonde_eval(p);
        if v.norm() <= CRITICAL_TOL_NUMERIC {
            return Err(Error::Singular(v.norm()));
        }
    }
    let l: Vec<Complex<T>> = lambda.iter().map(|&z| lift(z)).collect();
    let mb: Vec<Complex<T>> = mu.iter().map(|&z| lift(z.conj())).collect();
    let one = Complex::new(T::one(), T::zero());
    let m: Vec<Vec<Complex<T>>> = l
        .iter()
        .map(|&lj| {
            mb.iter()
                .map(|&mk| {
                    let d = one - lj * mk;
                    one / (d * d)
                })
                .collect()
        })
        .collect();
    let det = determinant(m);
    let mut pi_n = T::one();
    for _ in 0..n {
        pi_n = pi_n * T::pi();
    }
    let denom = vandermonde_generic(&l) * vandermonde_generic(&mb) * Complex::new(pi_n, T::zero());
    Ok(det / denom)
}

/// The closed form of `K_{G_2}((s1, p1), (s2, p2))` with the conjugates on
/// the second point.
pub fn kernel_closed_form_n2(
    s1: Complex64,
    p1: Complex64,
    s2: Complex64,
    p2: Complex64,
) -> Result<Complex64> {
    let (sb, pb) = (s2.conj(), p2.conj());
    let num = 2.0 - s1 * sb + 2.0 * p1 * pb;
    let bracket = 1.0 - s1 * sb + (s1 * s1 - 2.0 * p1) * pb - p1 * s1 * sb * pb
        + p1 * sb * sb
        + p1 * p1 * pb * pb;
    let den = std::f64::consts::PI.powi(2) * bracket * bracket;
    if den.norm() == 0.0 {
        return Err(Error::OutsideDomain(
            "closed-form denominator vanishes; point is outside G_2 x G_2".into(),
        ));
    }
    Ok(num / den)
}
