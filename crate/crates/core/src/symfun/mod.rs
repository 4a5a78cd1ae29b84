//! Symmetrization map, Vandermonde products, critical set and fibers of
//! `pi_n`, and the reduction of symmetric polynomials to elementary
//! symmetric ones.

mod decompose;
mod roots;

pub use decompose::{
    check_symmetric, decompose_symmetric, expand_elementary, SymmetricBlock, REDUCTION_STEP_LIMIT,
};
pub use roots::{fiber_roots, match_multisets};

use itertools::Itertools;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polyalg::{EvalScalar, Monomial, Polynomial, VariableArena};

/// Whether a point is meant to live in the polydisc (`lambda`) or in `G_n` (`xi`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointRole {
    Polydisc,
    Symmetrized,
}

/// A complex point tagged with its role.
#[derive(Debug, Clone, PartialEq)]
pub struct SymPoint {
    pub coords: Vec<Complex64>,
    pub role: PointRole,
}

impl SymPoint {
    pub fn polydisc(coords: Vec<Complex64>) -> Self {
        Self {
            coords,
            role: PointRole::Polydisc,
        }
    }

    pub fn symmetrized(coords: Vec<Complex64>) -> Self {
        Self {
            coords,
            role: PointRole::Symmetrized,
        }
    }

    /// Admissibility for the role: `|lambda_i| < 1` for polydisc points,
    /// membership in `G_n` (tolerance `tol` on root moduli) for symmetrized
    /// ones.
    pub fn is_admissible(&self, tol: f64) -> bool {
        match self.role {
            PointRole::Polydisc => self.coords.iter().all(|z| z.norm() < 1.0 - tol),
            PointRole::Symmetrized => crate::geometry::gn_membership(&self.coords, tol),
        }
    }

    /// `pi_n` of a polydisc point.
    pub fn symmetrize(&self) -> Result<SymPoint> {
        if self.role != PointRole::Polydisc {
            return Err(Error::InvalidArgument(
                "symmetrize expects a polydisc point".into(),
            ));
        }
        Ok(SymPoint::symmetrized(symmetrize_point(&self.coords)?))
    }
}

/// `pi_n(lambda) = (e_1(lambda), ..., e_n(lambda))`.
///
/// The coordinates are sorted before expansion, so any permutation of the
/// input yields a bit-identical result.
pub fn symmetrize_point(lambda: &[Complex64]) -> Result<Vec<Complex64>> {
    if lambda.is_empty() {
        return Err(Error::InvalidArgument(
            "symmetrize_point needs at least one coordinate".into(),
        ));
    }
    let lifted: Vec<Complex<f64>> = lambda.to_vec();
    Ok(symmetrize_generic(&lifted))
}

/// Double-double variant of [`symmetrize_point`], used by high-precision
/// verification.
pub fn symmetrize_generic<T: EvalScalar>(lambda: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut sorted = lambda.to_vec();
    sorted.sort_by(|a, b| {
        a.re.to_f64()
            .total_cmp(&b.re.to_f64())
            .then(a.im.to_f64().total_cmp(&b.im.to_f64()))
    });
    let n = sorted.len();
    let zero = Complex::new(T::zero(), T::zero());
    let mut e = vec![zero; n + 1];
    e[0] = Complex::new(T::one(), T::zero());
    for (j, &x) in sorted.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            e[k] = e[k] + x * e[k - 1];
        }
    }
    e.split_off(1)
}

/// `sigma_k` in the block variables `block` of `arena`.
pub fn elementary_symmetric_poly(
    arena: &VariableArena,
    block: &[usize],
    k: usize,
) -> Result<Polynomial> {
    let n = block.len();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "elementary symmetric index k={k} out of range 1..={n}"
        )));
    }
    for &v in block {
        if v >= arena.len() {
            return Err(Error::VariableIndex {
                index: v,
                len: arena.len(),
            });
        }
    }
    let terms = block.iter().combinations(k).map(|subset| {
        let mut m = Monomial::one(arena.len());
        for &&v in &subset {
            m.exponents_mut()[v] += 1;
        }
        (m, BigRational::one())
    });
    Polynomial::from_terms(arena, terms)
}

/// `prod_{i<j} (x_{block[i]} - x_{block[j]})`.
pub fn vandermonde(arena: &VariableArena, block: &[usize]) -> Result<Polynomial> {
    let mut acc = Polynomial::one(arena);
    for (i, &a) in block.iter().enumerate() {
        for &b in &block[i + 1..] {
            let factor = &Polynomial::var(arena, a)? - &Polynomial::var(arena, b)?;
            acc = &acc * &factor;
        }
    }
    Ok(acc)
}

pub fn vandermonde_eval(point: &[Complex64]) -> Complex64 {
    let lifted: Vec<Complex<f64>> = point.to_vec();
    vandermonde_generic(&lifted)
}

pub fn vandermonde_generic<T: EvalScalar>(point: &[Complex<T>]) -> Complex<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    for (i, &a) in point.iter().enumerate() {
        for &b in &point[i + 1..] {
            acc = acc * (a - b);
        }
    }
    acc
}

/// Default tolerance for numeric sampling filters.
pub const CRITICAL_TOL_NUMERIC: f64 = 1e-12;

/// Membership in the critical set `Sigma_n`: `|V(lambda)| <= tol`.
pub fn is_critical(lambda: &[Complex64], tol: f64) -> bool {
    vandermonde_eval(lambda).norm() <= tol
}
