use std::fmt::Debug;

use super::Dd;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use super::Polynomial;

/// Floating-point precision of numeric evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    /// IEEE double.
    #[default]
    Double,
    /// Double-double (about 106 significant bits), rounded to `f64` at the end.
    Extended,
}

/// Real scalar usable for polynomial evaluation.
pub trait EvalScalar:
    Copy + Num + std::ops::Neg<Output = Self> + PartialOrd + Debug + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn to_f64(self) -> f64;
    fn pi() -> Self;
}

impl EvalScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().expect("rational coefficient fits in f64")
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }
}

impl EvalScalar for Dd {
    fn from_f64(x: f64) -> Self {
        Dd::from(x)
    }

    fn from_rational(r: &BigRational) -> Self {
        let hi = r.to_f64().expect("rational coefficient fits in f64");
        let rest = r - BigRational::from_float(hi).expect("finite");
        let lo = rest.to_f64().expect("finite");
        Dd(twofloat::TwoFloat::new_add(hi, lo))
    }

    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }

    fn pi() -> Self {
        Dd(twofloat::consts::PI)
    }
}

pub(crate) fn lift<T: EvalScalar>(z: Complex64) -> Complex<T> {
    Complex::new(T::from_f64(z.re), T::from_f64(z.im))
}

pub(crate) fn lower<T: EvalScalar>(z: Complex<T>) -> Complex64 {
    Complex64::new(z.re.to_f64(), z.im.to_f64())
}

/// A polynomial prepared for repeated numeric evaluation: coefficients
/// converted once, terms kept in canonical order so the summation order is
/// fixed.
#[derive(Debug, Clone)]
pub struct CompiledPoly<T> {
    nvars: usize,
    bounds: Vec<u32>,
    coeffs: Vec<T>,
    // (variable, exponent) pairs of each term, flattened; term k owns
    // factors[offsets[k]..offsets[k + 1]].
    factors: Vec<(u16, u32)>,
    offsets: Vec<usize>,
}

impl<T: EvalScalar> CompiledPoly<T> {
    pub fn new(p: &Polynomial) -> Self {
        let mut coeffs = Vec::with_capacity(p.num_terms());
        let mut factors = Vec::new();
        let mut offsets = vec![0];
        for (m, c) in p.terms() {
            coeffs.push(T::from_rational(c));
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    factors.push((v as u16, e));
                }
            }
            offsets.push(factors.len());
        }
        Self {
            nvars: p.arena().len(),
            bounds: p.degree_bounds(),
            coeffs,
            factors,
            offsets,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Evaluates at `point`; the length must equal the arena size.
    pub fn eval(&self, point: &[Complex<T>]) -> Complex<T> {
        assert_eq!(point.len(), self.nvars, "evaluation point has wrong length");
        let zero = Complex::new(T::zero(), T::zero());
        let powers: Vec<Vec<Complex<T>>> = point
            .iter()
            .zip(&self.bounds)
            .map(|(&x, &b)| {
                let mut v = Vec::with_capacity(b as usize + 1);
                v.push(Complex::new(T::one(), T::zero()));
                for k in 0..b as usize {
                    v.push(v[k] * x);
                }
                v
            })
            .collect();
        let mut acc = zero;
        for (k, &c) in self.coeffs.iter().enumerate() {
            let fs = &self.factors[self.offsets[k]..self.offsets[k + 1]];
            let mut term = Complex::new(c, T::zero());
            for &(v, e) in fs {
                term = term * powers[v as usize][e as usize];
            }
            acc = acc + term;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[Complex64]) -> Complex64 {
        let lifted: Vec<Complex<T>> = point.iter().map(|&z| lift(z)).collect();
        lower(self.eval(&lifted))
    }
}
