use std::path::Path;

use num_complex::{Complex, Complex64};
use serde::{Deserialize, Serialize};

use super::pipeline::formula_arena;
use crate::error::{Error, Result};
use crate::polyalg::{
    lift, lower, CompiledPoly, Dd, EvalScalar, Monomial, Polynomial, Precision, RationalFunction,
    TermRepr,
};

/// `K_{G_n}(xi, eta) = H1(xi, etab) / (pi^pi_power H2(xi, etab))` with exact
/// polynomial parts over the arena `xi1..xin, etab1..etabn`.
#[derive(Debug, Clone)]
pub struct KernelFormula {
    n: usize,
    h1: Polynomial,
    h2: Polynomial,
    pi_power: i32,
    h1_f64: CompiledPoly<f64>,
    h2_f64: CompiledPoly<f64>,
    h1_dd: CompiledPoly<Dd>,
    h2_dd: CompiledPoly<Dd>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaFile {
    n: usize,
    pi_power: i32,
    vars: Vec<String>,
    #[serde(rename = "H1")]
    h1: Vec<TermRepr>,
    #[serde(rename = "H2")]
    h2: Vec<TermRepr>,
}

impl PartialEq for KernelFormula {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.pi_power == other.pi_power
            && self.h1 == other.h1
            && self.h2 == other.h2
    }
}

impl KernelFormula {
    pub fn new(n: usize, h1: Polynomial, h2: Polynomial, pi_power: i32) -> Result<Self> {
        let arena = formula_arena(n);
        if h1.arena() != &arena || h2.arena() != &arena {
            return Err(Error::ArenaMismatch(format!(
                "kernel formula needs arena {arena}"
            )));
        }
        if h2.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self {
            n,
            h1_f64: CompiledPoly::new(&h1),
            h2_f64: CompiledPoly::new(&h2),
            h1_dd: CompiledPoly::new(&h1),
            h2_dd: CompiledPoly::new(&h2),
            h1,
            h2,
            pi_power,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h1(&self) -> &Polynomial {
        &self.h1
    }

    pub fn h2(&self) -> &Polynomial {
        &self.h2
    }

    pub fn pi_power(&self) -> i32 {
        self.pi_power
    }

    pub fn as_rational_function(&self) -> RationalFunction {
        RationalFunction::new(self.h1.clone(), self.h2.clone(), Some(self.pi_power))
            .expect("validated at construction")
    }

    /// Coefficient of `xi^a etab^b` equals that of `xi^b etab^a`, in both
    /// `H1` and `H2`.
    pub fn is_coefficient_hermitian(&self) -> bool {
        let n = self.n;
        [&self.h1, &self.h2].iter().all(|p| {
            p.terms().all(|(m, c)| {
                let e = m.exponents();
                let mut swapped = e[n..].to_vec();
                swapped.extend_from_slice(&e[..n]);
                p.coefficient(&Monomial::from_exponents(&swapped)) == *c
            })
        })
    }

    fn check_len(&self, p: &[Complex64]) -> Result<()> {
        if p.len() == self.n {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.n,
                got: p.len(),
            })
        }
    }

    /// `K(xi, eta)`; `eta` is conjugated into the `etab` slots.
    ///
    /// Evaluated in double-double: for `n = 4` the expanded `H2` cancels by
    /// several orders of magnitude near the edge of the sampling region.
    pub fn eval(&self, xi: &[Complex64], eta: &[Complex64]) -> Result<Complex64> {
        self.eval_with(xi, eta, Precision::Extended)
    }

    pub fn eval_with(
        &self,
        xi: &[Complex64],
        eta: &[Complex64],
        precision: Precision,
    ) -> Result<Complex64> {
        self.check_len(eta)?;
        let etab: Vec<Complex64> = eta.iter().map(|z| z.conj()).collect();
        self.eval_barred(xi, &etab, precision)
    }

    /// Like [`eval`](Self::eval) but first checks `xi, eta in G_n`.
    pub fn eval_strict(&self, xi: &[Complex64], eta: &[Complex64]) -> Result<Complex64> {
        for p in [xi, eta] {
            self.check_len(p)?;
            crate::geometry::require_membership(p, crate::geometry::MEMBERSHIP_TOL)?;
        }
        self.eval(xi, eta)
    }

    /// The formula with independent values in the `etab` slots.
    pub fn eval_barred(
        &self,
        xi: &[Complex64],
        etab: &[Complex64],
        precision: Precision,
    ) -> Result<Complex64> {
        self.check_len(xi)?;
        self.check_len(etab)?;
        let point: Vec<Complex64> = xi.iter().chain(etab).copied().collect();
        match precision {
            Precision::Double => self
                .ratio_generic(&point.iter().map(|&z| lift::<f64>(z)).collect::<Vec<_>>())
                .map(lower),
            Precision::Extended => self
                .ratio_generic(&point.iter().map(|&z| lift::<Dd>(z)).collect::<Vec<_>>())
                .map(lower),
        }
    }

    /// `(H1, H2)` at a point of the formula arena.
    pub(crate) fn h_values<T: FormulaScalar>(
        &self,
        point: &[Complex<T>],
    ) -> (Complex<T>, Complex<T>) {
        T::pick(self)
            .iter()
            .map(|p| p.eval(point))
            .collect::<Vec<_>>()
            .try_into()
            .map(|[a, b]: [Complex<T>; 2]| (a, b))
            .expect("two polynomials")
    }

    pub(crate) fn ratio_generic<T: FormulaScalar>(
        &self,
        point: &[Complex<T>],
    ) -> Result<Complex<T>> {
        let (h1, h2) = self.h_values(point);
        if h2.norm_sqr().to_f64() == 0.0 {
            return Err(Error::OutsideDomain(
                "H2 vanishes: input outside G_n x G_n".into(),
            ));
        }
        let mut scale = T::one();
        for _ in 0..self.pi_power.unsigned_abs() {
            scale = scale * T::pi();
        }
        let denom = if self.pi_power >= 0 {
            h2 * scale
        } else {
            h2 / Complex::new(scale, T::zero())
        };
        Ok(h1 / denom)
    }

    /// JSON document `{"n":..,"pi_power":..,"vars":[..],"H1":[..],"H2":[..]}`.
    pub fn to_json(&self) -> String {
        let file = FormulaFile {
            n: self.n,
            pi_power: self.pi_power,
            vars: self.h1.arena().names().to_vec(),
            h1: self.h1.to_term_reprs(),
            h2: self.h2.to_term_reprs(),
        };
        serde_json::to_string(&file).expect("formula serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: FormulaFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let arena = formula_arena(file.n);
        if file.vars != arena.names() {
            return Err(Error::Parse(format!(
                "expected vars {:?}, found {:?}",
                arena.names(),
                file.vars
            )));
        }
        let h1 = Polynomial::from_term_reprs(&arena, &file.h1)?;
        let h2 = Polynomial::from_term_reprs(&arena, &file.h2)?;
        Self::new(file.n, h1, h2, file.pi_power)
    }

    /// Writes the JSON document plus a trailing newline.
    pub fn write_file(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_json() + "\n")
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
        Self::from_json(text.trim_end())
    }
}

/// Scalars for which a formula carries precompiled polynomials.
pub(crate) trait FormulaScalar: EvalScalar {
    fn pick(f: &KernelFormula) -> [&CompiledPoly<Self>; 2];
}

impl FormulaScalar for f64 {
    fn pick(f: &KernelFormula) -> [&CompiledPoly<Self>; 2] {
        [&f.h1_f64, &f.h2_f64]
    }
}

impl FormulaScalar for Dd {
    fn pick(f: &KernelFormula) -> [&CompiledPoly<Self>; 2] {
        [&f.h1_dd, &f.h2_dd]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rationalize_kernel;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn n2_origin() {
        let f = rationalize_kernel(2).unwrap();
        let z = [c(0.0, 0.0), c(0.0, 0.0)];
        let v = f.eval(&z, &z).unwrap();
        assert!((v - c(2.0 / (PI * PI), 0.0)).norm() < 1e-16);
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let f = rationalize_kernel(2).unwrap();
        let text = f.to_json();
        assert!(
            text.starts_with(r#"{"n":2,"pi_power":2,"vars":["xi1","xi2","etab1","etab2"],"H1":["#)
        );
        let g = KernelFormula::from_json(&text).unwrap();
        assert_eq!(g, f);
        assert_eq!(g.to_json(), text);
    }

    #[test]
    fn rejects_wrong_vars() {
        let f = rationalize_kernel(1).unwrap();
        let text = f.to_json().replace("etab1", "eta1");
        assert!(matches!(
            KernelFormula::from_json(&text),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn strict_mode_checks_membership() {
        let f = rationalize_kernel(2).unwrap();
        let outside = [c(2.0, 0.0), c(1.0, 0.0)];
        let inside = [c(0.1, 0.0), c(0.0, 0.0)];
        assert!(matches!(
            f.eval_strict(&outside, &inside),
            Err(Error::OutsideDomain(_))
        ));
        assert!(f.eval_strict(&inside, &inside).is_ok());
    }

    #[test]
    fn h2_zero_is_an_error() {
        let f = rationalize_kernel(1).unwrap();
        // H2 = (1 - xi etab)^2 vanishes at xi = etab = 1
        let r = f.eval_barred(&[c(1.0, 0.0)], &[c(1.0, 0.0)], Precision::Double);
        assert!(matches!(r, Err(Error::OutsideDomain(_))));
    }

    #[test]
    fn coefficient_hermitian_small_n() {
        for n in 1..=3 {
            assert!(rationalize_kernel(n).unwrap().is_coefficient_hermitian());
        }
        let a = formula_arena(1);
        let lopsided = Polynomial::var(&a, 0).unwrap();
        let f = KernelFormula::new(1, lopsided, Polynomial::one(&a), 1).unwrap();
        assert!(!f.is_coefficient_hermitian());
    }
}
