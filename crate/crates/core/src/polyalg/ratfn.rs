use num_complex::Complex64;

use super::eval::Precision;
use super::Polynomial;
use crate::error::{Error, Result};

/// `numerator / (pi^pi_power * denominator)` with exact polynomial parts.
///
/// Canonicalization is by scalar sign only: the numerator's leading
/// coefficient is made positive. No gcd is taken.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    numerator: Polynomial,
    denominator: Polynomial,
    pi_power: Option<i32>,
}

impl RationalFunction {
    pub fn new(
        numerator: Polynomial,
        denominator: Polynomial,
        pi_power: Option<i32>,
    ) -> Result<Self> {
        numerator.arena().ensure_same(denominator.arena())?;
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut r = Self {
            numerator,
            denominator,
            pi_power,
        };
        if r.numerator.normalize_sign() {
            r.denominator = -&r.denominator;
        }
        Ok(r)
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let one = Polynomial::one(p.arena());
        Self::new(p, one, None).expect("unit denominator")
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    pub fn pi_power(&self) -> Option<i32> {
        self.pi_power
    }

    /// Quotient rule: `(n' d - n d') / d^2`, unreduced.
    pub fn partial(&self, var: usize) -> Result<RationalFunction> {
        let dn = self.numerator.partial(var)?;
        let dd = self.denominator.partial(var)?;
        if dd.is_zero() {
            return Self::new(dn, self.denominator.clone(), self.pi_power);
        }
        let num = &(&dn * &self.denominator) - &(&self.numerator * &dd);
        let den = &self.denominator * &self.denominator;
        Self::new(num, den, self.pi_power)
    }

    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        self.eval_with(point, Precision::Double)
    }

    pub fn eval_with(&self, point: &[Complex64], precision: Precision) -> Result<Complex64> {
        let n = self.numerator.eval_with(point, precision)?;
        let d = self.denominator.eval_with(point, precision)?;
        if d == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroDenominator);
        }
        let scale = std::f64::consts::PI.powi(self.pi_power.unwrap_or(0));
        Ok(n / (d * scale))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, VariableArena};

    fn setup() -> (VariableArena, Vec<Polynomial>) {
        let a = VariableArena::new(["xi1", "xi2", "etab1", "etab2"]).unwrap();
        let v = (0..4).map(|i| Polynomial::var(&a, i).unwrap()).collect();
        (a, v)
    }

    #[test]
    fn partial_of_monomial() {
        let (_, v) = setup();
        let r = RationalFunction::from_polynomial(&v[0] * &v[2]);
        let d = r.partial(2).unwrap();
        assert_eq!(d.numerator(), &v[0]);
        assert!(d.denominator().is_constant());
    }

    #[test]
    fn partial_of_constant_is_zero() {
        let (a, _) = setup();
        let r = RationalFunction::from_polynomial(Polynomial::constant(&a, rat(3)));
        assert!(r.partial(0).unwrap().numerator().is_zero());
    }

    #[test]
    fn partial_termwise() {
        let (a, v) = setup();
        let two = Polynomial::constant(&a, rat(2));
        let p = &(&two - &(&v[0] * &v[2])) + &(&v[1] * &v[3]).scale(&rat(2));
        let d = RationalFunction::from_polynomial(p).partial(3).unwrap();
        assert_eq!(d.numerator(), &v[1].scale(&rat(2)));
    }

    #[test]
    fn quotient_rule() {
        let (a, v) = setup();
        // d/dx (1 / (1 - x)) = 1 / (1 - x)^2
        let den = &Polynomial::one(&a) - &v[0];
        let r = RationalFunction::new(Polynomial::one(&a), den.clone(), Some(1)).unwrap();
        let d = r.partial(0).unwrap();
        assert_eq!(d.numerator(), &Polynomial::one(&a));
        assert_eq!(d.denominator(), &(&den * &den));
        assert_eq!(d.pi_power(), Some(1));
    }

    #[test]
    fn sign_canonicalization() {
        let (a, v) = setup();
        let r = RationalFunction::new(-&v[0], Polynomial::constant(&a, rat(2)), None).unwrap();
        assert_eq!(r.numerator(), &v[0]);
        assert_eq!(r.denominator(), &Polynomial::constant(&a, rat(-2)));
        assert!(RationalFunction::new(v[0].clone(), Polynomial::zero(&a), None).is_err());
    }

    #[test]
    fn evaluation_applies_pi_power() {
        let (a, _) = setup();
        let r = RationalFunction::new(
            Polynomial::constant(&a, rat(2)),
            Polynomial::one(&a),
            Some(2),
        )
        .unwrap();
        let z = vec![Complex64::new(0.0, 0.0); 4];
        let v = r.eval(&z).unwrap();
        assert!((v.re - 2.0 / std::f64::consts::PI.powi(2)).abs() < 1e-15);
    }
}
