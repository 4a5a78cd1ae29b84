use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::eval::{CompiledPoly, Precision};
use super::{Monomial, VariableArena};
use crate::error::{Error, Result};

/// Sparse polynomial with exact rational coefficients over a [`VariableArena`].
///
/// No stored coefficient is zero, so two polynomials over the same arena are
/// equal iff their term maps are equal.
#[derive(Clone, PartialEq)]
pub struct Polynomial {
    arena: VariableArena,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(arena: &VariableArena) -> Self {
        Self {
            arena: arena.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arena: &VariableArena) -> Self {
        Self::constant(arena, BigRational::one())
    }

    pub fn constant(arena: &VariableArena, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(arena.len()), c);
        }
        Self {
            arena: arena.clone(),
            terms,
        }
    }

    pub fn var(arena: &VariableArena, index: usize) -> Result<Self> {
        arena.check_index(index)?;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(arena.len(), index), BigRational::one());
        Ok(Self {
            arena: arena.clone(),
            terms,
        })
    }

    /// Variable looked up by name.
    pub fn named(arena: &VariableArena, name: &str) -> Result<Self> {
        Self::var(arena, arena.index_of(name)?)
    }

    /// Builds a polynomial from arbitrary terms; repeated monomials are summed
    /// and zero results dropped.
    pub fn from_terms<I>(arena: &VariableArena, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in terms {
            if m.len() != arena.len() {
                return Err(Error::LengthMismatch {
                    expected: arena.len(),
                    got: m.len(),
                });
            }
            accumulate(&mut acc, m, c);
        }
        Ok(Self::from_accumulator(arena, acc))
    }

    pub(crate) fn from_accumulator(
        arena: &VariableArena,
        acc: HashMap<Monomial, BigRational>,
    ) -> Self {
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self {
            arena: arena.clone(),
            terms,
        }
    }

    /// Caller guarantees no zero coefficients and matching monomial lengths.
    pub(crate) fn from_map_unchecked(
        arena: &VariableArena,
        terms: BTreeMap<Monomial, BigRational>,
    ) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self {
            arena: arena.clone(),
            terms,
        }
    }

    pub fn arena(&self) -> &VariableArena {
        &self.arena
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Terms in canonical order (descending grlex).
    pub fn terms(
        &self,
    ) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficient_of(&self, exps: &[u32]) -> BigRational {
        self.coefficient(&Monomial::from_exponents(exps))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Maximum exponent of every variable.
    pub fn degree_bounds(&self) -> Vec<u32> {
        let mut out = vec![0; self.arena.len()];
        for m in self.terms.keys() {
            for (o, &e) in out.iter_mut().zip(m.exponents()) {
                *o = (*o).max(e);
            }
        }
        out
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arena.ensure_same(&other.arena)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_to_btree(&mut terms, m, c);
        }
        Ok(Self {
            arena: self.arena.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.arena.ensure_same(&other.arena)?;
        let mut acc = HashMap::with_capacity(self.terms.len() * other.terms.len());
        mul_into(&mut acc, self, other);
        Ok(Self::from_accumulator(&self.arena, acc))
    }

    /// Exact sum of many polynomials over one arena.
    pub fn sum<'a, I>(arena: &VariableArena, items: I) -> Result<Polynomial>
    where
        I: IntoIterator<Item = &'a Polynomial>,
    {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for p in items {
            arena.ensure_same(&p.arena)?;
            for (m, c) in &p.terms {
                accumulate_ref(&mut acc, m, c);
            }
        }
        Ok(Self::from_accumulator(arena, acc))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.arena);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Self {
            arena: self.arena.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Self::one(&self.arena);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial(&self, var: usize) -> Result<Polynomial> {
        self.arena.check_index(var)?;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.exponents_mut()[var] = e - 1;
            terms.insert(d, c * BigRational::from_integer(e.into()));
        }
        Ok(Self {
            arena: self.arena.clone(),
            terms,
        })
    }

    /// Repeated partial derivative along a list of variables.
    pub fn partial_chain(&self, vars: &[usize]) -> Result<Polynomial> {
        vars.iter().try_fold(self.clone(), |p, &v| p.partial(v))
    }

    /// Quotient of `self` by the linear form `x_i - x_j`, by synthetic
    /// division in `x_i`. Fails when the remainder is nonzero.
    pub fn exact_div_linear(&self, i: usize, j: usize) -> Result<Polynomial> {
        self.arena.check_index(i)?;
        self.arena.check_index(j)?;
        if i == j {
            return Err(Error::InvalidArgument(
                "exact_div_linear needs i != j".into(),
            ));
        }
        let divisor = || format!("{} - {}", self.arena.name(i), self.arena.name(j));
        if self.is_zero() {
            return Ok(self.clone());
        }
        let top = self.degree_in(i) as usize;
        let mut groups: Vec<HashMap<Monomial, BigRational>> = vec![HashMap::new(); top + 1];
        for (m, c) in &self.terms {
            let e = m.exponents()[i] as usize;
            let mut rest = m.clone();
            rest.exponents_mut()[i] = 0;
            groups[e].insert(rest, c.clone());
        }
        // q_{k-1} = c_k + x_j q_k; remainder c_0 + x_j q_0.
        let mut out = BTreeMap::new();
        let mut carry: HashMap<Monomial, BigRational> = HashMap::new();
        for k in (0..=top).rev() {
            let mut q = std::mem::take(&mut groups[k]);
            for (mut m, c) in carry.drain() {
                m.exponents_mut()[j] += 1;
                accumulate(&mut q, m, c);
            }
            q.retain(|_, c| !c.is_zero());
            if k == 0 {
                if !q.is_empty() {
                    return Err(Error::NotDivisible(divisor()));
                }
                break;
            }
            for (m, c) in &q {
                let mut mm = m.clone();
                mm.exponents_mut()[i] = (k - 1) as u32;
                out.insert(mm, c.clone());
            }
            carry = q;
        }
        Ok(Self {
            arena: self.arena.clone(),
            terms: out,
        })
    }

    /// Image under the variable transposition `x_i <-> x_j`.
    pub fn swap_variables(&self, i: usize, j: usize) -> Result<Polynomial> {
        self.arena.check_index(i)?;
        self.arena.check_index(j)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.swapped(i, j), c.clone()))
            .collect();
        Ok(Self {
            arena: self.arena.clone(),
            terms,
        })
    }

    /// Substitutes `x_k -> images[k]`; the result lives in the images' arena.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.arena.len() {
            return Err(Error::LengthMismatch {
                expected: self.arena.len(),
                got: images.len(),
            });
        }
        let target = match images.first() {
            Some(p) => p.arena.clone(),
            None => return Ok(self.clone()),
        };
        for p in images {
            target.ensure_same(&p.arena)?;
        }
        let bounds = self.degree_bounds();
        let powers: Vec<Vec<Polynomial>> = images
            .iter()
            .zip(&bounds)
            .map(|(img, &b)| {
                let mut v = vec![Self::one(&target)];
                for _ in 0..b {
                    let next = v.last().unwrap() * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut prod = Self::constant(&target, c.clone());
            for (k, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    prod = &prod * &powers[k][e as usize];
                }
            }
            for (mm, cc) in prod.terms {
                accumulate(&mut acc, mm, cc);
            }
        }
        Ok(Self::from_accumulator(&target, acc))
    }

    /// Moves the polynomial into `target`, sending variable `k` to
    /// `target[mapping[k]]`.
    pub fn embed(&self, target: &VariableArena, mapping: &[usize]) -> Result<Polynomial> {
        if mapping.len() != self.arena.len() {
            return Err(Error::LengthMismatch {
                expected: self.arena.len(),
                got: mapping.len(),
            });
        }
        for &t in mapping {
            target.check_index(t)?;
        }
        let mut acc = HashMap::new();
        for (m, c) in &self.terms {
            let mut out = Monomial::one(target.len());
            for (k, &e) in m.exponents().iter().enumerate() {
                out.exponents_mut()[mapping[k]] += e;
            }
            accumulate(&mut acc, out, c.clone());
        }
        Ok(Self::from_accumulator(target, acc))
    }

    /// Same terms over a renamed arena of equal size.
    pub fn with_arena(&self, arena: &VariableArena) -> Result<Polynomial> {
        if arena.len() != self.arena.len() {
            return Err(Error::LengthMismatch {
                expected: self.arena.len(),
                got: arena.len(),
            });
        }
        Ok(Self {
            arena: arena.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Makes the leading coefficient positive; returns whether it flipped.
    pub(crate) fn normalize_sign(&mut self) -> bool {
        let negative = self.leading_term().is_some_and(|(_, c)| c.is_negative());
        if negative {
            for c in self.terms.values_mut() {
                *c = -c.clone();
            }
        }
        negative
    }

    pub fn compile(&self) -> CompiledPoly<f64> {
        CompiledPoly::new(self)
    }

    /// Double-precision evaluation at a complex point.
    pub fn eval(&self, point: &[Complex64]) -> Result<Complex64> {
        self.eval_with(point, Precision::Double)
    }

    pub fn eval_with(&self, point: &[Complex64], precision: Precision) -> Result<Complex64> {
        if point.len() != self.arena.len() {
            return Err(Error::LengthMismatch {
                expected: self.arena.len(),
                got: point.len(),
            });
        }
        Ok(match precision {
            Precision::Double => CompiledPoly::<f64>::new(self).eval_f64(point),
            Precision::Extended => CompiledPoly::<super::Dd>::new(self).eval_f64(point),
        })
    }
}

pub(crate) fn accumulate(acc: &mut HashMap<Monomial, BigRational>, m: Monomial, c: BigRational) {
    match acc.entry(m) {
        std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += c,
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

fn accumulate_ref(acc: &mut HashMap<Monomial, BigRational>, m: &Monomial, c: &BigRational) {
    if let Some(v) = acc.get_mut(m) {
        *v += c;
    } else {
        acc.insert(m.clone(), c.clone());
    }
}

fn add_to_btree(terms: &mut BTreeMap<Monomial, BigRational>, m: &Monomial, c: &BigRational) {
    if let Some(v) = terms.get_mut(m) {
        *v += c;
        if v.is_zero() {
            terms.remove(m);
        }
    } else {
        terms.insert(m.clone(), c.clone());
    }
}

/// `acc += a * b` without materializing the product.
pub(crate) fn mul_into(acc: &mut HashMap<Monomial, BigRational>, a: &Polynomial, b: &Polynomial) {
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            accumulate(acc, ma.mul(mb), ca * cb);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics on arena mismatch; use [`Polynomial::try_add`] to handle it.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial arena mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial arena mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial arena mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial {
            arena: self.arena.clone(),
            terms,
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if k == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    let name = self.arena.name(v);
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({} over {})", self, self.arena)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, ratio};

    fn arena2() -> VariableArena {
        VariableArena::new(["l1", "l2"]).unwrap()
    }

    fn vars(a: &VariableArena) -> (Polynomial, Polynomial) {
        (
            Polynomial::var(a, 0).unwrap(),
            Polynomial::var(a, 1).unwrap(),
        )
    }

    #[test]
    fn difference_of_squares() {
        let a = arena2();
        let (x, y) = vars(&a);
        let p = &(&x - &y) * &(&x + &y);
        let expected = &(&x * &x) - &(&y * &y);
        assert_eq!(p, expected);
        assert_eq!(p.num_terms(), 2);
    }

    #[test]
    fn multiply_by_one() {
        let a = arena2();
        let (x, y) = vars(&a);
        let p = &(&x * &y) + &Polynomial::constant(&a, ratio(3, 4));
        assert_eq!(&p * &Polynomial::one(&a), p);
    }

    #[test]
    fn binomial_square() {
        let a = VariableArena::new(["l1", "mb1"]).unwrap();
        let (l, m) = vars(&a);
        let f = &Polynomial::one(&a) - &(&l * &m);
        let sq = &f * &f;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.coefficient_of(&[0, 0]), rat(1));
        assert_eq!(sq.coefficient_of(&[1, 1]), rat(-2));
        assert_eq!(sq.coefficient_of(&[2, 2]), rat(1));
    }

    #[test]
    fn arena_mismatch_is_an_error() {
        let a = arena2();
        let b = VariableArena::new(["x", "y"]).unwrap();
        let err = Polynomial::one(&a)
            .try_mul(&Polynomial::one(&b))
            .unwrap_err();
        assert!(matches!(err, Error::ArenaMismatch(_)));
    }

    #[test]
    fn exact_division_examples() {
        let a = arena2();
        let (x, y) = vars(&a);
        let diff = &x - &y;
        let sq = &(&x * &x) - &(&y * &y);
        assert_eq!(sq.exact_div_linear(0, 1).unwrap(), &x + &y);
        assert_eq!(diff.exact_div_linear(0, 1).unwrap(), Polynomial::one(&a));
        let sym = &(&x * &x) + &(&y * &y);
        assert!(matches!(
            sym.exact_div_linear(0, 1),
            Err(Error::NotDivisible(_))
        ));
        assert!(sym.exact_div_linear(1, 1).is_err());
    }

    #[test]
    fn division_by_reversed_factor_flips_sign() {
        let a = arena2();
        let (x, y) = vars(&a);
        let diff = &x - &y;
        assert_eq!(diff.exact_div_linear(1, 0).unwrap(), -Polynomial::one(&a));
    }

    #[test]
    fn evaluation_examples() {
        let a = arena2();
        let (x, y) = vars(&a);
        let sq = &(&x * &x) - &(&y * &y);
        let v = sq
            .eval(&[Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)])
            .unwrap();
        assert_eq!(v, Complex64::new(3.0, 0.0));
        let c = Polynomial::constant(&a, ratio(5, 2));
        assert_eq!(
            c.eval(&[Complex64::new(0.3, 1.0), Complex64::new(-7.0, 0.0)])
                .unwrap()
                .re,
            2.5
        );
        let lm = &x * &y;
        assert_eq!(
            lm.eval(&[Complex64::new(0.5, 0.0), Complex64::new(0.5, 0.0)])
                .unwrap()
                .re,
            0.25
        );
        assert!(matches!(
            lm.eval(&[Complex64::new(0.5, 0.0)]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn partial_derivative() {
        let a = arena2();
        let (x, y) = vars(&a);
        let p = &(&(&x * &x) * &y) + &y;
        assert_eq!(p.partial(0).unwrap(), (&x * &y).scale(&rat(2)));
        assert_eq!(
            Polynomial::constant(&a, rat(7)).partial(1).unwrap(),
            Polynomial::zero(&a)
        );
    }

    #[test]
    fn substitution_and_embedding() {
        let a = arena2();
        let (x, y) = vars(&a);
        let p = &(&x * &x) + &y;
        // x -> x + y, y -> 1
        let q = p.substitute(&[&x + &y, Polynomial::one(&a)]).unwrap();
        let expected = &(&(&x + &y) * &(&x + &y)) + &Polynomial::one(&a);
        assert_eq!(q, expected);

        let big = VariableArena::new(["a", "l1", "b", "l2"]).unwrap();
        let e = p.embed(&big, &[1, 3]).unwrap();
        assert_eq!(e.coefficient_of(&[0, 2, 0, 0]), rat(1));
        assert_eq!(e.coefficient_of(&[0, 0, 0, 1]), rat(1));
    }

    #[test]
    fn display_is_readable() {
        let a = arena2();
        let (x, y) = vars(&a);
        let p = &(&(&x * &x).scale(&ratio(-1, 2)) + &y) - &Polynomial::one(&a);
        assert_eq!(p.to_string(), "-1/2*l1^2 + l2 - 1");
    }
}
