use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector, one entry per arena variable.
///
/// `Ord` is graded lexicographic: total degree first, then the exponent of
/// the first variable, then the second, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u32] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (e, &d) in out.0.iter_mut().zip(&other.0) {
            *e = e.checked_sub(d)?;
        }
        Some(out)
    }

    pub fn swapped(&self, i: usize, j: usize) -> Monomial {
        let mut out = self.clone();
        out.0.swap(i, j);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.as_slice().cmp(other.0.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}
