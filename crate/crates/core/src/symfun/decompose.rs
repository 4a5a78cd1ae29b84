//! Fundamental theorem of symmetric polynomials, as an algorithm.
//!
//! A polynomial symmetric in a block of `n` variables is rewritten in the
//! elementary symmetric polynomials of that block by leading-term reduction:
//! the grlex-leading term `c x^a` of a symmetric polynomial has
//! `a_1 >= a_2 >= ... >= a_n`, and subtracting
//! `c sigma_1^(a_1-a_2) ... sigma_n^(a_n)` strictly lowers the leading
//! monomial.
//!
//! Symmetric polynomials are determined by their coefficients on weakly
//! decreasing exponent vectors, so the reduction only tracks those terms
//! (both in the input and in the expanded `sigma` products). Variables
//! outside the block ride along as coefficients. Several blocks are handled
//! one after the other; uniqueness of the representation makes the order
//! irrelevant.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use super::elementary_symmetric_poly;
use crate::error::{Error, Result};
use crate::polyalg::{Monomial, Polynomial, VariableArena};

/// Abort threshold for the reduction loop.
pub const REDUCTION_STEP_LIMIT: usize = 10_000_000;

/// A block of variables a polynomial is symmetric in, together with the
/// names its elementary symmetric polynomials get in the output arena.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricBlock {
    pub vars: Vec<usize>,
    pub sigma_names: Vec<String>,
}

impl SymmetricBlock {
    pub fn new(vars: Vec<usize>, sigma_names: Vec<String>) -> Self {
        Self { vars, sigma_names }
    }

    /// Block whose sigma variables are `prefix1..prefixN`.
    pub fn numbered(vars: Vec<usize>, prefix: &str) -> Self {
        let names = (1..=vars.len()).map(|k| format!("{prefix}{k}")).collect();
        Self {
            vars,
            sigma_names: names,
        }
    }

    fn names_in(&self, arena: &VariableArena) -> Vec<String> {
        self.vars
            .iter()
            .map(|&v| arena.name(v).to_string())
            .collect()
    }
}

fn validate_blocks(arena: &VariableArena, blocks: &[SymmetricBlock]) -> Result<()> {
    let mut seen = vec![false; arena.len()];
    for b in blocks {
        if b.vars.is_empty() {
            return Err(Error::InvalidArgument("empty symmetric block".into()));
        }
        if b.vars.len() != b.sigma_names.len() {
            return Err(Error::LengthMismatch {
                expected: b.vars.len(),
                got: b.sigma_names.len(),
            });
        }
        for &v in &b.vars {
            arena.check_index(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument(format!(
                    "variable {} in two blocks",
                    arena.name(v)
                )));
            }
        }
    }
    Ok(())
}

/// Checks invariance under the adjacent transpositions of `block`, which
/// generate the full symmetric group.
pub fn check_symmetric(p: &Polynomial, block: &[usize]) -> Result<()> {
    for w in block.windows(2) {
        let swapped = p.swap_variables(w[0], w[1])?;
        if &swapped != p {
            let names = block
                .iter()
                .map(|&v| p.arena().name(v).to_string())
                .collect();
            return Err(Error::NotSymmetric {
                block: names,
                detail: format!(
                    "changes under {} <-> {}",
                    p.arena().name(w[0]),
                    p.arena().name(w[1])
                ),
            });
        }
    }
    Ok(())
}

/// Rewrites `p` in the elementary symmetric polynomials of each block.
///
/// The result lives in the arena of `p` with each block's variables renamed
/// to its `sigma_names`: position `block.vars[k]` holds `sigma_{k+1}`.
pub fn decompose_symmetric(p: &Polynomial, blocks: &[SymmetricBlock]) -> Result<Polynomial> {
    let arena = p.arena();
    validate_blocks(arena, blocks)?;
    for b in blocks {
        check_symmetric(p, &b.vars)?;
    }
    let mut out_arena = arena.clone();
    for b in blocks {
        out_arena = out_arena.rename(&b.vars, &b.sigma_names)?;
    }
    let mut current: BTreeMap<Monomial, BigRational> = p.term_map().clone();
    let mut steps = 0usize;
    for b in blocks {
        current = reduce_block(&current, b, arena, &mut steps)?;
    }
    Ok(Polynomial::from_map_unchecked(&out_arena, current))
}

fn is_weakly_decreasing(exps: &[u32]) -> bool {
    exps.windows(2).all(|w| w[0] >= w[1])
}

fn reduce_block(
    terms: &BTreeMap<Monomial, BigRational>,
    block: &SymmetricBlock,
    arena: &VariableArena,
    steps: &mut usize,
) -> Result<BTreeMap<Monomial, BigRational>> {
    let n = block.vars.len();
    // rest-of-monomial -> (partition -> coefficient)
    let mut groups: HashMap<Monomial, BTreeMap<Monomial, BigRational>> = HashMap::new();
    for (m, c) in terms {
        let part: Vec<u32> = block.vars.iter().map(|&v| m.exponents()[v]).collect();
        if !is_weakly_decreasing(&part) {
            continue;
        }
        let mut rest = m.clone();
        for &v in &block.vars {
            rest.exponents_mut()[v] = 0;
        }
        groups
            .entry(rest)
            .or_default()
            .insert(Monomial::from_exponents(&part), c.clone());
    }

    let mut cache = ElementaryProducts::new(n);
    let mut out = BTreeMap::new();
    for (rest, mut part) in groups {
        while let Some((lead, c)) = part.pop_last() {
            *steps += 1;
            if *steps > REDUCTION_STEP_LIMIT {
                return Err(Error::ReductionLimit(REDUCTION_STEP_LIMIT));
            }
            let a = lead.exponents();
            if !is_weakly_decreasing(a) {
                return Err(Error::NotSymmetric {
                    block: block.names_in(arena),
                    detail: format!("leading exponent {a:?} is not weakly decreasing"),
                });
            }
            let d: Vec<u32> = (0..n)
                .map(|k| a[k] - a.get(k + 1).copied().unwrap_or(0))
                .collect();
            for (m, e) in cache.restricted(&d).iter().skip(1) {
                // skip(1): the leading entry is `lead` itself with coefficient 1
                let delta = &c * e;
                match part.get_mut(m) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            part.remove(m);
                        }
                    }
                    None => {
                        part.insert(m.clone(), -delta);
                    }
                }
            }
            let mut mono = rest.clone();
            for (k, &v) in block.vars.iter().enumerate() {
                mono.exponents_mut()[v] = d[k];
            }
            out.insert(mono, c);
        }
    }
    Ok(out)
}

/// Products `sigma_1^d_1 ... sigma_n^d_n` in `n` variables, memoized in
/// full, with their restriction to weakly decreasing exponents.
struct ElementaryProducts {
    arena: VariableArena,
    sigmas: Vec<Polynomial>,
    full: HashMap<Vec<u32>, Polynomial>,
    restricted: HashMap<Vec<u32>, Vec<(Monomial, BigRational)>>,
}

impl ElementaryProducts {
    fn new(n: usize) -> Self {
        let arena = VariableArena::numbered("x", n);
        let block: Vec<usize> = (0..n).collect();
        let sigmas = (1..=n)
            .map(|k| elementary_symmetric_poly(&arena, &block, k).expect("k in range"))
            .collect();
        Self {
            arena,
            sigmas,
            full: HashMap::new(),
            restricted: HashMap::new(),
        }
    }

    fn full(&mut self, d: &[u32]) -> Polynomial {
        if let Some(p) = self.full.get(d) {
            return p.clone();
        }
        let p = match d.iter().position(|&e| e > 0) {
            None => Polynomial::one(&self.arena),
            Some(k) => {
                let mut smaller = d.to_vec();
                smaller[k] -= 1;
                let base = self.full(&smaller);
                &base * &self.sigmas[k]
            }
        };
        self.full.insert(d.to_vec(), p.clone());
        p
    }

    /// Terms of the product on weakly decreasing exponents, leading first.
    fn restricted(&mut self, d: &[u32]) -> &[(Monomial, BigRational)] {
        if !self.restricted.contains_key(d) {
            let p = self.full(d);
            let v: Vec<_> = p
                .terms()
                .filter(|(m, _)| is_weakly_decreasing(m.exponents()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            self.restricted.insert(d.to_vec(), v);
        }
        &self.restricted[d]
    }
}

/// Inverse of [`decompose_symmetric`]: substitutes each block's sigma
/// variables by the elementary symmetric polynomials of the original block
/// variables of `target` (same size as the arena of `q`).
pub fn expand_elementary(
    q: &Polynomial,
    blocks: &[SymmetricBlock],
    target: &VariableArena,
) -> Result<Polynomial> {
    if target.len() != q.arena().len() {
        return Err(Error::LengthMismatch {
            expected: q.arena().len(),
            got: target.len(),
        });
    }
    validate_blocks(target, blocks)?;
    let mut images: Vec<Polynomial> = (0..target.len())
        .map(|v| Polynomial::var(target, v))
        .collect::<Result<_>>()?;
    for b in blocks {
        for (k, &v) in b.vars.iter().enumerate() {
            images[v] = elementary_symmetric_poly(target, &b.vars, k + 1)?;
        }
    }
    q.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{rat, ratio};
    use crate::symfun::vandermonde;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn single(n: usize) -> (VariableArena, SymmetricBlock) {
        (
            VariableArena::numbered("x", n),
            SymmetricBlock::numbered((0..n).collect(), "s"),
        )
    }

    fn x(a: &VariableArena, i: usize) -> Polynomial {
        Polynomial::var(a, i).unwrap()
    }

    #[test]
    fn power_sum_two_variables() {
        let (a, b) = single(2);
        let p = &(&x(&a, 0) * &x(&a, 0)) + &(&x(&a, 1) * &x(&a, 1));
        let q = decompose_symmetric(&p, &[b]).unwrap();
        assert_eq!(q.arena().names(), ["s1", "s2"]);
        assert_eq!(q.to_string(), "s1^2 - 2*s2");
    }

    #[test]
    fn product_is_sigma2() {
        let (a, b) = single(2);
        let q = decompose_symmetric(&(&x(&a, 0) * &x(&a, 1)), &[b]).unwrap();
        assert_eq!(q.to_string(), "s2");
    }

    #[test]
    fn power_sum_cubes_three_variables() {
        let (a, b) = single(3);
        let p = Polynomial::sum(&a, &(0..3).map(|i| x(&a, i).pow(3)).collect::<Vec<_>>()).unwrap();
        let q = decompose_symmetric(&p, std::slice::from_ref(&b)).unwrap();
        // oracle: expand the claimed right side with plain multiplication
        let sa = q.arena().clone();
        let (s1, s2, s3) = (x(&sa, 0), x(&sa, 1), x(&sa, 2));
        let claimed = &(&s1.pow(3) - &(&s1 * &s2).scale(&rat(3))) + &s3.scale(&rat(3));
        assert_eq!(q, claimed);
        assert_eq!(expand_elementary(&q, &[b], &a).unwrap(), p);
    }

    #[test]
    fn two_blocks() {
        let a = VariableArena::new(["x1", "x2", "y1", "y2"]).unwrap();
        let p = &(&x(&a, 0) + &x(&a, 1)) * &(&x(&a, 2) + &x(&a, 3));
        let blocks = [
            SymmetricBlock::numbered(vec![0, 1], "s"),
            SymmetricBlock::numbered(vec![2, 3], "t"),
        ];
        let q = decompose_symmetric(&p, &blocks).unwrap();
        assert_eq!(q.to_string(), "s1*t1");
    }

    #[test]
    fn passive_variables_ride_along() {
        let a = VariableArena::new(["c", "x1", "x2"]).unwrap();
        let p = &x(&a, 0) * &(&x(&a, 1) + &x(&a, 2));
        let q = decompose_symmetric(&p, &[SymmetricBlock::numbered(vec![1, 2], "s")]).unwrap();
        assert_eq!(q.arena().names(), ["c", "s1", "s2"]);
        assert_eq!(q.to_string(), "c*s1");
    }

    #[test]
    fn rejects_asymmetric_input() {
        let (a, b) = single(2);
        let p = &x(&a, 0) - &x(&a, 1);
        assert!(matches!(
            decompose_symmetric(&p, std::slice::from_ref(&b)),
            Err(Error::NotSymmetric { .. })
        ));
        // symmetric in (x1, x2) but not in (x2, x3)
        let (a3, b3) = single(3);
        let p = &x(&a3, 0) * &x(&a3, 1);
        assert!(matches!(
            decompose_symmetric(&p, &[b3]),
            Err(Error::NotSymmetric { .. })
        ));
        let _ = b;
    }

    #[test]
    fn rejects_bad_blocks() {
        let (a, _) = single(3);
        let p = x(&a, 0);
        let overlapping = [
            SymmetricBlock::numbered(vec![0, 1], "s"),
            SymmetricBlock::numbered(vec![1, 2], "t"),
        ];
        assert!(decompose_symmetric(&p, &overlapping).is_err());
        assert!(decompose_symmetric(&p, &[SymmetricBlock::new(vec![0], vec![])]).is_err());
        assert!(decompose_symmetric(&p, &[SymmetricBlock::numbered(vec![7], "s")]).is_err());
    }

    fn random_poly(
        rng: &mut ChaCha8Rng,
        a: &VariableArena,
        max_deg: u32,
        nterms: usize,
    ) -> Polynomial {
        let terms = (0..nterms).map(|_| {
            let mut e = vec![0u32; a.len()];
            let mut budget = rng.random_range(0..=max_deg);
            while budget > 0 {
                let v = rng.random_range(0..a.len());
                e[v] += 1;
                budget -= 1;
            }
            (
                Monomial::from_exponents(&e),
                ratio(rng.random_range(-9..=9), rng.random_range(1..=4)),
            )
        });
        Polynomial::from_terms(a, terms).unwrap()
    }

    /// Sum over all permutations of the variables.
    fn symmetrize_poly(p: &Polynomial) -> Polynomial {
        use itertools::Itertools;
        let a = p.arena().clone();
        let n = a.len();
        let images: Vec<Vec<Polynomial>> = (0..n)
            .permutations(n)
            .map(|perm| perm.into_iter().map(|v| x(&a, v)).collect())
            .collect();
        let parts: Vec<Polynomial> = images.iter().map(|im| p.substitute(im).unwrap()).collect();
        Polynomial::sum(&a, &parts).unwrap()
    }

    #[test]
    fn random_round_trip_and_uniqueness() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..40 {
            let n = rng.random_range(1..=4);
            let (a, b) = single(n);
            let p = symmetrize_poly(&random_poly(&mut rng, &a, 8 / n as u32 + 2, 3));
            let q = decompose_symmetric(&p, std::slice::from_ref(&b)).unwrap();
            assert_eq!(
                expand_elementary(&q, std::slice::from_ref(&b), &a).unwrap(),
                p
            );

            let mut shuffled: Vec<(Monomial, BigRational)> =
                p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
            shuffled.shuffle(&mut rng);
            let p2 = Polynomial::from_terms(&a, shuffled).unwrap();
            assert_eq!(
                decompose_symmetric(&p2, &[b]).unwrap().serialize(),
                q.serialize()
            );
        }
    }

    #[test]
    fn alternating_product_divides_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..20 {
            let n = rng.random_range(2..=4);
            let (a, _) = single(n);
            let q = symmetrize_poly(&random_poly(&mut rng, &a, 3, 2));
            let mut p = &q * &vandermonde(&a, &(0..n).collect::<Vec<_>>()).unwrap();
            for i in 0..n {
                for j in i + 1..n {
                    p = p.exact_div_linear(i, j).unwrap();
                }
            }
            assert_eq!(p, q);
        }
    }
}
