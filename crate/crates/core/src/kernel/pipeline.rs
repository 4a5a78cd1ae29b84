//! Exact construction of `K_{G_n} = H1 / (pi^n H2)`.
//!
//! Clearing the row denominators of `det[1/(1 - l_j mb_k)^2]` gives
//! `det[1/(1 - l_j mb_k)^2] = P1 / P2` with
//! `P1 = det[prod_{k' != k} (1 - l_j mb_k')^2]` and
//! `P2 = prod_{i,j} (1 - l_i mb_j)^2`. `P1` is alternating in each block,
//! so dividing by both Vandermonde products leaves a polynomial `P1~`
//! symmetric in `l` and in `mb`. Rewriting `P1~` and `P2` in elementary
//! symmetric functions of the two blocks yields `H1(xi, etab)` and
//! `H2(xi, etab)`.

use std::collections::HashMap;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::One;

use super::KernelFormula;
use crate::error::{Error, Result};
use crate::polyalg::{rat, Polynomial, VariableArena};
use crate::symfun::{decompose_symmetric, SymmetricBlock};

/// Largest dimension the pipeline is budgeted for.
pub const MAX_N: usize = 4;

/// `l1..ln, mb1..mbn`.
pub fn polydisc_arena(n: usize) -> VariableArena {
    VariableArena::numbered("l", n)
        .concat(&VariableArena::numbered("mb", n))
        .expect("distinct prefixes")
}

/// `xi1..xin, etab1..etabn`.
pub fn formula_arena(n: usize) -> VariableArena {
    VariableArena::numbered("xi", n)
        .concat(&VariableArena::numbered("etab", n))
        .expect("distinct prefixes")
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "n out of supported range (1..={MAX_N}): {n}"
        )))
    }
}

/// `(1 - x y)^2`.
fn one_minus_product_squared(arena: &VariableArena, x: usize, y: usize) -> Result<Polynomial> {
    let f = &Polynomial::one(arena) - &(&Polynomial::var(arena, x)? * &Polynomial::var(arena, y)?);
    Ok(&f * &f)
}

fn permutation_sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `P1(l, mb)`: Leibniz expansion of `det[M_jk]`,
/// `M_jk = prod_{k' != k} (1 - l_j mb_k')^2`.
pub fn leibniz_numerator(n: usize) -> Result<Polynomial> {
    check_n(n)?;
    let arena = polydisc_arena(n);
    let factors: Vec<Vec<Polynomial>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|k| one_minus_product_squared(&arena, j, n + k))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let entry = |j: usize, k: usize| -> Polynomial {
        let mut acc = Polynomial::one(&arena);
        for (kp, f) in factors[j].iter().enumerate() {
            if kp != k {
                acc = &acc * f;
            }
        }
        acc
    };
    let m: Vec<Vec<Polynomial>> = (0..n)
        .map(|j| (0..n).map(|k| entry(j, k)).collect())
        .collect();

    let mut acc: HashMap<_, BigRational> = HashMap::new();
    for perm in (0..n).permutations(n) {
        let sign = rat(permutation_sign(&perm));
        let mut prod = Polynomial::constant(&arena, sign);
        for (j, &k) in perm.iter().enumerate().take(n - 1) {
            prod = &prod * &m[j][k];
        }
        // last factor goes straight into the accumulator
        crate::polyalg::mul_into(&mut acc, &prod, &m[n - 1][perm[n - 1]]);
    }
    Ok(Polynomial::from_accumulator(&arena, acc))
}

/// `P2(l, mb) = prod_{i,j} (1 - l_i mb_j)^2` in the polydisc arena.
pub fn conjugate_product(n: usize) -> Result<Polynomial> {
    check_n(n)?;
    let arena = polydisc_arena(n);
    let mut acc = Polynomial::one(&arena);
    for i in 0..n {
        for j in 0..n {
            acc = &acc * &one_minus_product_squared(&arena, i, n + j)?;
        }
    }
    Ok(acc)
}

/// `P2` with the `l`-block already symmetrized:
/// `prod_j (1 - xi_1 mb_j + xi_2 mb_j^2 - ... + (-1)^n xi_n mb_j^n)^2`
/// over the arena `xi1..xin, mb1..mbn`.
pub fn conjugate_product_half_symmetrized(n: usize) -> Result<Polynomial> {
    check_n(n)?;
    let arena = VariableArena::numbered("xi", n).concat(&VariableArena::numbered("mb", n))?;
    let mut acc = Polynomial::one(&arena);
    for j in 0..n {
        let mb = Polynomial::var(&arena, n + j)?;
        let mut factor = Polynomial::one(&arena);
        let mut mb_pow = Polynomial::one(&arena);
        for k in 0..n {
            mb_pow = &mb_pow * &mb;
            let term = &Polynomial::var(&arena, k)? * &mb_pow;
            factor = if k % 2 == 0 {
                &factor - &term
            } else {
                &factor + &term
            };
        }
        acc = &acc * &(&factor * &factor);
    }
    Ok(acc)
}

/// `P1 / (V(l) V(mb))`, dividing one linear factor at a time.
pub fn divide_vandermonde(p1: &Polynomial, n: usize) -> Result<Polynomial> {
    let mut p = p1.clone();
    for block in [0, n] {
        for i in 0..n {
            for j in i + 1..n {
                p = p
                    .exact_div_linear(block + i, block + j)
                    .map_err(|e| Error::Pipeline(format!("Vandermonde division failed: {e}")))?;
            }
        }
    }
    Ok(p)
}

fn blocks(n: usize, first: &str) -> [SymmetricBlock; 2] {
    [
        SymmetricBlock::numbered((0..n).collect(), first),
        SymmetricBlock::numbered((n..2 * n).collect(), "etab"),
    ]
}

/// Term counts of the intermediate stages, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineStats {
    pub p1_terms: usize,
    pub p1_reduced_terms: usize,
    pub p2_terms: usize,
    pub h1_terms: usize,
    pub h2_terms: usize,
}

/// Builds the exact rational kernel of `G_n` for `1 <= n <= 4`.
pub fn rationalize_kernel(n: usize) -> Result<KernelFormula> {
    rationalize_kernel_with_stats(n).map(|(f, _)| f)
}

pub fn rationalize_kernel_with_stats(n: usize) -> Result<(KernelFormula, PipelineStats)> {
    check_n(n)?;
    let p1 = leibniz_numerator(n)?;
    let p1_reduced = divide_vandermonde(&p1, n)?;
    let h1 = decompose_symmetric(&p1_reduced, &blocks(n, "xi"))
        .map_err(|e| Error::Pipeline(format!("P1/V not bisymmetric: {e}")))?;

    let p2 = conjugate_product_half_symmetrized(n)?;
    let h2 = decompose_symmetric(
        &p2,
        &[SymmetricBlock::numbered((n..2 * n).collect(), "etab")],
    )
    .map_err(|e| Error::Pipeline(format!("P2 not symmetric in mb: {e}")))?;

    let arena = formula_arena(n);
    let h1 = h1.with_arena(&arena)?;
    let h2 = h2.with_arena(&arena)?;
    let stats = PipelineStats {
        p1_terms: p1.num_terms(),
        p1_reduced_terms: p1_reduced.num_terms(),
        p2_terms: p2.num_terms(),
        h1_terms: h1.num_terms(),
        h2_terms: h2.num_terms(),
    };
    debug_assert!(h2.coefficient_of(&vec![0; 2 * n]).is_one());
    Ok((KernelFormula::new(n, h1, h2, n as i32)?, stats))
}
